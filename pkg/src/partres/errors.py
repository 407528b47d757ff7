"""Exception types shared across the package."""


class PartresError(Exception):
    """Base class for all partres errors."""


class DomainError(PartresError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole (e.g. Gamma at 0, -1, -2, ...)."""


class SingularityError(DomainError):
    """A partial zeta value zeta^d(1) was requested at the divergent class d = 0 mod N."""


class CoverageError(PartresError, ValueError):
    """A precomputed table or sieve does not cover the requested index range."""


class ResourceError(PartresError, ValueError):
    """A requested table exceeds the configured memory budget."""


class GuardError(PartresError, ValueError):
    """A brute-force oracle was asked to run beyond its hard size cap."""


class ImaginaryResidueError(PartresError, ArithmeticError):
    """A quantity that must be real came out with an imaginary part above tolerance.

    This signals an assembly bug in a conjugate-symmetric character sum, not a
    numerical-precision shortfall, so it is an error rather than a silent discard.
    """


class KindError(PartresError, TypeError):
    """A major-arc profile of the wrong kind (polynomial vs logarithmic) was supplied."""


class ShapeError(PartresError, ValueError):
    """Profile parameters violate a structural requirement (e.g. B - beta != 1/2)."""
