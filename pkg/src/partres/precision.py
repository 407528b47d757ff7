"""Arbitrary-precision numeric context, constants, and special functions.

The asymptotic main terms in this package grow like exp(pi*sqrt(2n/3)) —
roughly 1e352 at n = 1e5 — so nothing here may pass through a double.  All
floating arithmetic runs on mpmath binary floats under an explicitly passed
:class:`PrecisionContext`; mpmath's unbounded exponent range makes the huge
magnitudes representable directly.

Provided operations:

* ``pi``, ``euler_gamma`` — constants to full working precision,
* ``gamma_fn``            — real Gamma away from its poles,
* ``bernoulli``           — exact rational Bernoulli numbers B_m (even m),
* ``bessel_i_half``, ``bessel_i_three_half`` — modified Bessel functions of
  order 1/2 and 3/2 through their elementary closed forms
      I_{1/2}(z)  = sqrt(2/(pi z)) * sinh(z)
      I_{3/2}(z)  = sqrt(2/(pi z)) * (cosh(z) - sinh(z)/z),
* ``log_main_term``       — exp(a + b) assembled in log space,
* exact-rational roots of unity realized as mpmath complex numbers.

Everything is a pure function of its arguments plus the context; results are
deterministic and bit-identical for identical inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from mpmath import mp, mpc, mpf

from .errors import DomainError, PoleError

MIN_BITS = 64

# Internal guard bits: operations evaluate slightly wide and round once at the
# end, keeping the contextual relative-error contract (<= 2^(-bits+4)) even
# through mildly cancelling closed forms such as cosh z - sinh z / z.
_GUARD = 16

RealLike = Union[int, float, Fraction, mpf]


@dataclass(frozen=True)
class PrecisionContext:
    """Binary working precision (round-to-nearest) for all numeric operations."""

    bits: int = 256

    def __post_init__(self) -> None:
        if self.bits < MIN_BITS:
            raise DomainError(f"precision must be at least {MIN_BITS} bits, got {self.bits}")

    def workprec(self):
        """mpmath context manager activating this precision."""
        return mp.workprec(self.bits)

    def guarded(self):
        """mpmath context manager with internal guard bits on top."""
        return mp.workprec(self.bits + _GUARD)


DEFAULT_CTX = PrecisionContext()


def bits_for_index(n: int) -> int:
    """Working precision suited to computations targeting index n.

    The dominant terms carry about pi*sqrt(2n/3)/ln 2 bits of magnitude; 64
    guard bits on top keep quotients of such terms accurate near 1.
    """
    if n <= 0:
        return 256
    magnitude_bits = math.ceil(math.pi * math.sqrt(2.0 * n / 3.0) / math.log(2.0))
    return max(256, magnitude_bits + 64)


def context_for_index(n: int) -> PrecisionContext:
    return PrecisionContext(bits_for_index(n))


def to_real(x: RealLike) -> mpf:
    """Convert to mpf under the *active* mpmath precision; Fractions convert exactly."""
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpf(x)


def _rounded(value, ctx: PrecisionContext):
    with ctx.workprec():
        return +value


def pi(ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """pi to full context precision."""
    with ctx.workprec():
        return +mp.pi


def euler_gamma(ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """The Euler-Mascheroni constant 0.577215664... to full context precision."""
    with ctx.workprec():
        return +mp.euler


def gamma_fn(x: RealLike, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """Gamma(x) for real x away from the poles at 0, -1, -2, ..."""
    with ctx.guarded():
        xm = to_real(x)
        if xm <= 0 and mp.isint(xm):
            raise PoleError(f"Gamma pole at x = {x}")
        value = mp.gamma(xm)
    return _rounded(value, ctx)


@lru_cache(maxsize=None)
def _bernoulli_upto(limit: int) -> tuple:
    # B_0 .. B_limit via sum_{j=0}^{m} C(m+1, j) B_j = 0, exact rationals.
    values = [Fraction(1)]
    for m in range(1, limit + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * values[j]
        values.append(-acc / (m + 1))
    return tuple(values)


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m for even m >= 2."""
    if m < 2 or m % 2 != 0:
        raise DomainError(f"Bernoulli index must be even and >= 2, got {m}")
    return _bernoulli_upto(m)[m]


def bessel_i_half(z: RealLike, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """I_{1/2}(z) = sqrt(2/(pi z)) * sinh(z), for z > 0.

    sinh is assembled from exp(z) and exp(-z) at full precision; no
    double-precision intermediates.
    """
    with ctx.guarded():
        zm = to_real(z)
        if zm <= 0:
            raise DomainError(f"bessel_i_half requires z > 0, got {z}")
        sinh = (mp.exp(zm) - mp.exp(-zm)) / 2
        value = mp.sqrt(2 / (mp.pi * zm)) * sinh
    return _rounded(value, ctx)


def bessel_i_three_half(z: RealLike, ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """I_{3/2}(z) = sqrt(2/(pi z)) * (cosh(z) - sinh(z)/z), for z > 0."""
    with ctx.guarded():
        zm = to_real(z)
        if zm <= 0:
            raise DomainError(f"bessel_i_three_half requires z > 0, got {z}")
        ez, emz = mp.exp(zm), mp.exp(-zm)
        value = mp.sqrt(2 / (mp.pi * zm)) * ((ez + emz) / 2 - (ez - emz) / (2 * zm))
    return _rounded(value, ctx)


def log_main_term(exp_arg: RealLike, prefactor_log: RealLike,
                  ctx: PrecisionContext = DEFAULT_CTX) -> mpf:
    """exp(exp_arg + prefactor_log), assembled in log space.

    mpmath exponents are unbounded, so magnitudes like e^808 come out as
    ordinary finite mpf values.
    """
    with ctx.guarded():
        value = mp.exp(to_real(exp_arg) + to_real(prefactor_log))
    return _rounded(value, ctx)


@lru_cache(maxsize=65536)
def _root_of_unity_cached(num: int, den: int, bits: int) -> mpc:
    with mp.workprec(bits + _GUARD):
        angle = 2 * mp.pi * mp.mpf(num) / den
        value = mp.mpc(mp.cos(angle), mp.sin(angle))
    with mp.workprec(bits):
        return +value


def root_of_unity(t: Fraction, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """exp(2*pi*i*t) for an exact rational t, reduced mod 1 before realization."""
    t = Fraction(t) % 1
    return _root_of_unity_cached(t.numerator, t.denominator, ctx.bits)


def exp_pi_i(t: Fraction, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """exp(pi*i*t) for an exact rational t, reduced mod 2 before realization."""
    t = Fraction(t) % 2
    return root_of_unity(t / 2, ctx)
