"""Dirichlet characters mod N and the odd-character machinery.

Characters are stored as exponent vectors over a cyclic decomposition of
(Z/NZ)^*: a character is determined by its exponents k_i against generators
g_i of orders d_i, and its value at a unit a with coordinates x_i is the
exact root of unity exp(2*pi*i * sum k_i x_i / d_i).  Values stay exact
rational exponents until the numerics boundary, so orthogonality-style
identities can be decided without floating arithmetic.

On top of that sit the odd-character sums the asymptotics need: the
orthogonality indicator, L(0, psi) as a finite character sum, the constant
c_{r,N}, and the q-expansions of the weight-1 Eisenstein series E_1^psi and
of the combination whose coefficients are the exact class differences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Optional

from mpmath import mp, mpc

from .errors import CoverageError, DomainError, ImaginaryResidueError
from .exact import PartitionTable
from .precision import DEFAULT_CTX, PrecisionContext, root_of_unity


def factorize(n: int) -> list:
    """Prime factorization as (p, e) pairs, trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def euler_phi(n: int) -> int:
    return prod((p - 1) * p ** (e - 1) for p, e in factorize(n)) if n > 1 else 1


def _primitive_root(q: int, phi_q: int) -> int:
    prime_parts = [p for p, _ in factorize(phi_q)]
    for g in range(2, q):
        if gcd(g, q) != 1:
            continue
        if all(pow(g, phi_q // p, q) != 1 for p in prime_parts):
            return g
    raise ArithmeticError(f"no primitive root mod {q}")  # unreachable for odd prime powers


@dataclass(frozen=True)
class UnitGroupStructure:
    """Cyclic decomposition of (Z/NZ)^*: generators g_i with orders d_i.

    ``coordinates`` maps every unit to its unique exponent vector.
    """

    modulus: int
    generators: tuple
    orders: tuple
    coordinates: dict = field(compare=False, repr=False)

    @property
    def phi(self) -> int:
        return prod(self.orders) if self.orders else 1

    def log(self, a: int) -> Optional[tuple]:
        """Exponent vector of a, or None when gcd(a, N) > 1."""
        return self.coordinates.get(a % self.modulus)


@lru_cache(maxsize=None)
def unit_group(modulus: int) -> UnitGroupStructure:
    """Decompose (Z/NZ)^* via CRT over prime powers.

    Odd prime powers contribute one primitive-root generator; 2^k contributes
    nothing (k=1), one generator of order 2 (k=2), or <-1> x <5> (k >= 3).
    """
    if modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}")
    generators: list = []
    orders: list = []
    if modulus > 1:
        factors = factorize(modulus)
        for p, e in factors:
            q = p ** e
            rest = modulus // q
            local: list  # (generator mod q, order) pairs for this prime power
            if p == 2:
                if e == 1:
                    local = []
                elif e == 2:
                    local = [(3, 2)]
                else:
                    local = [(q - 1, 2), (5, 2 ** (e - 2))]
            else:
                phi_q = (p - 1) * p ** (e - 1)
                local = [(_primitive_root(q, phi_q), phi_q)]
            for g_local, order in local:
                # CRT lift: = g_local mod q, = 1 mod rest
                if rest == 1:
                    g = g_local % modulus
                else:
                    inv_rest = pow(rest, -1, q)
                    g = (1 + rest * ((g_local - 1) * inv_rest % q)) % modulus
                generators.append(g)
                orders.append(order)
    coords = {}
    for exps in itertools.product(*(range(d) for d in orders)):
        value = 1
        for g, e in zip(generators, exps):
            value = value * pow(g, e, modulus) % modulus
        coords[value % modulus] = exps
    if len(coords) != euler_phi(modulus):
        raise ArithmeticError(f"unit group decomposition failed for modulus {modulus}")
    return UnitGroupStructure(modulus, tuple(generators), tuple(orders), coords)


@dataclass(frozen=True)
class DirichletCharacter:
    """A character mod N given by exponents against the unit-group generators.

    psi(g_i) = exp(2*pi*i * k_i / d_i);  psi(a) = 0 whenever gcd(a, N) > 1.
    """

    modulus: int
    exponents: tuple

    @property
    def group(self) -> UnitGroupStructure:
        return unit_group(self.modulus)

    def exponent_of(self, a: int) -> Optional[Fraction]:
        """Exact rational t in [0,1) with psi(a) = exp(2*pi*i*t), or None if psi(a) = 0."""
        coords = self.group.log(a)
        if coords is None:
            return None
        t = Fraction(0)
        for k, x, d in zip(self.exponents, coords, self.group.orders):
            t += Fraction(k * x, d)
        return t % 1

    def value(self, a: int, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
        """psi(a) realized as an mpmath complex number at the context precision."""
        t = self.exponent_of(a)
        if t is None:
            return mp.mpc(0)
        return root_of_unity(t, ctx)

    @property
    def parity(self) -> int:
        """psi(-1): +1 for even characters, -1 for odd ones."""
        t = self.exponent_of(-1)
        return -1 if t == Fraction(1, 2) else 1

    @property
    def is_odd(self) -> bool:
        return self.parity == -1

    def conjugate(self) -> "DirichletCharacter":
        orders = self.group.orders
        return DirichletCharacter(
            self.modulus, tuple((-k) % d for k, d in zip(self.exponents, orders)))


def chi_value(psi: DirichletCharacter, a: int,
              ctx: PrecisionContext = DEFAULT_CTX):
    """(exact rational exponent or None, complex realization) of psi(a)."""
    return psi.exponent_of(a), psi.value(a, ctx)


@dataclass(frozen=True)
class CharacterSet:
    modulus: int
    members: tuple


def all_characters(modulus: int) -> CharacterSet:
    group = unit_group(modulus)
    members = tuple(
        DirichletCharacter(modulus, exps)
        for exps in itertools.product(*(range(d) for d in group.orders)))
    return CharacterSet(modulus, members)


@lru_cache(maxsize=None)
def odd_characters(modulus: int) -> CharacterSet:
    """The phi(N)/2 odd characters mod N; defined only for N >= 3."""
    if modulus < 3:
        raise DomainError(f"odd characters require modulus >= 3, got {modulus}")
    members = tuple(psi for psi in all_characters(modulus).members if psi.is_odd)
    expected = euler_phi(modulus) // 2
    if len(members) != expected:
        raise ArithmeticError(
            f"found {len(members)} odd characters mod {modulus}, expected {expected}")
    return CharacterSet(modulus, members)


def indicator(r: int, modulus: int, n: int) -> int:
    """The odd-character orthogonality indicator:

        (2/phi(N)) * sum over odd psi of psi(n * r')
          = +1 if n =  r mod N,  -1 if n = -r mod N,  0 otherwise.

    The character exponents are accumulated exactly; only a genuinely mixed
    root-of-unity sum falls through to a (guarded) numeric realization.
    """
    if modulus < 3:
        raise DomainError(f"indicator requires modulus >= 3, got {modulus}")
    if gcd(r, modulus) != 1:
        raise DomainError(f"indicator requires gcd(r, N) = 1, got r={r}, N={modulus}")
    r_inv = pow(r, -1, modulus)
    g = n * r_inv % modulus
    exponents = [psi.exponent_of(g) for psi in odd_characters(modulus).members]
    if any(t is None for t in exponents):
        return 0  # gcd(n, N) > 1: every summand vanishes
    if all(t == 0 for t in exponents):
        return 1
    if all(t == Fraction(1, 2) for t in exponents):
        return -1
    with mp.workprec(128):
        total = mp.fsum(
            (mp.mpc(mp.cospi(2 * t), mp.sinpi(2 * t)) for t in exponents),
            absolute=False)
        if mp.fabs(total) > 1e-12 * len(exponents):
            raise ArithmeticError(
                f"odd-character sum at g={g} mod {modulus} is not integral: {total}")
    return 0


def _require_small_imag(z: mpc, bits: int, what: str) -> mpc:
    tol = mp.mpf(2) ** (-bits + 16) * max(mp.mpf(1), mp.fabs(z))
    if mp.fabs(mp.im(z)) > tol:
        raise ImaginaryResidueError(f"{what} has imaginary residue {mp.im(z)} > {tol}")
    return z


def l_zero(psi: DirichletCharacter, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """L(0, psi) = -(1/N) * sum_{a=1}^{N-1} psi(a) * a, for odd psi."""
    if not psi.is_odd:
        raise DomainError("L(0, psi) is implemented for odd characters only")
    N = psi.modulus
    with ctx.guarded():
        total = mp.fsum((psi.value(a, ctx) * a for a in range(1, N)), absolute=False)
        value = -total / N
    with ctx.workprec():
        return +value


def c_constant(r: int, modulus: int, ctx: PrecisionContext = DEFAULT_CTX) -> mpc:
    """c_{r,N} = - sum over odd psi of psi(r') L(0, psi); real up to rounding residue."""
    if modulus < 3:
        raise DomainError(f"c_{{r,N}} requires modulus >= 3, got {modulus}")
    if gcd(r, modulus) != 1:
        raise DomainError(f"c_{{r,N}} requires gcd(r, N) = 1, got r={r}, N={modulus}")
    r_inv = pow(r, -1, modulus)
    with ctx.guarded():
        total = mp.fsum(
            (psi.value(r_inv, ctx) * l_zero(psi, ctx)
             for psi in odd_characters(modulus).members),
            absolute=False)
        value = -total
    with ctx.workprec():
        return _require_small_imag(+value, ctx.bits, f"c_({r},{modulus})")


def eisenstein_coeffs(psi: DirichletCharacter, upto: int,
                      ctx: PrecisionContext = DEFAULT_CTX) -> list:
    """Fourier coefficients of E_1^psi through q^upto.

    Coefficient 0 is L(0, psi); coefficient n is 2 * sum_{d | n} psi(d).
    """
    if upto < 0:
        raise DomainError(f"upto must be >= 0, got {upto}")
    coeffs = [mp.mpc(0)] * (upto + 1)
    coeffs[0] = l_zero(psi, ctx)
    with ctx.workprec():
        for d in range(1, upto + 1):
            v = psi.value(d, ctx)
            if v == 0:
                continue
            for n in range(d, upto + 1, d):
                coeffs[n] += v
        for n in range(1, upto + 1):
            coeffs[n] *= 2
    return coeffs


def g_series_coeffs(r: int, modulus: int, upto: int, table: PartitionTable,
                    ctx: PrecisionContext = DEFAULT_CTX) -> list:
    """q-expansion of (1/phi(N)) * (q^(1/24)/eta) * (c_{r,N} + sum psi(r') E_1^psi).

    Index n of the result is the coefficient of q^n; by construction it equals
    the exact difference That_{r,N}(n) - That_{N-r,N}(n) up to the numeric
    residue of the character sums.  q^(1/24)/eta supplies sum p(j) q^j.
    """
    if table.max_n < upto:
        raise CoverageError(f"partition table covers n <= {table.max_n}, need {upto}")
    if gcd(r, modulus) != 1:
        raise DomainError(f"requires gcd(r, N) = 1, got r={r}, N={modulus}")
    chars = odd_characters(modulus).members
    phi = euler_phi(modulus)
    r_inv = pow(r, -1, modulus)
    with ctx.guarded():
        combo = [mp.mpc(0)] * (upto + 1)
        for psi in chars:
            w = psi.value(r_inv, ctx)
            for m, e in enumerate(eisenstein_coeffs(psi, upto, ctx)):
                combo[m] += w * e
        combo[0] += c_constant(r, modulus, ctx)  # cancels to ~0 by construction
        p = [mp.mpf(table.values[j]) for j in range(upto + 1)]
        out = []
        for n in range(upto + 1):
            acc = mp.fsum((combo[m] * p[n - m] for m in range(n + 1)), absolute=False)
            out.append(acc / phi)
    with ctx.workprec():
        return [+z for z in out]
