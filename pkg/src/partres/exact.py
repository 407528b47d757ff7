"""Exact integer counts of partition parts in residue classes.

Everything here is arbitrary-precision integer arithmetic.  The partition
numbers p(n) come from Euler's pentagonal recurrence; divisor-class counts
d_{r,N}(m) = #{d | m : d = r mod N} come from a sieve; and the part counters
are single convolutions against p:

    That_{r,N}(n)  = sum_{m=1}^{n} d_{r,N}(m) * p(n - m)
    T_{0,N}(n)     = sum_{N*m <= n} sigma_0(m) * p(n - N*m)

A brute-force enumeration oracle over all partitions of n backs the
convolution engines for small n.
"""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache

from .errors import CoverageError, DomainError, GuardError, ResourceError

# Memory budgets: a p-table entry at index n holds ~ pi*sqrt(2n/3)/ln 2 bits.
MAX_TABLE_ENTRIES = 500_000
MAX_SIEVE_CELLS = 80_000_000

# Hard cap for the enumeration oracle; p(60) is already ~9.7e5 partitions.
ENUMERATION_CAP = 60

PTABLE_MAGIC = "PTABLE v1"


@dataclass(frozen=True)
class PartitionTable:
    """p(0..max_n) as exact integers, built once and shared read-only."""

    values: tuple

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def p(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.max_n:
            raise CoverageError(f"partition table covers n <= {self.max_n}, asked for {n}")
        return self.values[n]


def build_partition_table(max_n: int, max_allowed: int = MAX_TABLE_ENTRIES) -> PartitionTable:
    """Build p(0..max_n) by the pentagonal-number recurrence.

    O(max_n^1.5) big-integer additions.
    """
    if max_n < 0:
        raise DomainError(f"max_n must be >= 0, got {max_n}")
    if max_n + 1 > max_allowed:
        raise ResourceError(f"partition table of size {max_n + 1} exceeds budget {max_allowed}")
    p = [0] * (max_n + 1)
    p[0] = 1
    for n in range(1, max_n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > n:
                break
            sign = 1 if j % 2 == 1 else -1
            total += sign * p[n - g1]
            g2 = g1 + j  # j*(3j+1)/2
            if g2 <= n:
                total += sign * p[n - g2]
            j += 1
        p[n] = total
    return PartitionTable(tuple(p))


def save_table(table: PartitionTable, path: str) -> None:
    """Persist a table in the PTABLE v1 format (atomic write-temp-then-rename).

    Decimal ASCII, newline separators, no trailing whitespace.
    """
    payload = f"{PTABLE_MAGIC} max={table.max_n}\n" + "\n".join(str(v) for v in table.values)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ptable-")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(payload)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_table(path: str) -> PartitionTable:
    """Load a PTABLE v1 cache file."""
    with open(path, "r") as fh:
        content = fh.read()
    lines = content.split("\n")
    header = lines[0]
    if not header.startswith(PTABLE_MAGIC + " max="):
        raise DomainError(f"not a {PTABLE_MAGIC} file: {path!r}")
    max_n = int(header.split("max=", 1)[1])
    values = [int(line) for line in lines[1:] if line]
    if len(values) != max_n + 1:
        raise DomainError(f"corrupt table: header says {max_n + 1} values, found {len(values)}")
    if values[0] != 1 or (max_n >= 1 and values[1] != 1):
        raise DomainError("corrupt table: p(0) and p(1) must both be 1")
    return PartitionTable(tuple(values))


@dataclass(frozen=True)
class DivisorClassSieve:
    """d_{r,N}(m) = #{d | m : d = r mod N} for 0 <= r < N and 1 <= m <= max_m."""

    modulus: int
    counts: tuple  # counts[r][m]

    @property
    def max_m(self) -> int:
        return len(self.counts[0]) - 1

    def count(self, r: int, m: int) -> int:
        if not 1 <= m <= self.max_m:
            raise CoverageError(f"sieve covers 1 <= m <= {self.max_m}, asked for {m}")
        return self.counts[r % self.modulus][m]

    def sigma0(self, m: int) -> int:
        """Total divisor count sigma_0(m) = sum over residue classes."""
        return sum(row[m] for row in self.counts)


def build_divisor_sieve(modulus: int, max_m: int,
                        max_cells: int = MAX_SIEVE_CELLS) -> DivisorClassSieve:
    """Sieve divisor-class counts in O(max_m log max_m) time."""
    if modulus < 1 or max_m < 1:
        raise DomainError(f"need modulus >= 1 and max_m >= 1, got {modulus}, {max_m}")
    if modulus * (max_m + 1) > max_cells:
        raise ResourceError(f"sieve of {modulus}x{max_m + 1} cells exceeds budget {max_cells}")
    counts = [[0] * (max_m + 1) for _ in range(modulus)]
    for d in range(1, max_m + 1):
        row = counts[d % modulus]
        for m in range(d, max_m + 1, d):
            row[m] += 1
    return DivisorClassSieve(modulus, tuple(tuple(row) for row in counts))


@dataclass(frozen=True)
class PartCountQuery:
    """A request for That_{r,N}(n): parts congruent to r mod N over all partitions of n."""

    n: int
    modulus: int
    residue: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"n must be >= 1, got {self.n}")
        if self.modulus < 1:
            raise DomainError(f"modulus must be >= 1, got {self.modulus}")
        if not 0 <= self.residue < self.modulus:
            raise DomainError(
                f"residue must satisfy 0 <= r < {self.modulus}, got {self.residue}")


def part_count_exact(query: PartCountQuery, table: PartitionTable,
                     sieve: DivisorClassSieve) -> int:
    """Exact That_{r,N}(n) by convolving divisor-class counts with p."""
    n, modulus, r = query.n, query.modulus, query.residue
    if table.max_n < n:
        raise CoverageError(f"partition table covers n <= {table.max_n}, need {n}")
    if sieve.modulus != modulus:
        raise CoverageError(f"sieve modulus {sieve.modulus} != query modulus {modulus}")
    if sieve.max_m < n:
        raise CoverageError(f"sieve covers m <= {sieve.max_m}, need {n}")
    row = sieve.counts[r]
    p = table.values
    return sum(row[m] * p[n - m] for m in range(1, n + 1))


def part_diff_exact(n: int, r: int, modulus: int, table: PartitionTable,
                    sieve: DivisorClassSieve) -> int:
    """Exact signed difference That_{r,N}(n) - That_{N-r,N}(n)."""
    if not 1 <= r < modulus:
        raise DomainError(f"need 1 <= r < modulus, got r={r}, modulus={modulus}")
    if table.max_n < n:
        raise CoverageError(f"partition table covers n <= {table.max_n}, need {n}")
    if sieve.modulus != modulus or sieve.max_m < n:
        raise CoverageError("sieve does not cover the query")
    row_pos = sieve.counts[r]
    row_neg = sieve.counts[(modulus - r) % modulus]
    p = table.values
    return sum((row_pos[m] - row_neg[m]) * p[n - m] for m in range(1, n + 1))


@lru_cache(maxsize=64)
def _sigma0_upto(limit: int) -> tuple:
    counts = [0] * (limit + 1)
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            counts[m] += 1
    return tuple(counts)


def zero_class_exact(n: int, modulus: int, table: PartitionTable) -> int:
    """Exact T_{0,N}(n) = sum_{N*m <= n} sigma_0(m) * p(n - N*m)."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}")
    if table.max_n < n:
        raise CoverageError(f"partition table covers n <= {table.max_n}, need {n}")
    top = n // modulus
    if top == 0:
        return 0
    sigma = _sigma0_upto(top)
    p = table.values
    return sum(sigma[m] * p[n - modulus * m] for m in range(1, top + 1))


@lru_cache(maxsize=None)
def _part_multiplicities(n: int) -> tuple:
    """counts[m] = total multiplicity of the part m over all partitions of n.

    Explicit generation of every partition (non-increasing recursion); this is
    the test oracle, deliberately independent of the convolution engines.
    """
    counts = [0] * (n + 1)
    stack = []

    def descend(remaining: int, max_part: int) -> None:
        if remaining == 0:
            for v in stack:
                counts[v] += 1
            return
        for v in range(min(remaining, max_part), 0, -1):
            stack.append(v)
            descend(remaining - v, v)
            stack.pop()

    descend(n, n)
    return tuple(counts)


def enumerate_oracle(n: int, r: int, modulus: int, cap: int = ENUMERATION_CAP) -> int:
    """That_{r,N}(n) by brute force over all partitions of n (guarded by ``cap``)."""
    if modulus < 1:
        raise DomainError(f"modulus must be >= 1, got {modulus}")
    if n > cap:
        raise GuardError(f"enumeration oracle capped at n <= {cap}, got {n}")
    if n <= 0:
        return 0
    counts = _part_multiplicities(n)
    r %= modulus
    return sum(counts[m] for m in range(1, n + 1) if m % modulus == r)
