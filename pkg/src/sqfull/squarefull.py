"""Exact counting and enumeration of square-full integers and (2,3)-pairs.

A square-full n factors uniquely as a^2 * b^3 with b squarefree, so every
count here is a loop over b with an exact integer square root per term:
O(x^(1/3)) time, no floating point in any count.  The smooth/residual split
of the pair-counting function and the sixth-power convolution identity that
recovers the square-full indicator live here too.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass, field

from .errors import CapacityError, DomainError
from .sieves import SieveTables, build_sieves
from .constants import zeta

DEFAULT_CAPACITY = 10**12


def capacity_cap() -> int:
    """Largest x any counting operation accepts (env SQFULL_CAPACITY overrides)."""
    env = os.environ.get("SQFULL_CAPACITY")
    return int(env) if env else DEFAULT_CAPACITY


def _check_capacity(x: int) -> None:
    cap = capacity_cap()
    if x > cap:
        raise CapacityError(f"x={x} exceeds capacity cap {cap}")
    if x < 1:
        raise DomainError("x must be a positive integer")


def icbrt(n: int) -> int:
    """Exact integer cube root (floor)."""
    if n < 0:
        raise DomainError("icbrt of negative number")
    if n == 0:
        return 0
    r = round(n ** (1.0 / 3.0))
    while r**3 > n:
        r -= 1
    while (r + 1) ** 3 <= n:
        r += 1
    return r


def iroot(n: int, k: int) -> int:
    """Exact integer k-th root (floor), k >= 1."""
    if n < 0 or k < 1:
        raise DomainError("iroot needs n >= 0, k >= 1")
    if n == 0:
        return 0
    r = round(n ** (1.0 / k)) + 1
    while r**k > n:
        r -= 1
    return r


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


_tables_lock = threading.Lock()
_tables: SieveTables | None = None


def _squarefree_table(limit: int) -> SieveTables:
    """Shared sieve tables covering at least 1..limit (grow-on-demand)."""
    global _tables
    if _tables is None or _tables.limit < limit:
        with _tables_lock:
            if _tables is None or _tables.limit < limit:
                _tables = build_sieves(max(limit, 1024))
    return _tables


def is_squarefull(n: int) -> bool:
    """True iff every prime factor of n divides it at least twice (n=1: yes).

    Trial division up to n^(1/3) leaves a cofactor whose prime factors all
    exceed n^(1/3); such a cofactor keeps n square-full only if it is 1 or a
    perfect square of a prime.
    """
    if n < 1:
        raise DomainError("n must be positive")
    if n == 1:
        return True
    m = n
    p = 2
    while p * p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e == 1:
                return False
        p += 1 if p == 2 else 2
    # cofactor m is now 1, q, q^2, or q*r with primes q, r > m^(1/3)
    return m == 1 or is_perfect_square(m)


def count_squarefull(x: int) -> int:
    """Q(x): number of square-full integers <= x, exactly."""
    _check_capacity(x)
    bmax = icbrt(x)
    tables = _squarefree_table(bmax)
    mob = tables.mobius
    total = 0
    for b in range(1, bmax + 1):
        if mob[b] != 0:
            total += math.isqrt(x // (b * b * b))
    return total


def count_pairs_23(x: int) -> int:
    """Number of pairs (a, b) with a^2 * b^3 <= x, counted with multiplicity."""
    _check_capacity(x)
    total = 0
    for b in range(1, icbrt(x) + 1):
        total += math.isqrt(x // (b * b * b))
    return total


def d23(n: int) -> int:
    """Number of representations n = a^2 * b^3 over positive integers."""
    if n < 1:
        raise DomainError("n must be positive")
    count = 0
    for b in range(1, icbrt(n) + 1):
        b3 = b * b * b
        if n % b3 == 0 and is_perfect_square(n // b3):
            count += 1
    return count


def d23_table(limit: int) -> list[int]:
    """d23(n) for all n <= limit at once, by enumerating (a, b) pairs."""
    _check_capacity(limit)
    table = [0] * (limit + 1)
    for b in range(1, icbrt(limit) + 1):
        b3 = b * b * b
        for a in range(1, math.isqrt(limit // b3) + 1):
            table[a * a * b3] += 1
    return table


@dataclass(frozen=True)
class CountReport:
    """One exact count next to its smooth main term; error = exact - main."""

    x: int
    exact_count: int
    main_term: float
    error: float


def main_term_Q(x: float) -> float:
    """Two-term smooth approximation of Q(x)."""
    if x < 1:
        raise DomainError("x must be >= 1")
    return (zeta(1.5) / zeta(3.0)) * math.sqrt(x) + (zeta(2 / 3) / zeta(2.0)) * x ** (1 / 3)


def delta_Q(x: int) -> CountReport:
    """Q(x) against its main term."""
    exact = count_squarefull(x)
    main = main_term_Q(x)
    return CountReport(x=x, exact_count=exact, main_term=main, error=exact - main)


def main_term_pairs(x: float) -> float:
    """Smooth main term of the (2,3)-pair count."""
    if x < 1:
        raise DomainError("x must be >= 1")
    return zeta(1.5) * math.sqrt(x) + zeta(2 / 3) * x ** (1 / 3)


def delta_23(x: int) -> CountReport:
    """Pair count against zeta(3/2) sqrt(x) + zeta(2/3) x^(1/3)."""
    exact = count_pairs_23(x)
    main = main_term_pairs(x)
    return CountReport(x=x, exact_count=exact, main_term=main, error=exact - main)


def f_of(n: float) -> float:
    """Smooth density of (2,3)-pairs at n."""
    if n < 1:
        raise DomainError("n must be >= 1")
    return zeta(1.5) / (2.0 * math.sqrt(n)) + zeta(2 / 3) / (3.0 * n ** (2 / 3))


def r_of(n: int) -> float:
    """Residual d23(n) - f(n)."""
    return d23(n) - f_of(n)


_DIRECT_SUM_LIMIT = 10**7


def partial_power_sum(s: float, n: int) -> float:
    """Sum of k^(-s) for k = 1..n, 0 < s < 1.

    Direct for small n; Euler-Maclaurin with two correction terms above,
    remainder O(s^5 * n^(-s-5)) -- far below 1e-12 at the crossover.
    """
    if not 0.0 < s < 1.0:
        raise DomainError("partial_power_sum expects 0 < s < 1")
    if n < 1:
        raise DomainError("n must be >= 1")
    if n <= _DIRECT_SUM_LIMIT:
        return math.fsum(k ** (-s) for k in range(1, n + 1))
    return (
        zeta(s)
        + n ** (1.0 - s) / (1.0 - s)
        + 0.5 * n ** (-s)
        - (s / 12.0) * n ** (-s - 1.0)
        + (s * (s + 1.0) * (s + 2.0) / 720.0) * n ** (-s - 3.0)
    )


def f_prefix_sum(x: int) -> float:
    """Sum of f(n) for n <= x."""
    _check_capacity(x)
    return (zeta(1.5) / 2.0) * partial_power_sum(0.5, x) + (zeta(2 / 3) / 3.0) * partial_power_sum(2 / 3, x)


def r_sum(x: int) -> float:
    """Sum of the residual r(n) for n <= x, via the exact pair count."""
    return count_pairs_23(x) - f_prefix_sum(x)


@dataclass(frozen=True)
class SquareFullWindow:
    """Square-full members of (lo, hi], each with its unique (a, b) witness."""

    lo: int
    hi: int
    members: list[tuple[int, int, int]] = field(repr=False)  # (n, a, b), sorted by n

    @property
    def count(self) -> int:
        return len(self.members)

    def values(self) -> list[int]:
        return [n for n, _, _ in self.members]


def squarefull_in_window(x: int, H: int) -> SquareFullWindow:
    """Exact square-full members of (x, x+H]."""
    if H < 1:
        raise DomainError("window length H must be >= 1")
    if x < 0:
        raise DomainError("x must be >= 0")
    hi = x + H
    _check_capacity(hi)
    bmax = icbrt(hi)
    tables = _squarefree_table(bmax)
    mob = tables.mobius
    members: list[tuple[int, int, int]] = []
    for b in range(1, bmax + 1):
        if mob[b] == 0:
            continue
        b3 = b * b * b
        a = math.isqrt(x // b3) + 1 if x > 0 else 1
        n = a * a * b3
        while n <= hi:
            members.append((n, a, b))
            a += 1
            n = a * a * b3
    members.sort()
    return SquareFullWindow(lo=x, hi=hi, members=members)


def squarefull_via_convolution(n: int) -> int:
    """Recover the square-full indicator from d23 by Mobius over sixth powers.

    Sum of mu(c) * d23(n / c^6) over c with c^6 | n; equals 1 iff n is
    square-full, else 0.
    """
    if n < 1:
        raise DomainError("n must be positive")
    cmax = iroot(n, 6)
    tables = _squarefree_table(max(cmax, 2))
    mob = tables.mobius
    total = 0
    for c in range(1, cmax + 1):
        c6 = c**6
        if n % c6 == 0 and mob[c] != 0:
            total += int(mob[c]) * d23(n // c6)
    return total


def squarefull_convolution_table(limit: int) -> list[int]:
    """squarefull_via_convolution(n) for all n <= limit in one pass."""
    _check_capacity(limit)
    base = d23_table(limit)
    cmax = iroot(limit, 6)
    tables = _squarefree_table(max(cmax, 2))
    out = list(base)
    for c in range(2, cmax + 1):
        m = int(tables.mobius[c])
        if m == 0:
            continue
        c6 = c**6
        for k in range(1, limit // c6 + 1):
            out[k * c6] += m * base[k]
    return out
