"""Independent brute-force oracles shared by the test modules.

Everything here avoids the a^2 b^3 parametrization and the linear sieve that
the library uses, so agreement is a genuine cross-check and not a tautology.
"""

import math

import numpy as np


def trial_is_squarefull(n: int) -> bool:
    """Full trial factorization; every prime multiplicity must be >= 2."""
    if n == 1:
        return True
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            if e < 2:
                return False
        p += 1
    return n == 1  # a leftover prime factor has multiplicity 1


def squarefull_indicator_scan(limit: int) -> np.ndarray:
    """Boolean square-full indicator for 0..limit by multiplicity counting.

    For each prime p <= sqrt(limit), numbers with p-multiplicity exactly one
    are disqualified; the remaining cofactor after dividing out all small
    primes must be 1 (a single large prime factor would have multiplicity 1).
    """
    single = np.zeros(limit + 1, dtype=np.int8)
    cof = np.arange(limit + 1, dtype=np.int64)
    p = 2
    while p * p <= limit:
        if cof[p] == p:  # untouched by smaller primes, hence prime
            single[p::p] += 1
            single[p * p :: p * p] -= 1
            pk = p
            while pk <= limit:
                cof[pk::pk] //= p
                pk *= p
        p += 1
    indicator = (single == 0) & (cof == 1)
    indicator[0] = False
    return indicator


def trial_primes_window(lo: int, hi: int) -> list[int]:
    """Primes in (lo, hi] by trial division."""

    def isp(n: int) -> bool:
        if n < 2:
            return False
        for p in range(2, math.isqrt(n) + 1):
            if n % p == 0:
                return False
        return True

    return [n for n in range(lo + 1, hi + 1) if isp(n)]


def d23_brute(n: int) -> int:
    """Exhaustive search for representations n = a^2 b^3."""
    count = 0
    b = 1
    while b * b * b <= n:
        if n % (b * b * b) == 0:
            a = math.isqrt(n // (b * b * b))
            if a * a * (b * b * b) == n:
                count += 1
        b += 1
    return count
