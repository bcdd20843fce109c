"""Exact multiplicative-function tables and segmented prime windows.

A single linear sieve pass produces the Mobius function and smallest prime
factor for every n up to a limit.  Segmented windows let callers ask for the
primes in (lo, hi] for hi far beyond any full-table limit (base primes up to
sqrt(hi) are enough).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, DomainError

SIEVE_LIMIT_CAP = 2**31
SEGMENT_CAP = 2**28


@dataclass(frozen=True)
class SieveTables:
    """Mobius and smallest-prime-factor tables for 1..limit.

    Arrays are indexed directly by n (index 0 unused).  Immutable after
    construction; safe to share across threads.
    """

    limit: int
    mobius: np.ndarray  # int8, mobius[n] = mu(n)
    spf: np.ndarray     # int64, smallest prime factor of n (spf[1] = 1)


@dataclass(frozen=True)
class PrimeWindow:
    """Sorted primes p with lo < p <= hi."""

    lo: int
    hi: int
    primes: np.ndarray = field(repr=False)  # int64, ascending

    def __len__(self) -> int:
        return int(self.primes.size)


def build_sieves(limit: int) -> SieveTables:
    """Linear sieve: one pass fills spf and mu for all n <= limit."""
    if limit < 1:
        raise CapacityError("sieve limit must be >= 1")
    if limit > SIEVE_LIMIT_CAP:
        raise CapacityError(f"sieve limit {limit} exceeds cap {SIEVE_LIMIT_CAP}")

    spf = np.zeros(limit + 1, dtype=np.int64)
    mu = np.zeros(limit + 1, dtype=np.int8)
    mu[1] = 1
    spf[1] = 1
    primes: list[int] = []
    spf_local = spf  # local refs keep the hot loop tight
    mu_local = mu
    for i in range(2, limit + 1):
        if spf_local[i] == 0:
            spf_local[i] = i
            mu_local[i] = -1
            primes.append(i)
        si = spf_local[i]
        for p in primes:
            ip = i * p
            if p > si or ip > limit:
                break
            spf_local[ip] = p
            # p == spf(i) means p^2 | ip, so mu vanishes
            mu_local[ip] = 0 if p == si else -mu_local[i]
    return SieveTables(limit=limit, mobius=mu, spf=spf)


def mobius(n: int, tables: SieveTables) -> int:
    """Table lookup of mu(n)."""
    if not 1 <= n <= tables.limit:
        raise DomainError(f"n={n} outside table range 1..{tables.limit}")
    return int(tables.mobius[n])


def is_squarefree(n: int, tables: SieveTables) -> bool:
    """True iff no square divides n, i.e. mu(n) != 0."""
    return mobius(n, tables) != 0


def mobius_of(n: int) -> int:
    """mu(n) by trial factorization; independent of any sieve table."""
    if n < 1:
        raise DomainError("n must be positive")
    if n == 1:
        return 1
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1 if p == 2 else 2
    if n > 1:
        result = -result
    return result


_base_lock = threading.Lock()
_base_primes: np.ndarray = np.array([], dtype=np.int64)
_base_limit = 0


def _simple_sieve(limit: int) -> np.ndarray:
    if limit < 2:
        return np.array([], dtype=np.int64)
    isp = np.ones(limit + 1, dtype=bool)
    isp[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if isp[p]:
            isp[p * p :: p] = False
    return np.flatnonzero(isp).astype(np.int64)


def base_primes(limit: int) -> np.ndarray:
    """Primes <= limit, cached and grown on demand."""
    global _base_primes, _base_limit
    if limit <= _base_limit:
        return _base_primes[: np.searchsorted(_base_primes, limit, side="right")]
    with _base_lock:
        if limit > _base_limit:
            _base_primes = _simple_sieve(limit)
            _base_limit = limit
    return _base_primes[: np.searchsorted(_base_primes, limit, side="right")]


def primes_in_window(lo: int, hi: int) -> PrimeWindow:
    """Segmented sieve of (lo, hi]; exact for hi < 2**63."""
    if lo < 0 or hi < 1 or lo >= hi:
        raise DomainError(f"window ({lo}, {hi}] is empty or inverted")
    if hi >= 2**63:
        raise CapacityError("window upper bound must fit in 64 bits")
    if hi - lo > SEGMENT_CAP:
        raise CapacityError(f"window length {hi - lo} exceeds segment cap {SEGMENT_CAP}")

    base = base_primes(math.isqrt(hi))
    start = lo + 1
    size = hi - start + 1
    mask = np.ones(size, dtype=bool)
    if start <= 1:
        mask[: min(2 - start, size)] = False  # 0 and 1 are not prime
    for p in base:
        p = int(p)
        first = max(p * p, ((start + p - 1) // p) * p)
        if first > hi:
            continue
        mask[first - start :: p] = False
    primes = (np.flatnonzero(mask) + start).astype(np.int64)
    return PrimeWindow(lo=lo, hi=hi, primes=primes)
