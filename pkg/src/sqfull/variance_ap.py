"""Variance of square-full integers across residue classes mod a prime q.

Square-full members of (x, 2x] are binned by residue; classes l and alpha*l
(alpha a quadratic nonresidue) are averaged with weight 1/2, which pairs each
residue class with a nonresidue class and cancels the quadratic-residue bias
of the a^2 factor.  The statistic is compared against C (x/q)^(1/6).
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .constants import constant_c, zeta
from .squarefull import _check_capacity, _squarefree_table, icbrt
from .variance_short import main_diff

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def nearest_prime(n: int) -> int:
    """Closest prime to n (the smaller one on ties)."""
    if n < 2:
        return 2
    for d in range(0, n):
        if is_prime(n - d):
            return n - d
        if is_prime(n + d):
            return n + d
    return 2


def _require_odd_prime(q: int) -> None:
    if q == 2 or not is_prime(q):
        raise DomainError(f"q={q} is not an odd prime")


def legendre(n: int, q: int) -> int:
    """Legendre symbol (n|q) by Euler's criterion."""
    _require_odd_prime(q)
    n %= q
    if n == 0:
        return 0
    r = pow(n, (q - 1) // 2, q)
    return -1 if r == q - 1 else 1


def smallest_qnr(q: int) -> int:
    """Least quadratic nonresidue alpha >= 2 modulo q."""
    _require_odd_prime(q)
    a = 2
    while legendre(a, q) != -1:
        a += 1
    return a


def n2_count(n: int, q: int) -> int:
    """Number of square roots of n among the units mod q: 1 + (n|q)."""
    sym = legendre(n, q)
    if sym == 0:
        raise DomainError(f"n={n} shares a factor with q={q}")
    return 1 + sym


@dataclass(frozen=True)
class ResidueHistogram:
    x: int
    q: int
    counts: np.ndarray = field(repr=False)  # int64, length q; class l of (x, 2x]

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def _residues_of_members(x_lo: int, x_hi: int, q: int) -> np.ndarray:
    """Residue a^2 b^3 mod q of every square-full member of (x_lo, x_hi]."""
    bmax = icbrt(x_hi)
    mob = _squarefree_table(bmax).mobius
    parts = []
    use_numpy = q < 2**31
    for b in range(1, bmax + 1):
        if mob[b] == 0:
            continue
        b3 = b * b * b
        a_lo = math.isqrt(x_lo // b3) + 1
        a_hi = math.isqrt(x_hi // b3)
        if a_hi < a_lo:
            continue
        if use_numpy:
            a = np.arange(a_lo, a_hi + 1, dtype=np.int64) % q
            parts.append((a * a % q) * (b3 % q) % q)
        else:
            b3m = b3 % q
            parts.append(np.array([(a * a % q) * b3m % q for a in range(a_lo, a_hi + 1)], dtype=object))
    if not parts:
        return np.array([], dtype=np.int64)
    return np.concatenate(parts)


def residue_histogram(x: int, q: int) -> ResidueHistogram:
    """Counts of square-full n in (x, 2x] per residue class mod q; exact."""
    if not is_prime(q):
        raise DomainError(f"q={q} is not prime")
    if x < 1:
        raise DomainError("x must be >= 1")
    _check_capacity(2 * x)
    residues = _residues_of_members(x, 2 * x, q)
    counts = np.bincount(residues.astype(np.int64), minlength=q)
    return ResidueHistogram(x=x, q=q, counts=counts.astype(np.int64))


def ap_main_bracket(x: int, q: int) -> float:
    """The averaged smooth main term of one residue class on (x, 2x]."""
    if x < 1 or q < 2:
        raise DomainError("need x >= 1 and q >= 2")
    return (zeta(1.5) / zeta(3.0)) * (1.0 / q) * (1.0 - 1.0 / q) * main_diff(0.5, x, x) + (
        zeta(2 / 3) / zeta(2.0)
    ) * (1.0 / q) * (1.0 - q ** (-2 / 3)) * main_diff(1 / 3, x, x)


@dataclass(frozen=True)
class APVarianceReport:
    x: int
    q: int
    alpha: int
    statistic: float
    main_bracket: float
    prediction: float  # C (x/q)^(1/6)
    ratio: float


def ap_variance(x: int, q: int, alpha: int | None = None) -> APVarianceReport:
    """Variance over unit residue classes of the (l, alpha*l)-averaged
    square-full count in (x, 2x] against the smooth bracket."""
    _require_odd_prime(q)
    if not (x**0.45 <= q <= x**0.95):
        print(
            f"warning: q={q} outside the recommended range [x^0.45, x^0.95] for x={x}",
            file=sys.stderr,
        )
    if alpha is None:
        alpha = smallest_qnr(q)
    elif legendre(alpha, q) != -1:
        raise DomainError(f"alpha={alpha} is not a quadratic nonresidue mod {q}")
    hist = residue_histogram(x, q)
    counts = hist.counts.astype(np.float64)
    ells = np.arange(1, q, dtype=np.int64)
    paired = (counts[ells] + counts[ells * alpha % q]) / 2.0
    bracket = ap_main_bracket(x, q)
    statistic = float(np.mean((paired - bracket) ** 2))
    prediction = constant_c().C * (x / q) ** (1.0 / 6.0)
    return APVarianceReport(
        x=x,
        q=q,
        alpha=alpha,
        statistic=statistic,
        main_bracket=bracket,
        prediction=prediction,
        ratio=statistic / prediction,
    )


def count_squarefull_ap(x: int, q: int, l: int) -> int:
    """Q(x; q, l): square-full n <= x with n = l (mod q), exactly."""
    if not is_prime(q):
        raise DomainError(f"q={q} is not prime")
    if not 0 <= l < q:
        raise DomainError(f"residue l={l} outside 0..{q-1}")
    _check_capacity(x)
    residues = _residues_of_members(0, x, q)
    return int(np.count_nonzero(residues == l))


def a_ql_empirical(q: int, l: int, x: int) -> float:
    """Leading-coefficient estimate zeta(3) * q * Q(x;q,l) / sqrt(x)."""
    if math.gcd(l, q) != 1:
        raise DomainError("l must be a unit mod q")
    return zeta(3.0) * q * count_squarefull_ap(x, q, l) / math.sqrt(x)


def _legendre_table(q: int) -> np.ndarray:
    table = -np.ones(q, dtype=np.int64)
    table[0] = 0
    sq = (np.arange(q, dtype=np.int64) ** 2) % q
    table[sq[1:]] = 1
    return table


def a_ql_estimate(q: int, l: int, B: int = 10**4, variant: str = "all-b") -> float:
    """Truncated series candidate for the leading class coefficient.

    variant="all-b": (1 - q^-3)^(-1) * sum over all b <= B of N2(l*b; q) b^(-3/2)
    (the form whose limit matches the empirical estimator).
    variant="squarefree": same prefactor, b squarefree and coprime to q, with
    the inverse-cube twist N2(l * inv(b)^3; q); kept for comparison, converges
    to a value smaller by the factor zeta(3)(1 - q^-3).
    """
    _require_odd_prime(q)
    if math.gcd(l, q) != 1:
        raise DomainError("l must be a unit mod q")
    if not 1 <= B <= 10**6:
        raise DomainError("B must be in 1..10^6")
    if variant not in ("all-b", "squarefree"):
        raise DomainError(f"unknown variant {variant!r}")
    chi = _legendre_table(q) if q <= 2 * B + 2 else None

    def n2_of(n: int) -> int:
        n %= q
        if n == 0:
            return 0
        if chi is not None:
            return 1 + int(chi[n])
        return 1 + legendre(n, q)

    prefactor = 1.0 / (1.0 - q ** (-3))
    if variant == "all-b":
        total = math.fsum(n2_of(l * b) * b**-1.5 for b in range(1, B + 1))
        return prefactor * total
    mob = _squarefree_table(B).mobius
    total = 0.0
    acc = []
    for b in range(1, B + 1):
        if mob[b] == 0 or b % q == 0:
            continue
        binv = pow(b, q - 2, q)
        acc.append(n2_of(l * pow(binv, 3, q)) * b**-1.5)
    return prefactor * math.fsum(acc)


def pair_average_second_moment(b: np.ndarray, q: int, alpha: int, subtract_mean: bool) -> float:
    """Residue side: sum over unit classes l of
    |(1/2)(sum_{n=l} b_n + sum_{n=alpha*l} b_n) - mean|^2, mean optional."""
    _require_odd_prime(q)
    n = np.arange(len(b))
    mean = 0.0
    if subtract_mean:
        coprime = (n % q != 0) & (n > 0)
        mean = complex(b[coprime].sum()) / (q - 1)
    total = 0.0
    for l in range(1, q):
        s = 0.5 * (complex(b[l::q].sum()) + complex(b[alpha * l % q :: q].sum()))
        total += abs(s - mean) ** 2
    return total


def character_second_moment(b: np.ndarray, q: int, alpha: int, skip_principal: bool) -> complex:
    """Character side: (1/phi(q)) sum over chi of (1+chi(alpha))/2 |sum b_n chi(n)|^2.

    Equals the residue side exactly for real sequences; for complex sequences
    the real part does (the cross term i * sum Im(A_l conj(A_{alpha l})) has no
    residue-side counterpart and cancels only when b is real).
    """
    table = character_table(q)
    n = np.arange(len(b))
    cols = n % q
    total = 0j
    for k in range(q - 1):
        if skip_principal and k == 0:
            continue
        chi = table[k, cols]
        weight = (1.0 + table[k, alpha % q]) / 2.0
        total += weight * abs(np.sum(b * chi)) ** 2
    return complex(total) / (q - 1)


def primitive_root(q: int) -> int:
    """Smallest generator of the units mod prime q."""
    _require_odd_prime(q)
    m = q - 1
    factors = []
    mm = m
    p = 2
    while p * p <= mm:
        if mm % p == 0:
            factors.append(p)
            while mm % p == 0:
                mm //= p
        p += 1
    if mm > 1:
        factors.append(mm)
    for g in range(2, q):
        if all(pow(g, m // p, q) != 1 for p in factors):
            return g
    raise DomainError(f"no primitive root found mod {q}")


@lru_cache(maxsize=64)
def character_table(q: int) -> np.ndarray:
    """All Dirichlet characters mod prime q: table[k, n] = chi_k(n).

    chi_k(g^j) = exp(2 pi i j k / (q-1)) for the smallest primitive root g;
    k = 0 is the principal character.  Brute force, for small q only.
    """
    _require_odd_prime(q)
    if q > 10**4:
        raise DomainError("character tables are for small q")
    g = primitive_root(q)
    dlog = np.zeros(q, dtype=np.int64)
    acc = 1
    for j in range(q - 1):
        dlog[acc] = j
        acc = acc * g % q
    table = np.zeros((q - 1, q), dtype=np.complex128)
    ks = np.arange(q - 1)
    for n in range(1, q):
        table[:, n] = np.exp(2j * math.pi * ks * dlog[n] / (q - 1))
    return table
