"""Short-interval variance statistics, the sawtooth smoothing machinery, and
log-log exponent fits.

The variance integrals average |window count - smooth main-term difference|^2
over x in [X, 2X].  Two quadratures are provided: a stratified midpoint rule
(any number of strata >= 64) and an exact mode that enumerates the integrand's
breakpoints, where the count is constant, and integrates each smooth piece
with Gauss-Legendre nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .constants import zeta
from .squarefull import (
    _check_capacity,
    count_pairs_23,
    count_squarefull,
    delta_23,
    iroot,
    squarefull_in_window,
)

_GL8_NODES, _GL8_WEIGHTS = np.polynomial.legendre.leggauss(8)


def main_diff(r: float, x: float, y: float) -> float:
    """(x + y)^r - x^r, evaluated stably for y << x."""
    if x <= 0.0:
        raise DomainError("main_diff needs x > 0")
    if y < 0.0:
        raise DomainError("main_diff needs y >= 0")
    if not 0.0 < r < 1.0:
        raise DomainError("main_diff needs 0 < r < 1")
    return x**r * math.expm1(r * math.log1p(y / x))


@dataclass(frozen=True)
class VarianceReport:
    X: int
    H: int | None
    strata: int
    statistic: float
    bound_reference: float  # X^(1/5), the scale the statistic is judged against
    seedless: bool = True


def _window_main_diff(x: float, H: float) -> float:
    return (zeta(1.5) / zeta(3.0)) * main_diff(0.5, x, H) + (zeta(2 / 3) / zeta(2.0)) * main_diff(
        1 / 3, x, H
    )


def _pairs_main(x: float) -> float:
    return zeta(1.5) * math.sqrt(x) + zeta(2 / 3) * x ** (1 / 3)


def _midpoint_average(X: int, strata: int, integrand) -> float:
    """Mean of integrand over [X, 2X] by the stratified midpoint rule."""
    if strata < 64:
        raise DomainError("need at least 64 strata")
    width = X / strata
    acc = [integrand(X + (i + 0.5) * width) for i in range(strata)]
    return math.fsum(acc) / strata


def _piecewise_average(X: int, breakpoints: Iterable[float], integrand) -> tuple[float, int]:
    """Exact integral of a piecewise-smooth integrand over [X, 2X], divided by X.

    Breakpoints are where the embedded counting function jumps; each piece is
    integrated with 8-node Gauss-Legendre (exact to rounding for the smooth
    bracket terms).
    """
    pts = sorted({float(X), float(2 * X)} | {float(b) for b in breakpoints if X < b < 2 * X})
    total = 0.0
    pieces = 0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi <= lo:
            continue
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        total += half * math.fsum(
            w * integrand(mid + half * t) for t, w in zip(_GL8_NODES, _GL8_WEIGHTS)
        )
        pieces += 1
    return total / X, pieces


def short_interval_variance(X: int, H: int, strata: int = 512, exact: bool = False) -> VarianceReport:
    """Mean squared deviation of square-full window counts from the smooth
    main-term difference, over windows (x, x+H] with x in [X, 2X]."""
    if X < 4:
        raise DomainError("X too small")
    if not 2 <= H <= X // 2:
        raise DomainError(f"H={H} outside [2, X/2] for X={X}")
    _check_capacity(2 * X + H)

    def integrand(x: float) -> float:
        window = count_squarefull(int(math.floor(x + H))) - count_squarefull(int(math.floor(x)))
        return (window - _window_main_diff(x, H)) ** 2

    if exact:
        inner = squarefull_in_window(X, X).values()
        shifted = squarefull_in_window(X + H, X).values()
        breaks = [float(n) for n in inner] + [float(n - H) for n in shifted]
        statistic, pieces = _piecewise_average(X, breaks, integrand)
        return VarianceReport(X=X, H=H, strata=pieces, statistic=statistic, bound_reference=X**0.2)

    statistic = _midpoint_average(X, strata, integrand)
    return VarianceReport(X=X, H=H, strata=strata, statistic=statistic, bound_reference=X**0.2)


def divisor23_variance(X: int, strata: int = 512, exact: bool = False) -> VarianceReport:
    """Mean squared error of the (2,3)-pair count against its two main terms,
    sampled over x in [X, 2X]."""
    if X < 2:
        raise DomainError("X too small")
    _check_capacity(2 * X)

    def integrand(x: float) -> float:
        return (count_pairs_23(int(math.floor(x))) - _pairs_main(x)) ** 2

    if exact:
        # the pair count jumps exactly at the distinct values a^2 b^3
        values = sorted({n for n, _, _ in _pair_values_in(X, 2 * X)})
        statistic, pieces = _piecewise_average(X, [float(v) for v in values], integrand)
        return VarianceReport(X=X, H=None, strata=pieces, statistic=statistic, bound_reference=X**0.2)

    statistic = _midpoint_average(X, strata, integrand)
    return VarianceReport(X=X, H=None, strata=strata, statistic=statistic, bound_reference=X**0.2)


def _pair_values_in(lo: int, hi: int) -> list[tuple[int, int, int]]:
    """All (a^2 b^3, a, b) with lo < a^2 b^3 <= hi, any b."""
    out = []
    for b in range(1, iroot(hi, 3) + 1):
        b3 = b * b * b
        a = math.isqrt(lo // b3) + 1
        while a * a * b3 <= hi:
            out.append((a * a * b3, a, b))
            a += 1
    return out


def psi(u: float) -> float:
    """Sawtooth u - floor(u) - 1/2."""
    return u - math.floor(u) - 0.5


def psi_tilde(u: float, J: int) -> float:
    """Moving average of the sawtooth over a window of width 2/J.

    Closed form: equals the sawtooth except within 1/J of an integer, where it
    interpolates linearly through 0 with slope 1 - J/2.
    """
    if J < 2:
        raise DomainError("J must be >= 2")
    t = u - math.floor(u)
    inv = 1.0 / J
    if inv <= t <= 1.0 - inv:
        return t - 0.5
    if t < inv:
        return t * (1.0 - J / 2.0)
    return (t - 1.0) * (1.0 - J / 2.0)


def h_err(u: float, J: int) -> float:
    """|psi_tilde - psi|; supported within 1/J of the integers."""
    return abs(psi_tilde(u, J) - psi(u))


@dataclass(frozen=True)
class SawtoothApprox:
    J: int

    def __post_init__(self):
        if self.J < 2:
            raise DomainError("J must be >= 2")


def _linear_sin_integral(alpha: float, beta: float, lo: float, hi: float, omega: float) -> float:
    """integral of (alpha*t + beta) sin(omega t) dt over [lo, hi]."""

    def anti(t: float) -> float:
        return -(alpha * t + beta) * math.cos(omega * t) / omega + alpha * math.sin(omega * t) / omega**2

    return anti(hi) - anti(lo)


def _linear_cos_integral(alpha: float, beta: float, lo: float, hi: float, omega: float) -> float:
    """integral of (alpha*t + beta) cos(omega t) dt over [lo, hi]."""

    def anti(t: float) -> float:
        return (alpha * t + beta) * math.sin(omega * t) / omega + alpha * math.cos(omega * t) / omega**2

    return anti(hi) - anti(lo)


def _sawtooth_pieces(J: int) -> list[tuple[float, float, float, float]]:
    """(alpha, beta, lo, hi) of the smoothed sawtooth's linear pieces on [0, 1)."""
    inv = 1.0 / J
    s = 1.0 - J / 2.0
    return [(s, 0.0, 0.0, inv), (1.0, -0.5, inv, 1.0 - inv), (s, -s, 1.0 - inv, 1.0)]


def _h_pieces(J: int) -> list[tuple[float, float, float, float]]:
    inv = 1.0 / J
    return [(-J / 2.0, 0.5, 0.0, inv), (J / 2.0, 0.5 - J / 2.0, 1.0 - inv, 1.0)]


@dataclass(frozen=True)
class FourierDecayRow:
    j: int
    coef_smoothed: float  # sine coefficient of the smoothed sawtooth
    coef_error: float  # cosine coefficient of the approximation error
    bound: float
    ok: bool


def fourier_decay_check(J: int, jmax: int, constant: float = 10.0) -> tuple[bool, list[FourierDecayRow]]:
    """Fourier coefficients of the smoothed sawtooth and its error function,
    integrated piece by piece in closed form, against the min(j, J)/j^2 decay
    envelope."""
    if J < 2:
        raise DomainError("J must be >= 2")
    if not 1 <= jmax <= 10**4:
        raise DomainError("jmax must be in 1..10^4")
    saw = _sawtooth_pieces(J)
    hp = _h_pieces(J)
    rows = []
    all_ok = True
    for j in range(1, jmax + 1):
        omega = 2.0 * math.pi * j
        aj = 2.0 * math.fsum(_linear_sin_integral(al, be, lo, hi, omega) for al, be, lo, hi in saw)
        bj = 2.0 * math.fsum(_linear_cos_integral(al, be, lo, hi, omega) for al, be, lo, hi in hp)
        bound = constant * min(j, J) / (j * j)
        ok = abs(aj) <= bound and abs(bj) <= bound
        all_ok = all_ok and ok
        rows.append(FourierDecayRow(j=j, coef_smoothed=aj, coef_error=bj, bound=bound, ok=ok))
    return all_ok, rows


def smoothed_sawtooth_mean(J: int) -> float:
    """Mean of the smoothed sawtooth over one period (zero, by symmetry)."""
    saw = _sawtooth_pieces(J)
    return math.fsum(0.5 * al * (hi * hi - lo * lo) + be * (hi - lo) for al, be, lo, hi in saw)


@dataclass(frozen=True)
class HyperbolaCheck:
    x: int
    psi_sum: float  # both sawtooth sums of the hyperbola decomposition
    delta23: float  # exact pair-count error term at x
    offset: float  # psi_sum + delta23; order one if the decomposition is right


def hyperbola_psi_decomposition(x: int) -> HyperbolaCheck:
    """Sawtooth sums over d <= x^(1/5) whose negative tracks the pair-count
    error term to O(1); both sides are returned, never asserted equal."""
    if x < 32:
        raise DomainError("x must be >= 32 so x^(1/5) >= 2")
    dmax = iroot(x, 5)
    sx = math.sqrt(x)
    cx = x ** (1 / 3)
    s = math.fsum(psi(sx / d**1.5) for d in range(1, dmax + 1)) + math.fsum(
        psi(cx / d ** (2 / 3)) for d in range(1, dmax + 1)
    )
    d = delta_23(x).error
    return HyperbolaCheck(x=x, psi_sum=s, delta23=d, offset=s + d)


def exponent_fit(points: Sequence[tuple[float, float]]) -> float:
    """Ordinary least-squares slope of log(value) against log(scale)."""
    if len(points) < 3:
        raise DomainError("need at least 3 points")
    if any(s <= 0 or v <= 0 for s, v in points):
        raise DomainError("scales and values must be positive")
    xs = np.log([s for s, _ in points])
    ys = np.log([v for _, v in points])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)
