"""Normalized partial-sum paths over (x, x + tH] and Hurst-exponent
estimators.

Each path is built from one pass over the window: the contributing integers
are enumerated once in ascending order, their contributions accumulated with
a single cumulative sum, and every grid value is a lookup into that prefix
array.  Restricting a 2g-grid path to even indices therefore reproduces the
g-grid path bit for bit, and the final value equals the one-shot full-window
statistic exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, DomainError, EstimationError
from .constants import zeta
from .squarefull import _check_capacity, squarefull_in_window
from .sieves import SEGMENT_CAP, primes_in_window


@dataclass(frozen=True)
class PathSeries:
    kind: str  # prime | squarefull
    x: int
    H: int
    grid: int
    values: np.ndarray = field(repr=False)  # float64, length grid+1, values[0] = 0
    literal: bool = False

    def t(self) -> np.ndarray:
        return np.arange(self.grid + 1) / self.grid


def _prefix_path(
    positions: np.ndarray,
    contributions: np.ndarray,
    x: int,
    H: int,
    grid: int,
    scale: float,
    drift: str,
) -> np.ndarray:
    """Grid values of scale * (sum of contributions in (x, x + kH/grid] - drift).

    positions are the contributing integers (ascending), as offsets n - x.
    The cutoff test (n - x) <= k H / grid is done in exact integer arithmetic.
    """
    prefix = np.concatenate(([0.0], np.cumsum(contributions)))
    ks = np.arange(grid + 1, dtype=np.int64)
    idx = np.searchsorted(positions * grid, ks * H, side="right")
    sums = prefix[idx]
    if drift == "continuous":
        drifts = (ks * H) / grid
    elif drift == "integer":
        drifts = ((ks * H) // grid).astype(np.float64)
    elif drift == "none":
        drifts = np.zeros(grid + 1)
    else:
        raise DomainError(f"unknown drift mode {drift!r}")
    return scale * (sums - drifts)


def _check_path_args(x: int, H: int, grid: int) -> None:
    if x < 1 or H < 1:
        raise DomainError("x and H must be positive")
    if grid < 1 or grid > 10**6:
        raise DomainError("grid must be in 1..10^6")
    _check_capacity(x + H)
    if H > SEGMENT_CAP:
        raise CapacityError(f"H={H} exceeds segment cap {SEGMENT_CAP}")


def prime_path(x: int, H: int, grid: int = 4096, literal: bool = False) -> PathSeries:
    """Centered prime log-weight path, normalized by H^(1/2).

    Default centering subtracts the full window length t*H (each integer
    carries drift -1); with literal=True only primes contribute, each with
    weight log p - 1.
    """
    _check_path_args(x, H, grid)
    window = primes_in_window(x, x + H)
    offsets = window.primes - x
    logs = np.log(window.primes.astype(np.float64))
    scale = H**-0.5
    if literal:
        values = _prefix_path(offsets, logs - 1.0, x, H, grid, scale, drift="none")
    else:
        values = _prefix_path(offsets, logs, x, H, grid, scale, drift="continuous")
    return PathSeries(kind="prime", x=x, H=H, grid=grid, values=values, literal=literal)


def squarefull_density_weight(n: float) -> float:
    """Reciprocal of the smooth square-full density at n."""
    d = zeta(1.5) / (2.0 * zeta(3.0) * math.sqrt(n)) + zeta(2 / 3) / (3.0 * zeta(2.0) * n ** (2 / 3))
    return 1.0 / d


def squarefull_path(x: int, H: int, grid: int = 4096, literal: bool = False) -> PathSeries:
    """Square-full path: members weighted by the reciprocal smooth density,
    drift t*H, normalized by H^(3/5).

    literal=True replaces the continuous drift by the integer count of the
    window, the per-integer -1 summed verbatim.
    """
    _check_path_args(x, H, grid)
    members = squarefull_in_window(x, H).values()
    offsets = np.array([n - x for n in members], dtype=np.int64)
    weights = np.array([squarefull_density_weight(float(n)) for n in members])
    scale = float(H) ** -0.6
    drift = "integer" if literal else "continuous"
    values = _prefix_path(offsets, weights, x, H, grid, scale, drift)
    return PathSeries(kind="squarefull", x=x, H=H, grid=grid, values=values, literal=literal)


def one_shot_endpoint(kind: str, x: int, H: int, literal: bool = False) -> float:
    """The t=1 statistic from a single full-window pass (no grid)."""
    series = prime_path(x, H, grid=1, literal=literal) if kind == "prime" else squarefull_path(
        x, H, grid=1, literal=literal
    )
    return float(series.values[-1])


@dataclass(frozen=True)
class HurstEstimate:
    method: str  # aggregated_variance | rescaled_range
    value: float
    stderr: float


def _log_log_slope(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float]:
    lx = np.log(xs)
    ly = np.log(ys)
    A = np.vstack([lx, np.ones_like(lx)]).T
    coef, res, *_ = np.linalg.lstsq(A, ly, rcond=None)
    slope = float(coef[0])
    dof = len(xs) - 2
    if dof > 0 and res.size:
        sigma2 = float(res[0]) / dof
        sxx = float(np.sum((lx - lx.mean()) ** 2))
        return slope, math.sqrt(sigma2 / sxx)
    return slope, 0.0


def hurst_estimate(values: np.ndarray, method: str = "aggregated_variance") -> HurstEstimate:
    """Hurst exponent of a sampled path.

    aggregated_variance: mean squared increment at dyadic lags m grows like
    m^(2H); the log-log slope halved is the estimate.  rescaled_range: the
    classical R/S statistic over dyadic window sizes, slope is the estimate.
    """
    values = np.asarray(values, dtype=np.float64)
    n = len(values)
    if n < 257:
        raise DomainError("need a grid of at least 256 intervals")
    if np.allclose(values, values[0]):
        raise EstimationError("constant series has no scaling exponent")
    if method == "aggregated_variance":
        lags, msq = [], []
        m = 1
        while m <= (n - 1) // 8:
            diffs = values[m:] - values[:-m]
            v = float(np.mean(diffs * diffs))
            if v > 0.0:
                lags.append(m)
                msq.append(v)
            m *= 2
        if len(lags) < 3:
            raise EstimationError("not enough usable lags")
        slope, err = _log_log_slope(np.array(lags, dtype=float), np.array(msq))
        return HurstEstimate(method=method, value=slope / 2.0, stderr=err / 2.0)
    if method == "rescaled_range":
        increments = np.diff(values)
        sizes, rs = [], []
        size = 8
        while size <= len(increments):
            chunks = len(increments) // size
            vals = []
            for c in range(chunks):
                seg = increments[c * size : (c + 1) * size]
                dev = np.cumsum(seg - seg.mean())
                r = float(dev.max() - dev.min())
                s = float(seg.std())
                if s > 0 and r > 0:
                    vals.append(r / s)
            if vals:
                sizes.append(size)
                rs.append(float(np.mean(vals)))
            size *= 2
        if len(sizes) < 3:
            raise EstimationError("not enough usable window sizes")
        slope, err = _log_log_slope(np.array(sizes, dtype=float), np.array(rs))
        return HurstEstimate(method=method, value=slope, stderr=err)
    raise DomainError(f"unknown method {method!r}")


def lcg_walk(n: int, seed: int = 42) -> np.ndarray:
    """Partial sums of +-1 steps from the 64-bit LCG
    state -> state * 6364136223846793005 + 1442695040888963407, stepping by
    the top bit.  Deterministic fixture for estimator sanity checks."""
    state = seed & 0xFFFFFFFFFFFFFFFF
    steps = np.empty(n)
    for i in range(n):
        state = (state * 6364136223846793005 + 1442695040888963407) & 0xFFFFFFFFFFFFFFFF
        steps[i] = 1.0 if state >> 63 else -1.0
    return np.concatenate(([0.0], np.cumsum(steps)))
