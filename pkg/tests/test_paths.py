import math

import numpy as np
import pytest

from sqfull.errors import DomainError, EstimationError
from sqfull.paths import (
    hurst_estimate,
    lcg_walk,
    one_shot_endpoint,
    prime_path,
    squarefull_density_weight,
    squarefull_path,
)

from oracles import trial_is_squarefull, trial_primes_window


def test_paths_start_at_zero():
    for series in (prime_path(10**6, 10**4, grid=64), squarefull_path(10**6, 10**4, grid=64)):
        assert series.values[0] == 0.0
        assert len(series.values) == series.grid + 1


def test_path_grid_one_matches_full_window():
    for kind in ("prime", "squarefull"):
        one = one_shot_endpoint(kind, 10**6, 10**4)
        fn = prime_path if kind == "prime" else squarefull_path
        series = fn(10**6, 10**4, grid=64)
        assert series.values[-1] == one  # exact


def test_prime_path_endpoint_against_trial_division():
    x, H = 10**6, 10**4
    primes = trial_primes_window(x, x + H)
    expected = (math.fsum(math.log(p) for p in primes) - H) * H**-0.5
    got = prime_path(x, H, grid=128).values[-1]
    assert got == pytest.approx(expected, abs=1e-9)


def test_prime_path_literal_mode():
    x, H = 10**6, 10**4
    primes = trial_primes_window(x, x + H)
    expected = math.fsum(math.log(p) - 1.0 for p in primes) * H**-0.5
    got = prime_path(x, H, grid=128, literal=True).values[-1]
    assert got == pytest.approx(expected, abs=1e-9)


def test_squarefull_path_endpoint_against_trial_division():
    x, H = 10**6, 10**4
    members = [n for n in range(x + 1, x + H + 1) if trial_is_squarefull(n)]
    expected = (math.fsum(squarefull_density_weight(n) for n in members) - H) * float(H) ** -0.6
    got = squarefull_path(x, H, grid=128).values[-1]
    assert got == pytest.approx(expected, rel=1e-9)


def test_refinement_consistency_bit_for_bit():
    for fn in (prime_path, squarefull_path):
        fine = fn(10**6, 10**4, grid=256)
        coarse = fn(10**6, 10**4, grid=128)
        assert np.array_equal(coarse.values, fine.values[::2])


def test_empty_window_square_full_path_decreases_linearly():
    # locate a window past 10^6 that holds no square-full integers
    H = 120
    x = next(
        x0
        for x0 in range(10**6, 10**6 + 3000)
        if not any(trial_is_squarefull(n) for n in range(x0 + 1, x0 + H + 1))
    )
    series = squarefull_path(x, H, grid=60)
    ts = series.t()
    slope = -H * float(H) ** -0.6
    for t, v in zip(ts, series.values):
        assert v == pytest.approx(slope * t, abs=1e-12)


def test_squarefull_path_affine_between_members_with_drift_slope():
    series = squarefull_path(10**6, 10**4, grid=1000)
    vals = series.values
    diffs = np.diff(vals)
    drift = -(10**4 / 1000) * float(10**4) ** -0.6
    # most grid steps contain no member, so the step equals the pure drift
    pure = np.isclose(diffs, drift, atol=1e-12)
    assert pure.sum() > 900


def test_path_literal_squarefull_integer_drift():
    x, H, grid = 10**6, 10**4, 128
    lit = squarefull_path(x, H, grid=grid, literal=True)
    smooth = squarefull_path(x, H, grid=grid)
    scale = float(H) ** -0.6
    for k in range(grid + 1):
        delta = (k * H) / grid - (k * H) // grid
        assert lit.values[k] - smooth.values[k] == pytest.approx(scale * delta, abs=1e-12)


def test_path_preconditions():
    with pytest.raises(DomainError):
        prime_path(0, 100)
    with pytest.raises(DomainError):
        prime_path(10, 100, grid=0)


def test_hurst_ramp_is_one():
    ramp = np.arange(4097) / 4096.0
    est = hurst_estimate(ramp, method="aggregated_variance")
    assert est.value == pytest.approx(1.0, abs=0.05)


def test_hurst_lcg_walk_near_half():
    walk = lcg_walk(65536, seed=42)
    est = hurst_estimate(walk, method="aggregated_variance")
    assert 0.4 <= est.value <= 0.6
    rs = hurst_estimate(walk, method="rescaled_range")
    assert 0.4 <= rs.value <= 0.7  # R/S biases high on short series


def test_hurst_subsampling_stable():
    walk = lcg_walk(65536, seed=42)
    full = hurst_estimate(walk, method="aggregated_variance")
    sub = hurst_estimate(walk[::2], method="aggregated_variance")
    assert abs(full.value - sub.value) <= max(3 * (full.stderr + sub.stderr), 0.05)


def test_hurst_errors():
    with pytest.raises(DomainError):
        hurst_estimate(np.zeros(100))
    with pytest.raises(EstimationError):
        hurst_estimate(np.ones(1000))
    with pytest.raises(DomainError):
        hurst_estimate(lcg_walk(1024), method="wavelet")


def test_lcg_walk_deterministic():
    assert np.array_equal(lcg_walk(512, seed=42), lcg_walk(512, seed=42))
    assert lcg_walk(512, seed=1)[1] in (-1.0, 1.0)
