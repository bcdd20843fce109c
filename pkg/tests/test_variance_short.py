import math

import numpy as np
import pytest
from scipy import integrate

from sqfull.constants import zeta
from sqfull.errors import DomainError
from sqfull.variance_short import (
    FourierDecayRow,
    divisor23_variance,
    exponent_fit,
    fourier_decay_check,
    h_err,
    hyperbola_psi_decomposition,
    main_diff,
    psi,
    psi_tilde,
    short_interval_variance,
    smoothed_sawtooth_mean,
)

from oracles import squarefull_indicator_scan, d23_brute


def test_main_diff_examples():
    assert main_diff(0.5, 4, 5) == pytest.approx(1.0, abs=1e-12)
    assert main_diff(1 / 3, 8, 19) == pytest.approx(1.0, abs=1e-12)
    assert main_diff(0.7, 3.5, 0.0) == 0.0
    assert main_diff(0.5, 100.0, 1.0) > 0


def test_main_diff_stability_small_y():
    x, y = 1e12, 1e-3
    naive = (x + y) ** 0.5 - x**0.5
    stable = main_diff(0.5, x, y)
    assert stable == pytest.approx(0.5 * y / math.sqrt(x), rel=1e-9)
    assert abs(naive - stable) < 1e-9  # the stable form is the reference


def test_main_diff_domain():
    with pytest.raises(DomainError):
        main_diff(0.5, 0.0, 1.0)
    with pytest.raises(DomainError):
        main_diff(1.5, 1.0, 1.0)


def _short_interval_oracle(X: int, H: int) -> float:
    """Independent evaluation of the short-interval variance at small X:
    brute-force square-full breakpoints plus adaptive quadrature per piece."""
    scan = squarefull_indicator_scan(2 * X + H + 1)
    cums = np.cumsum(scan)
    c1 = zeta(1.5) / zeta(3.0)
    c2 = zeta(2 / 3) / zeta(2.0)

    def integrand(x: float) -> float:
        window = int(cums[int(x) + H] - cums[int(x)])
        bracket = c1 * ((x + H) ** 0.5 - x**0.5) + c2 * ((x + H) ** (1 / 3) - x ** (1 / 3))
        return (window - bracket) ** 2

    breaks = sorted(
        {X, 2 * X}
        | {n for n in range(X + 1, 2 * X + 1) if scan[n]}
        | {n - H for n in range(X + H + 1, 2 * X + H + 1) if scan[n]}
    )
    total = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        value, _ = integrate.quad(integrand, lo, hi, epsabs=1e-12, limit=200)
        total += value
    return total / X


def test_short_interval_exact_matches_independent_oracle():
    got = short_interval_variance(1000, 10, exact=True)
    assert got.statistic == pytest.approx(_short_interval_oracle(1000, 10), abs=1e-7)


def test_short_interval_unit_strata_matches_exact():
    # with integer H the window count is constant on unit intervals, so the
    # unit midpoint rule only misses the curvature of the smooth bracket
    exact = short_interval_variance(1000, 10, exact=True).statistic
    unit = short_interval_variance(1000, 10, strata=1000).statistic
    assert unit == pytest.approx(exact, abs=1e-6)


def test_short_interval_statistic_nonnegative_and_reproducible():
    a = short_interval_variance(10**5, 300, strata=128)
    b = short_interval_variance(10**5, 300, strata=128)
    assert a.statistic >= 0
    assert a == b


def test_short_interval_strata_refinement():
    a = short_interval_variance(10**6, 1000, strata=512).statistic
    b = short_interval_variance(10**6, 1000, strata=1024).statistic
    assert abs(b - a) <= 0.05 * max(a, b)


def test_short_interval_preconditions():
    with pytest.raises(DomainError):
        short_interval_variance(1000, 1)
    with pytest.raises(DomainError):
        short_interval_variance(1000, 600)
    with pytest.raises(DomainError):
        short_interval_variance(10**5, 100, strata=32)


def _divisor23_oracle(X: int) -> float:
    c1, c2 = zeta(1.5), zeta(2 / 3)
    counts = np.zeros(2 * X + 1, dtype=np.int64)
    for n in range(1, 2 * X + 1):
        counts[n] = counts[n - 1] + d23_brute(n)

    def integrand(x: float) -> float:
        return (int(counts[int(x)]) - c1 * x**0.5 - c2 * x ** (1 / 3)) ** 2

    breaks = sorted({X, 2 * X} | {n for n in range(X + 1, 2 * X + 1) if d23_brute(n)})
    total = 0.0
    for lo, hi in zip(breaks[:-1], breaks[1:]):
        value, _ = integrate.quad(integrand, lo, hi, epsabs=1e-12, limit=200)
        total += value
    return total / X


def test_divisor23_exact_matches_independent_oracle():
    got = divisor23_variance(1000, exact=True)
    assert got.statistic == pytest.approx(_divisor23_oracle(1000), abs=1e-7)


def test_divisor23_nonnegative_and_bounded_reference():
    rep = divisor23_variance(10**4, strata=128)
    assert rep.statistic >= 0
    assert rep.bound_reference == pytest.approx((10**4) ** 0.2, abs=0)


def test_variance_reversed_strata_order_invariant():
    # reduction is an fsum over stratum values; reversing evaluation order of
    # the independent samples must not change the statistic materially
    X, H, strata = 10**4, 100, 128
    width = X / strata
    c1 = zeta(1.5) / zeta(3.0)
    c2 = zeta(2 / 3) / zeta(2.0)
    from sqfull.squarefull import count_squarefull

    def term(i: int) -> float:
        x = X + (i + 0.5) * width
        window = count_squarefull(int(x + H)) - count_squarefull(int(x))
        bracket = c1 * main_diff(0.5, x, H) + c2 * main_diff(1 / 3, x, H)
        return (window - bracket) ** 2

    fwd = math.fsum(term(i) for i in range(strata)) / strata
    rev = math.fsum(term(i) for i in reversed(range(strata))) / strata
    assert fwd == pytest.approx(rev, abs=1e-15)
    assert short_interval_variance(X, H, strata=strata).statistic == pytest.approx(fwd, abs=1e-15)


def test_psi_examples():
    assert psi(0.5) == 0.0
    assert psi(1.25) == -0.25
    assert psi(3.0) == -0.5
    assert -0.5 <= psi(123.456) < 0.5


def test_psi_tilde_equals_psi_away_from_integers():
    rng = np.random.default_rng(23)
    J = 8
    for u in rng.uniform(0, 100, size=2000):
        t = u - math.floor(u)
        if 1 / J < t < 1 - 1 / J:
            assert psi_tilde(u, J) == pytest.approx(psi(u), abs=0)


def test_psi_tilde_matches_numeric_moving_average():
    # midpoint rule so no sample lands exactly on the sawtooth jump
    J = 16
    cells = 2**21
    for u in (0.0, 0.01, 0.05, 0.3, 0.95, 0.999, 2.03):
        h = (2 / J) / cells
        centers = (u - 1 / J) + (np.arange(cells) + 0.5) * h
        saw = centers - np.floor(centers) - 0.5
        numeric = (J / 2) * float(saw.sum() * h)
        assert psi_tilde(u, J) == pytest.approx(numeric, abs=1e-6)


def test_psi_tilde_lipschitz():
    rng = np.random.default_rng(29)
    J = 8
    us = rng.uniform(0, 10, size=10**5)
    vs = us + rng.uniform(-0.05, 0.05, size=10**5)
    for u, v in zip(us[:10**5], vs):
        assert abs(psi_tilde(u, J) - psi_tilde(v, J)) <= J * abs(u - v) + 1e-12


def test_h_support_and_bound():
    J = 8
    rng = np.random.default_rng(31)
    for u in rng.uniform(0, 50, size=5000):
        h = h_err(u, J)
        assert 0 <= h <= 0.5 + 1e-12
        if min(u - math.floor(u), math.ceil(u) - u) > 2 / J:
            assert h == 0.0


def test_fourier_first_coefficient_closed_form():
    for J in (4, 8, 64):
        ok, rows = fourier_decay_check(J, 1)
        x = 2 * math.pi / J
        expected = -(1 / math.pi) * math.sin(x) / x
        assert rows[0].coef_smoothed == pytest.approx(expected, abs=1e-9)


def test_fourier_decay_bound_j_up_to_100():
    ok, rows = fourier_decay_check(8, 100)
    assert ok
    assert all(isinstance(r, FourierDecayRow) and r.ok for r in rows)


def test_fourier_error_function_mean():
    # the error function has mean 1/(2J); the smoothed sawtooth has mean 0
    for J in (4, 32):
        assert smoothed_sawtooth_mean(J) == pytest.approx(0.0, abs=1e-8)


def test_fourier_coefficients_against_quadrature():
    J = 8
    ok, rows = fourier_decay_check(J, 12)
    ts = np.linspace(0, 1, 200001)
    for j in (1, 2, 7, 12):
        saw = np.array([psi_tilde(t, J) for t in ts])
        aj = 2 * np.trapezoid(saw * np.sin(2 * math.pi * j * ts), ts)
        assert rows[j - 1].coef_smoothed == pytest.approx(float(aj), abs=1e-7)
        he = np.array([h_err(t, J) for t in ts])
        bj = 2 * np.trapezoid(he * np.cos(2 * math.pi * j * ts), ts)
        assert rows[j - 1].coef_error == pytest.approx(float(bj), abs=1e-7)


def test_hyperbola_decomposition():
    seen = []
    for x in (10**3, 10**4, 10**5, 10**6):
        chk = hyperbola_psi_decomposition(x)
        assert abs(chk.offset) <= 10  # psi_sum ~ -delta_23 up to O(1)
        assert chk == hyperbola_psi_decomposition(x)  # deterministic
        seen.append(chk.offset)
    # each sawtooth value lies in (-1/2, 1/2]
    chk = hyperbola_psi_decomposition(10**4)
    dmax = int(round(10 ** (4 / 5)))
    assert abs(chk.psi_sum) <= 2 * dmax * 0.5 + 1


def test_hyperbola_domain():
    with pytest.raises(DomainError):
        hyperbola_psi_decomposition(31)


def test_exponent_fit_exact_power():
    points = [(s, s**2) for s in (1.0, 2.0, 5.0, 10.0, 100.0)]
    assert exponent_fit(points) == pytest.approx(2.0, abs=1e-10)


def test_exponent_fit_constant():
    points = [(s, 3.7) for s in (1.0, 10.0, 100.0)]
    assert exponent_fit(points) == pytest.approx(0.0, abs=1e-12)


def test_exponent_fit_noisy_fifth_root():
    rng = np.random.default_rng(41)
    points = [(s, s**0.2 * (1 + 0.01 * rng.uniform(-1, 1))) for s in np.logspace(1, 6, 12)]
    assert 0.15 <= exponent_fit(points) <= 0.25


def test_exponent_fit_domain():
    with pytest.raises(DomainError):
        exponent_fit([(1.0, 1.0), (2.0, 2.0)])
    with pytest.raises(DomainError):
        exponent_fit([(1.0, 1.0), (2.0, -2.0), (3.0, 1.0)])
