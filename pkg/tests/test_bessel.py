import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from raycap.bessel import SERIES_CROSSOVER, bessel_j0, j0_asymptotic, j0_series

mpmath.mp.dps = 50


def series_oracle(x: float) -> float:
    """Partial sums of the alternating power series at 50 digits."""
    x = mpmath.mpf(x)
    total = mpmath.mpf(0)
    term = mpmath.mpf(1)
    k = 0
    while True:
        total += term
        k += 1
        term *= -(x / 2) ** 2 / (k * k)
        if abs(term) < mpmath.mpf(10) ** -40 and k > x:
            return float(total)


def first_zero_by_bisection() -> float:
    lo, hi = 2.0, 3.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if series_oracle(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def test_oracle_values():
    assert series_oracle(0.0) == 1.0
    assert series_oracle(math.pi) == pytest.approx(-0.3042421776440938, abs=1e-15)
    assert first_zero_by_bisection() == pytest.approx(2.404825557695773, abs=1e-12)


@pytest.mark.parametrize(
    "x, expected, tol",
    [(0.0, 1.0, 0.0), (math.pi, -0.304242, 1e-6), (2.404826, 0.0, 1e-5)],
)
def test_examples(x, expected, tol):
    assert abs(bessel_j0(x) - expected) <= tol


@pytest.mark.parametrize("x", [0.0, 0.3, 1.0, math.pi, 2.404826, 5.5, 9.0, 11.9, 12.0])
def test_matches_series_oracle(x):
    assert bessel_j0(x) == pytest.approx(series_oracle(x), abs=1e-12)


def test_branches_agree_at_crossover():
    for x in (SERIES_CROSSOVER - 1e-9, SERIES_CROSSOVER, SERIES_CROSSOVER + 1e-9):
        assert abs(j0_series(x) - j0_asymptotic(x)) <= 1e-11
        assert abs(bessel_j0(x) - series_oracle(x)) <= 1e-11


@pytest.mark.parametrize("x", [12.5, 20.0, 47.3, 100.0, 333.3, 999.9, 1000.0])
def test_large_arguments_match_high_precision(x):
    assert abs(bessel_j0(x) - float(mpmath.besselj(0, x))) <= 1e-6


def test_first_zero():
    zero = first_zero_by_bisection()
    assert abs(bessel_j0(zero)) <= 1e-12


@given(st.floats(-1000.0, 1000.0))
def test_even_and_bounded(x):
    assert bessel_j0(x) == bessel_j0(-x)
    assert abs(bessel_j0(x)) <= 1.0 + 1e-12


def test_dense_grid_against_reference():
    xs = np.linspace(0.0, 1000.0, 4001)
    ref = np.array([float(mpmath.besselj(0, x)) for x in xs[::40]])
    ours = np.array([bessel_j0(x) for x in xs[::40]])
    assert np.max(np.abs(ours - ref)) <= 1e-6


@pytest.mark.parametrize("x", [math.inf, -math.inf, math.nan])
def test_non_finite_rejected(x):
    with pytest.raises(ValueError):
        bessel_j0(x)
