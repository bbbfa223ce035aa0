import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from raycap.capacity import (
    CapacityConfig,
    Setup,
    capacity,
    db_to_linear,
    log_det_oracle,
    setup2_double_limit,
    setup2_large_nt_limit,
    siso_awgn_capacity,
)
from raycap.channel import ChannelMatrix, build_channel, equal_angle_fan, fan_from_angles
from raycap.geometry import ArrayGeometry

ORTHO = ChannelMatrix([[1, 1], [-1, 1]])


def random_steering(rng, n_r, n_t) -> ChannelMatrix:
    ratio = rng.uniform(0.25, 1.0)
    thetas = sorted(rng.uniform(0.0, 180.0, n_t))
    return build_channel(ArrayGeometry.linear(n_r, 1.0, ratio), fan_from_angles(thetas))


@pytest.mark.parametrize(
    "h, setup, expected",
    [
        (ChannelMatrix([[1]]), Setup.SETUP1, 1.0),
        (ORTHO, Setup.SETUP1, 2.0),
        (ORTHO, Setup.SETUP2, math.log2(2.25)),
        (ORTHO, Setup.STANDARD, 2.0),
    ],
)
def test_capacity_examples(h, setup, expected):
    res = capacity(h, CapacityConfig.from_snr(1.0, setup))
    assert res.bits == pytest.approx(expected, abs=1e-12)
    assert np.all(res.singular_values >= 0)


def test_setup2_value_is_1_169925():
    res = capacity(ORTHO, CapacityConfig.from_snr(1.0, Setup.SETUP2))
    assert round(res.bits, 6) == 1.169925
    assert res.scale == 0.25


@pytest.mark.parametrize(
    "setup, divisor", [(Setup.STANDARD, 5), (Setup.SETUP1, 3), (Setup.SETUP2, 15)]
)
def test_scale_divisors(setup, divisor):
    cfg = CapacityConfig(transmit_power=6.0, noise_power=2.0, setup=setup)
    assert cfg.scale(3, 5) == pytest.approx(3.0 / divisor)


def test_config_validation_and_parsing():
    with pytest.raises(ValueError):
        CapacityConfig(transmit_power=0.0)
    with pytest.raises(ValueError):
        CapacityConfig(noise_power=-1.0)
    with pytest.raises(ValueError):
        Setup.parse("3")
    assert CapacityConfig(setup="2").setup is Setup.SETUP2
    assert Setup.parse("setup1") is Setup.SETUP1
    assert Setup.parse("0") is Setup.STANDARD
    assert CapacityConfig.from_snr_db(10.0).snr == pytest.approx(10.0)
    assert db_to_linear(-10) == pytest.approx(0.1)


@pytest.mark.parametrize("snr, bits", [(0, 0.0), (1, 1.0), (3, 2.0)])
def test_siso(snr, bits):
    assert siso_awgn_capacity(snr) == bits


def test_siso_rejects_negative():
    with pytest.raises(ValueError):
        siso_awgn_capacity(-0.1)


def test_large_nt_limit_examples():
    assert setup2_large_nt_limit(1, 1.0) == 1.0
    assert setup2_large_nt_limit(2, 1.0) == pytest.approx(2 * math.log2(1.5), abs=1e-15)
    mpmath.mp.dps = 40
    hp = float(10**6 * mpmath.log(1 + mpmath.mpf(1) / 10**6) / mpmath.log(2))
    assert setup2_large_nt_limit(10**6, 1.0) == pytest.approx(hp, abs=1e-12)
    assert abs(setup2_large_nt_limit(10**6, 1.0) - 1.442695) <= 1e-5


@pytest.mark.parametrize(
    "snr, expected", [(math.log(2), 1.0), (1.0, 1.442695), (2.0, 2.885390)]
)
def test_double_limit_examples(snr, expected):
    assert setup2_double_limit(snr) == pytest.approx(expected, abs=1e-6)


def test_limits_reject_bad_input():
    with pytest.raises(ValueError):
        setup2_large_nt_limit(0, 1.0)
    with pytest.raises(ValueError):
        setup2_large_nt_limit(3, 0.0)
    with pytest.raises(ValueError):
        setup2_double_limit(-1.0)


@given(st.integers(1, 10_000), st.floats(1e-6, 1e4))
def test_large_nt_limit_below_double_limit(n_r, snr):
    assert setup2_large_nt_limit(n_r, snr) < setup2_double_limit(snr)


@given(st.integers(1, 10_000), st.floats(1e-3, 1e4))
def test_large_nt_limit_increases_in_n_r(n_r, snr):
    assert setup2_large_nt_limit(n_r + 1, snr) > setup2_large_nt_limit(n_r, snr)


@given(st.floats(1e-3, 1e3))
def test_orthogonal_setup2_equals_limit(snr):
    res = capacity(ORTHO, CapacityConfig.from_snr(snr, Setup.SETUP2))
    assert res.bits == pytest.approx(setup2_large_nt_limit(2, snr), rel=1e-12)


def test_oracle_examples():
    assert log_det_oracle(ChannelMatrix([[1]]), 1.0) == 1.0
    assert log_det_oracle(ORTHO, 0.5) == pytest.approx(2.0, abs=1e-14)


def test_oracle_rejects_large():
    with pytest.raises(ValueError):
        log_det_oracle(ChannelMatrix(np.ones((9, 2))), 1.0)


@pytest.mark.parametrize("seed", range(100))
def test_capacity_matches_oracle_3x5(seed):
    rng = np.random.default_rng(seed)
    h = random_steering(rng, 3, 5)
    res = capacity(h, CapacityConfig(transmit_power=0.3 * 5, setup=Setup.STANDARD))
    assert res.scale == pytest.approx(0.3)
    assert res.bits == pytest.approx(log_det_oracle(h, res.scale), abs=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_oracle_agrees_with_lapack_det(seed):
    h = random_steering(np.random.default_rng(seed), 8, 12)
    expected = math.log2(np.linalg.det(np.eye(8) + 0.7 * h.gram()).real)
    assert log_det_oracle(h, 0.7) == pytest.approx(expected, abs=1e-10)


@settings(max_examples=60)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(1, 12), st.sampled_from(list(Setup)))
def test_result_is_sum_over_singular_values(seed, n_r, n_t, setup):
    h = random_steering(np.random.default_rng(seed), n_r, n_t)
    res = capacity(h, CapacityConfig.from_snr(2.5, setup))
    manual = sum(math.log2(1 + res.scale * s * s) for s in res.singular_values)
    assert res.bits == pytest.approx(manual, abs=1e-9)
    assert res.bits >= 0


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(1, 12), st.sampled_from(list(Setup)))
def test_monotone_in_snr(seed, n_r, n_t, setup):
    h = random_steering(np.random.default_rng(seed), n_r, n_t)
    snrs = [0.01, 0.1, 1.0, 10.0, 100.0]
    bits = [capacity(h, CapacityConfig.from_snr(s, setup)).bits for s in snrs]
    assert all(b > a for a, b in zip(bits, bits[1:]))


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1), st.integers(1, 30), st.integers(1, 30))
def test_zero_power_limit(seed, n_r, n_t):
    h = random_steering(np.random.default_rng(seed), n_r, n_t)
    for setup in Setup:
        assert capacity(h, CapacityConfig.from_snr(1e-9, setup)).bits < 1e-6


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(2, 12))
def test_column_permutation_invariance(seed, n_r, n_t):
    rng = np.random.default_rng(seed)
    h = random_steering(rng, n_r, n_t)
    perm = rng.permutation(n_t)
    hp = ChannelMatrix(h.entries[:, perm])
    cfg = CapacityConfig.from_snr(3.0, Setup.SETUP2)
    assert capacity(hp, cfg).bits == pytest.approx(capacity(h, cfg).bits, abs=1e-10)


@settings(max_examples=30)
@given(st.integers(1, 20), st.floats(0.01, 100.0))
def test_setup1_equals_standard_when_square(n, snr):
    h = build_channel(ArrayGeometry.linear(n), equal_angle_fan(n))
    a = capacity(h, CapacityConfig.from_snr(snr, Setup.SETUP1)).bits
    b = capacity(h, CapacityConfig.from_snr(snr, Setup.STANDARD)).bits
    assert a == b


def test_rank_deficient_never_negative():
    # identical rays give a rank-one channel
    h = build_channel(ArrayGeometry.linear(40), fan_from_angles([30.0] * 40))
    res = capacity(h, CapacityConfig.from_snr(1e-3, Setup.SETUP1))
    assert np.count_nonzero(res.singular_values) == 1
    assert res.bits == pytest.approx(math.log2(1 + 1e-3 / 40 * 1600), rel=1e-12)


def test_large_array_does_not_overflow():
    h = build_channel(ArrayGeometry.linear(600), equal_angle_fan(600))
    res = capacity(h, CapacityConfig.from_snr(1e6, Setup.SETUP1))
    assert math.isfinite(res.bits) and res.bits > 0
