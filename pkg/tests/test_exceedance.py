import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envcontours.exceedance import (
    DegenerateContourError,
    ExceedanceSpec,
    alpha_from_return_period,
    iform_radius,
    iform_total_alpha,
    isorm_marginal_alpha,
    isorm_radius,
    return_period_from_alpha,
)
from envcontours.stats import norm_isf

mp.mp.dps = 40


def oracle_isorm_marginal(alpha_t, n):
    """mpmath: marginal tail at the chi-square radius."""
    a = mp.mpf(alpha_t)
    r2 = mp.findroot(lambda x: mp.gammainc(mp.mpf(n) / 2, x / 2, mp.inf, regularized=True) - a, 2 * mp.log(1 / a) + n)
    return float(mp.ncdf(-mp.sqrt(r2)))


def oracle_iform_total(alpha_m, n):
    a = mp.mpf(alpha_m)
    beta = -mp.sqrt(2) * mp.erfinv(2 * a - 1)
    return float(mp.gammainc(mp.mpf(n) / 2, beta**2 / 2, mp.inf, regularized=True))


def test_alpha_from_return_period():
    assert alpha_from_return_period(50, 3) == pytest.approx(6.845e-6, rel=1e-3)
    assert alpha_from_return_period(1, 3) == pytest.approx(1 / 2922, rel=1e-14)
    assert return_period_from_alpha(alpha_from_return_period(50, 3), 3) == pytest.approx(50, rel=1e-14)
    with pytest.raises(ValueError):
        alpha_from_return_period(0, 3)
    with pytest.raises(ValueError):
        alpha_from_return_period(50, -1)


def test_spec_origin_consistency():
    s = ExceedanceSpec.from_return_period("total", 50, 3)
    assert s.alpha == pytest.approx(1 / (50 * 365.25 * 24 / 3), rel=1e-12)
    with pytest.raises(ValueError):
        ExceedanceSpec("total", 1e-5, 50, 3)
    with pytest.raises(ValueError):
        ExceedanceSpec("sideways", 1e-3)
    with pytest.raises(ValueError):
        ExceedanceSpec("total", 1.0)


def test_iform_radius_values():
    assert iform_radius(6.845e-6) == pytest.approx(float(-mp.sqrt(2) * mp.erfinv(2 * mp.mpf("6.845e-6") - 1)), rel=1e-10)
    assert iform_radius(1e-3) == pytest.approx(3.0902, abs=5e-5)
    assert 0 < iform_radius(0.5 - 1e-9) < 1e-8


@pytest.mark.parametrize("a", [0.5, 0.7])
def test_iform_radius_degenerate(a):
    with pytest.raises(DegenerateContourError):
        iform_radius(a)


def test_isorm_radius_values():
    assert isorm_radius(1e-3, 2) == pytest.approx(np.sqrt(2 * np.log(1000)), rel=1e-14)
    assert isorm_radius(0.01, 1) == pytest.approx(norm_isf(0.005), rel=1e-12)
    assert isorm_radius(6.845e-6, 4) == pytest.approx(5.41, abs=0.005)


def test_isorm_marginal_return_periods():
    a = alpha_from_return_period(50, 3)
    m2 = isorm_marginal_alpha(a, 2)
    assert m2 == pytest.approx(oracle_isorm_marginal(a, 2), rel=1e-10)
    assert m2 == pytest.approx(5.39e-7, rel=0.01)
    assert return_period_from_alpha(m2, 3) == pytest.approx(635, rel=0.01)
    assert return_period_from_alpha(isorm_marginal_alpha(a, 4), 3) == pytest.approx(10950, rel=0.02)
    assert 1e-3 / isorm_marginal_alpha(1e-3, 2) == pytest.approx(10, rel=0.05)


def test_iform_total_examples():
    assert iform_total_alpha(0.5 - 1e-12, 3) == pytest.approx(1.0, abs=1e-9)
    assert iform_total_alpha(0.5 - 1e-12, 1) / (0.5 - 1e-12) == pytest.approx(2.0, abs=1e-9)
    assert iform_total_alpha(1e-5, 4) / 1e-5 == pytest.approx(oracle_iform_total(1e-5, 4) / 1e-5, rel=1e-10)
    assert iform_total_alpha(1e-5, 4) / 1e-5 == pytest.approx(100, rel=0.2)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("a", np.logspace(-8, np.log10(0.4), 9))
def test_inverse_pair(n, a):
    assert isorm_marginal_alpha(iform_total_alpha(a, n), n) == pytest.approx(a, rel=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.floats(-8, np.log10(0.4)))
def test_inverse_pair_property(n, log_a):
    a = 10.0**log_a
    assert isorm_marginal_alpha(iform_total_alpha(a, n), n) == pytest.approx(a, rel=1e-10)


@pytest.mark.parametrize("a", [1e-6, 1e-3, 0.2])
def test_one_dimensional_identities(a):
    assert a / isorm_marginal_alpha(a, 1) == pytest.approx(2.0, rel=1e-12)
    assert iform_total_alpha(a, 1) / a == pytest.approx(2.0, rel=1e-12)


def test_marginal_decreases_with_dimension():
    for a in (1e-6, 1e-3, 0.1):
        m = [isorm_marginal_alpha(a, n) for n in range(1, 6)]
        assert all(x > y for x, y in zip(m, m[1:]))


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_iform_ratio_nonincreasing(n):
    a = np.logspace(-8, np.log10(0.49), 200)
    r = np.array([iform_total_alpha(x, n) / x for x in a])
    assert np.all(np.diff(r) <= 1e-12 * r[1:])
