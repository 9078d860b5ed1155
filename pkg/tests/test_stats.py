import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from envcontours import stats

mp.mp.dps = 40


def mp_norm_cdf(x):
    return float(mp.ncdf(x))


def mp_chi2_sf(n, x):
    return float(mp.gammainc(mp.mpf(n) / 2, mp.mpf(x) / 2, mp.inf, regularized=True))


@pytest.mark.parametrize("x", [-37.5, -10.0, -3.0, -0.5, 0.0, 0.7, 4.0, 8.0])
def test_norm_cdf_matches_oracle(x):
    want = mp_norm_cdf(x)
    assert stats.norm_cdf(x) == pytest.approx(want, rel=1e-13, abs=0)


@pytest.mark.parametrize("x", [-4.0, 0.0, 5.0, 20.0, 37.0])
def test_norm_sf_keeps_tail_precision(x):
    assert stats.norm_sf(x) == pytest.approx(float(mp.ncdf(-x)), rel=1e-13)


@pytest.mark.parametrize("q", [0.4, 1e-3, 6.845e-6, 1e-12, 1e-100, 1e-300])
def test_norm_isf_inverts_sf_oracle(q):
    x = stats.norm_isf(q)
    assert float(mp.ncdf(-x)) == pytest.approx(q, rel=1e-12)


def test_norm_ppf_known_values():
    assert stats.norm_ppf(1 - 1e-3) == pytest.approx(3.090232306167813, rel=1e-14)
    assert stats.norm_ppf(0.5) == 0.0


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5, float("nan")])
def test_quantiles_reject_closed_or_invalid_probabilities(p):
    with pytest.raises(ValueError):
        stats.norm_ppf(p)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("q", [0.5, 1e-3, 6.845e-6, 1e-10])
def test_chi2_isf_matches_oracle(n, q):
    x = stats.chi2_isf(n, q)
    assert mp_chi2_sf(n, x) == pytest.approx(q, rel=1e-10)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("x", [0.1, 2.0, 18.0, 60.0])
def test_chi2_cdf_sf_match_oracle(n, x):
    sf = mp_chi2_sf(n, x)
    assert stats.chi2_sf(n, x) == pytest.approx(sf, rel=1e-12)
    assert stats.chi2_cdf(n, x) == pytest.approx(1 - sf, rel=1e-12)


def test_chi2_two_dof_closed_form():
    assert stats.chi2_ppf(2, 1 - 1e-3) == pytest.approx(2 * np.log(1000), rel=1e-13)


@pytest.mark.parametrize("n", [0, -1, 2.5, True])
def test_dof_validation(n):
    with pytest.raises(ValueError):
        stats.chi2_sf(n, 1.0)


def test_nonfinite_arguments_rejected():
    with pytest.raises(ValueError):
        stats.norm_cdf(float("inf"))
    with pytest.raises(ValueError):
        stats.chi2_cdf(2, -1.0)


@pytest.mark.parametrize("k", [0.0, 0.74, 13.11, 500.0, 1e5])
def test_log_bessel_i0_oracle(k):
    assert stats.log_bessel_i0(k) == pytest.approx(float(mp.log(mp.besseli(0, k))), rel=1e-13, abs=1e-15)


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-300, 0.999999))
def test_norm_isf_roundtrip(q):
    assert stats.norm_sf(stats.norm_isf(q)) == pytest.approx(q, rel=1e-12)


def test_vectorized_inputs():
    x = np.array([-1.0, 0.0, 1.0])
    np.testing.assert_allclose(stats.norm_cdf(x) + stats.norm_sf(x), 1.0, rtol=1e-15)


def test_reference_points_against_oracle():
    assert stats.norm_cdf(0.0) == 0.5
    assert 1 - stats.norm_cdf(3.7169) == pytest.approx(float(mp.ncdf(-3.7169)), abs=1e-12)
    assert stats.norm_cdf(-8.0) == pytest.approx(float(mp.ncdf(-8)), rel=1e-12)
    assert stats.norm_ppf(0.9) == pytest.approx(float(mp.findroot(lambda x: mp.ncdf(x) - mp.mpf("0.9"), 1.2)), abs=1e-12)
    beta = stats.norm_ppf(1 - 6.845e-6)
    assert beta == pytest.approx(float(mp.findroot(lambda x: mp.ncdf(-x) - mp.mpf("6.845e-6"), 4.3)), rel=1e-9)
    assert beta == pytest.approx(4.348, abs=1e-3)


def test_chi2_reference_points():
    assert stats.chi2_cdf(2, 0.0) == 0.0
    assert stats.chi2_cdf(4, 18.467) == pytest.approx(1 - mp_chi2_sf(4, 18.467), abs=1e-12)
    assert stats.chi2_cdf(4, 18.467) == pytest.approx(0.999, abs=1e-5)
    q = stats.chi2_isf(4, 6.845e-6)
    assert q == pytest.approx(float(mp.findroot(lambda x: mp.gammainc(2, x / 2, mp.inf, regularized=True) - mp.mpf("6.845e-6"), 29)), rel=1e-10)
    assert np.sqrt(q) == pytest.approx(5.41, abs=0.005)


@pytest.mark.parametrize("q", [0.9, 0.5, 0.01, 1e-9])
def test_chi2_one_dof_identity(q):
    assert stats.chi2_isf(1, q) == pytest.approx(stats.norm_isf(q / 2) ** 2, rel=1e-10)


@pytest.mark.parametrize("x", np.linspace(0, 30, 13))
def test_chi2_two_dof_and_one_dof_closed_forms(x):
    assert stats.chi2_cdf(2, x) == pytest.approx(-np.expm1(-x / 2), rel=1e-14, abs=1e-300)
    assert stats.chi2_cdf(1, x * x) == pytest.approx(2 * stats.norm_cdf(x) - 1, abs=1e-10)


@pytest.mark.parametrize("x", np.linspace(-6, 6, 25))
def test_normal_roundtrip_and_symmetry(x):
    assert stats.norm_ppf(stats.norm_cdf(x)) == pytest.approx(x, abs=1e-8)
    assert stats.norm_cdf(-x) == pytest.approx(1 - stats.norm_cdf(x), abs=1e-15)


def test_bessel_reference_points():
    assert stats.log_bessel_i0(0.0) == 0.0
    assert np.exp(stats.log_bessel_i0(0.74)) == pytest.approx(float(mp.besseli(0, 0.74)), rel=1e-13)
    assert np.exp(stats.log_bessel_i0(0.74)) == pytest.approx(1.1405, abs=2e-3)
    k = 13.11
    asym = k - 0.5 * np.log(2 * np.pi * k) + np.log(1 + 1 / (8 * k) + 9 / (128 * k * k) + 225 / (3072 * k**3))
    assert stats.log_bessel_i0(k) == pytest.approx(asym, abs=1e-5)
    with pytest.raises(ValueError):
        stats.log_bessel_i0(-1.0)
