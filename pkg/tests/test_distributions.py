import mpmath as mp
import numpy as np
import pytest
from scipy import integrate, stats as sps

from envcontours.distributions import (
    LogNormal,
    Mixture,
    Normal,
    Uniform,
    VonMises,
    Weibull3,
    make_distribution,
)

mp.mp.dps = 30

TWO_PI = 2 * np.pi

LINE_LAWS = [
    (Weibull3(2.776, 1.471, 0.8888), (0.8888, 80.0)),
    (Weibull3(1.0, 3.0, 0.0), (0.0, 6.0)),
    (LogNormal(1.5, 0.2), (0.0, 40.0)),
    (Normal(0.3, 1.7), (-20.0, 20.0)),
    (Uniform(-3.0, 3.0), (-3.0, 3.0)),
]


@pytest.mark.parametrize("dist,bounds", LINE_LAWS)
def test_density_integrates_to_one(dist, bounds):
    val, _ = integrate.quad(lambda x: float(dist.pdf(x)), *bounds, limit=400, points=None)
    assert val == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("dist,bounds", LINE_LAWS)
def test_cdf_is_integral_of_pdf(dist, bounds):
    x = bounds[0] + 0.37 * (min(bounds[1], bounds[0] + 10) - bounds[0])
    val, _ = integrate.quad(lambda t: float(dist.pdf(t)), bounds[0], x, limit=400)
    assert dist.cdf(x) == pytest.approx(val, abs=1e-10)


@pytest.mark.parametrize("dist,_", LINE_LAWS)
@pytest.mark.parametrize("p", [1e-12, 1e-3, 0.5, 0.9, 1 - 1e-9])
def test_quantile_roundtrip(dist, _, p):
    assert dist.cdf(dist.ppf(p)) == pytest.approx(p, rel=1e-9, abs=1e-15)
    assert dist.sf(dist.isf(p)) == pytest.approx(p, rel=1e-9, abs=1e-15)


def test_weibull_closed_form_quantile():
    d = Weibull3(2.776, 1.471, 0.8888)
    q = 6.845e-6
    assert d.isf(q) == pytest.approx(0.8888 + 2.776 * np.log(1 / q) ** (1 / 1.471), rel=1e-14)


def test_weibull_tail_oracle():
    d = Weibull3(1.0, 1.0, 0.0)
    assert d.sf(700.0) == pytest.approx(float(mp.exp(-700)), rel=1e-12)


def test_logpdf_consistent():
    d = LogNormal(1.5, 0.2)
    x = np.array([2.0, 4.5, 9.0])
    np.testing.assert_allclose(d.logpdf(x), np.log(d.pdf(x)), rtol=1e-13)


def test_parameters_broadcast():
    d = Weibull3(np.array([1.0, 2.0]), 1.5, 0.0)
    assert d.cdf(np.array([1.0, 1.0])).shape == (2,)


@pytest.mark.parametrize("bad", [dict(scale=-1.0, shape=1.0, location=0.0), dict(scale=1.0, shape=0.0, location=0.0)])
def test_invalid_weibull(bad):
    with pytest.raises(ValueError):
        Weibull3(**bad)


def test_make_distribution_unknown_family():
    with pytest.raises(ValueError):
        make_distribution("gumbel", loc=0.0)


def mp_vonmises_cdf(theta, mu, k, cut=0.0):
    f = lambda t: mp.exp(k * mp.cos(t - mu)) / (2 * mp.pi * mp.besseli(0, k))  # noqa: E731
    return float(mp.quad(f, [cut, theta]))


@pytest.mark.parametrize("mu,k", [(2.10, 0.74), (5.54, 13.11), (0.0, 0.0)])
@pytest.mark.parametrize("theta", [0.3, 2.0, 5.5, 6.2])
def test_vonmises_cdf_oracle(mu, k, theta):
    assert VonMises(mu, k).cdf(theta) == pytest.approx(mp_vonmises_cdf(theta, mu, k), abs=1e-12)


def test_vonmises_cut_window():
    d = VonMises(5.54, 13.11, cut=-np.pi)
    assert d.cdf(-np.pi) == pytest.approx(0.0, abs=1e-15)
    assert d.cdf(np.pi - 1e-12) == pytest.approx(1.0, abs=1e-10)
    assert d.cdf(1.0) == pytest.approx(mp_vonmises_cdf(1.0, 5.54, 13.11, -np.pi), abs=1e-12)


def test_vonmises_density_periodic():
    d = VonMises(2.1, 0.74)
    assert d.pdf(1.0) == pytest.approx(d.pdf(1.0 + TWO_PI), rel=1e-13)


@pytest.mark.parametrize("p", [1e-6, 0.2, 0.5, 0.97])
def test_mixture_quantile_roundtrip(p):
    m = Mixture((0.21, 0.79), (VonMises(2.10, 0.74), VonMises(5.54, 13.11)))
    t = m.ppf(p)
    assert 0 <= t <= TWO_PI
    assert m.cdf(t) == pytest.approx(p, abs=1e-11)


def test_mixture_weights_validated():
    with pytest.raises(ValueError):
        Mixture((0.5, 0.6), (Normal(0, 1), Normal(1, 1)))


@pytest.mark.parametrize("dist", [Weibull3(2.776, 1.471, 0.8888), LogNormal(1.5, 0.2), Normal(0, 1)])
def test_sampler_goodness_of_fit(dist, rng):
    x = dist.rvs(rng, 20000)
    assert sps.kstest(x, lambda t: np.asarray(dist.cdf(t))).pvalue > 1e-3


def test_mixture_sampler_goodness_of_fit(rng):
    m = Mixture((0.21, 0.79), (VonMises(2.10, 0.74), VonMises(5.54, 13.11)))
    x = m.rvs(rng, 20000)
    assert np.all((x >= 0) & (x < TWO_PI))
    grid = np.sort(x)
    assert sps.kstest(grid, lambda t: np.asarray(m.cdf(t))).pvalue > 1e-3
