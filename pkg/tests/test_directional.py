import numpy as np
import pytest

from envcontours.catalog import directional_model, sea_state_model, uniform_direction_model
from envcontours.directional import (
    DirectionalMarginal,
    EmptySectorError,
    Sector,
    contour_vs_omnidirectional_gap,
    omnidirectional_return_value,
    sector_exceedance_probability,
    sector_return_value,
)
from envcontours.exceedance import alpha_from_return_period
from envcontours.joint import CartesianDirectionalModel
from envcontours.sampling import sample


def weibull_quantile(q, scale=2.0, shape=1.5, location=0.5):
    return location + scale * np.log(1 / q) ** (1 / shape)


def test_direction_density_integrates_to_one():
    assert DirectionalMarginal(directional_model()).occurrence() == pytest.approx(1.0, abs=1e-8)


def test_omnidirectional_value_of_published_model():
    assert omnidirectional_return_value(directional_model(), 1, 3) == pytest.approx(8.65, abs=0.02)


def test_omnidirectional_value_increases_with_period():
    m = directional_model()
    marg = DirectionalMarginal(m)
    v = [omnidirectional_return_value(m, t, 3, marginal=marg) for t in (1, 10, 100, 1000)]
    assert all(a < b for a, b in zip(v, v[1:]))


def test_uniform_direction_equals_plain_quantile():
    m = uniform_direction_model()
    a = alpha_from_return_period(1, 3)
    assert omnidirectional_return_value(m, 1, 3) == pytest.approx(weibull_quantile(a), rel=1e-10)


def test_uniform_quarter_sector():
    m = uniform_direction_model()
    a = alpha_from_return_period(1, 3)
    v = sector_return_value(m, 1, 3, Sector.from_degrees(45.0, 90.0))
    assert v == pytest.approx(weibull_quantile(4 * a), rel=1e-10)
    assert v < omnidirectional_return_value(m, 1, 3)


def test_sector_value_monotone_in_width():
    m = uniform_direction_model()
    marg = DirectionalMarginal(m)
    widths = [15, 45, 90, 180, 360]
    v = [sector_return_value(m, 1, 3, Sector.from_degrees(200.0, w), marginal=marg) for w in widths]
    assert all(a <= b for a, b in zip(v, v[1:]))
    assert v[-1] == pytest.approx(omnidirectional_return_value(m, 1, 3), rel=1e-10)


@pytest.mark.parametrize("n", [4, 8, 13])
def test_sector_exceedances_sum_to_omnidirectional(n):
    m = directional_model()
    marg = DirectionalMarginal(m)
    h = 6.0
    parts = sum(sector_exceedance_probability(m, h, s, marginal=marg) for s in Sector.partition(n, start=0.3))
    assert parts == pytest.approx(marg.joint_sf(h), rel=1e-10)


def test_sector_validation_and_empty_sector():
    with pytest.raises(ValueError):
        Sector(0.0, 0.0)
    with pytest.raises(ValueError):
        Sector(0.0, 7.0)
    with pytest.raises(EmptySectorError):
        sector_return_value(directional_model(), 1, 3, Sector(1.0, 1e-14))


def test_sector_wraps_around_zero():
    s = Sector.from_degrees(0.0, 20.0)
    assert s.contains(np.deg2rad(355.0)) and s.contains(np.deg2rad(5.0))
    assert not s.contains(np.deg2rad(15.0))


def test_requires_directional_model():
    with pytest.raises(ValueError):
        DirectionalMarginal(sea_state_model())


def test_height_exceedance_dominates_component_exceedance():
    cart = CartesianDirectionalModel(directional_model())
    pts = sample(cart, 1_000_000, 21).points
    hs = np.hypot(pts[:, 0], pts[:, 1])
    for psi in np.deg2rad([0, 45, 133, 311]):
        comp = pts[:, 0] * np.cos(psi) + pts[:, 1] * np.sin(psi)
        for r in (3.0, 6.0, 8.0):
            assert np.mean(hs > r) >= np.mean(comp > r)


def test_isotropic_toy_gap_is_positive():
    res = contour_vs_omnidirectional_gap(uniform_direction_model(), 1, 3, method="DS", count=1_000_000, seed=3)
    assert res.below
    assert 0 < res.return_value - res.max_hs


def test_gap_rejects_other_methods():
    with pytest.raises(ValueError):
        contour_vs_omnidirectional_gap(uniform_direction_model(), 1, 3, method="HD")
