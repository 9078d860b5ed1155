import numpy as np
import pytest
from scipy import stats as sps

from envcontours.catalog import directional_model, sea_state_model
from envcontours.joint import NormalMixturePair
from envcontours.sampling import (
    BLOCK_SIZE,
    empirical_quantile,
    iter_blocks,
    project,
    sample,
)


def test_same_seed_same_points():
    m = sea_state_model()
    a = sample(m, 1, 7)
    b = sample(m, 1, 7)
    np.testing.assert_array_equal(a.points, b.points)
    assert not np.array_equal(a.points, sample(m, 1, 8).points)


def test_whole_blocks_shared_between_sizes():
    m = NormalMixturePair()
    big = sample(m, BLOCK_SIZE + 1000, 3)
    small = sample(m, BLOCK_SIZE + 10, 3)
    np.testing.assert_array_equal(big.points[:BLOCK_SIZE], small.points[:BLOCK_SIZE])


def test_block_order_is_independent_of_generation_order():
    m = NormalMixturePair()
    blocks = dict(iter_blocks(m, 2 * BLOCK_SIZE + 10, 9))
    full = sample(m, 2 * BLOCK_SIZE + 10, 9).points
    for start in sorted(blocks, reverse=True):
        np.testing.assert_array_equal(full[start : start + len(blocks[start])], blocks[start])


def test_sample_is_read_only_and_has_header():
    s = sample(sea_state_model(), 10, 1)
    with pytest.raises(ValueError):
        s.points[0, 0] = 1.0
    assert s.header() == {"model_id": "sea-state", "seed": 1, "count": 10}


@pytest.mark.parametrize("count,seed", [(0, 1), (10, -1), (10, 2**64)])
def test_bad_arguments(count, seed):
    with pytest.raises(ValueError):
        sample(sea_state_model(), count, seed)


def test_first_coordinate_ks_bound():
    m = sea_state_model()
    n = 1_000_000
    x = np.sort(sample(m, n, 2024).points[:, 0])
    f = m.first.cdf(x)
    ecdf_hi = np.arange(1, n + 1) / n
    d = max(np.max(ecdf_hi - f), np.max(f - (ecdf_hi - 1 / n)))
    assert d <= 1.63 / np.sqrt(n)


def test_direction_component_occupancy():
    # Component occupancy: the mode nearest each von Mises centre is
    # dominated by that component; compare sector mass against the model CDF.
    m = directional_model()
    n = 1_000_000
    th = sample(m, n, 77).points[:, 0]
    lo, hi = np.deg2rad(270.0), np.deg2rad(360.0)
    p = float(m.first.cdf(hi - 1e-12) - m.first.cdf(lo))
    phat = np.mean((th >= lo) & (th < hi))
    assert abs(phat - p) <= 3 * np.sqrt(p * (1 - p) / n)
    # Component labels drawn directly from the mixture sampler
    rng = np.random.default_rng(4)
    w = np.asarray(m.first.weights)
    idx = rng.choice(2, size=n, p=w)
    assert abs(idx.mean() - w[1]) <= 3 * np.sqrt(w[1] * w[0] / n)


def test_sea_state_histogram_matches_density():
    m = sea_state_model()
    n = 1_000_000
    pts = sample(m, n, 99).points
    he = np.linspace(0.9, 8.0, 21)
    te = np.linspace(3.0, 11.0, 21)
    obs, _, _ = np.histogram2d(pts[:, 0], pts[:, 1], bins=(he, te))
    # Expected cell masses from the model CDFs (exact for rectangles via the chain)
    hs = np.linspace(he[0], he[-1], 20 * 40 + 1)
    hmid = 0.5 * (hs[1:] + hs[:-1])
    wh = np.diff(m.first.cdf(hs))
    cond = m.conditional(hmid[:, None])
    ft = np.asarray(cond.cdf(te[None, :]))
    cell = (wh[:, None] * np.diff(ft, axis=1)).reshape(20, 40, 20).sum(axis=1)
    exp = n * cell
    keep = exp >= 5
    chi2 = np.sum((obs[keep] - exp[keep]) ** 2 / exp[keep])
    assert sps.chi2.sf(chi2, keep.sum() - 1) > 1e-3


def test_project_identities():
    pts = np.array([[1.0, 1.0], [2.0, -3.0]])
    np.testing.assert_allclose(project(pts, 0.0), pts[:, 0])
    np.testing.assert_allclose(project(pts, np.pi / 2), pts[:, 1], atol=1e-15)
    assert project(pts[:1], np.pi / 4)[0] == pytest.approx(np.sqrt(2))


def test_empirical_quantile_convention():
    v = np.arange(1, 101, dtype=float)
    assert empirical_quantile(v, 0.01) == 99.0
    rng = np.random.default_rng(0)
    x = rng.permutation(np.concatenate([-np.arange(1, 501), np.arange(1, 501)]).astype(float))
    assert abs(empirical_quantile(x, 0.5)) <= 1.0
    with pytest.raises(ValueError):
        empirical_quantile(v, 0.001)


def test_empirical_quantile_normal_tail():
    n = 1_000_000
    x = np.random.default_rng(31).standard_normal(n)
    a = 1e-3
    q = sps.norm.isf(a)
    se = np.sqrt(a * (1 - a) / n) / sps.norm.pdf(q)
    assert abs(empirical_quantile(x, a) - q) <= 3 * se
