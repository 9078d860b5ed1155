"""Omnidirectional and sector return values for direction-dependent wave heights."""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import optimize
from scipy.special import roots_legendre

from ._numeric import ConvergenceError
from .contours import ds_contour, iform_contour
from .exceedance import HOURS_PER_YEAR, ExceedanceSpec, alpha_from_return_period
from .joint import NATURAL, CartesianDirectionalModel
from .sampling import sample

log = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi

__all__ = [
    "Sector",
    "EmptySectorError",
    "DirectionalMarginal",
    "omnidirectional_return_value",
    "sector_return_value",
    "sector_exceedance_probability",
    "contour_vs_omnidirectional_gap",
    "GapResult",
]


class EmptySectorError(ValueError):
    """The sector carries (numerically) no directional probability."""


@dataclass(frozen=True)
class Sector:
    """Directional sector ``[center - width/2, center + width/2]`` in radians."""

    center: float
    width: float

    def __post_init__(self):
        if not 0 < self.width <= TWO_PI + 1e-12:
            raise ValueError("sector width must be in (0, 2*pi]")

    @classmethod
    def from_degrees(cls, center, width):
        return cls(np.deg2rad(center), np.deg2rad(width))

    @property
    def start(self):
        return self.center - 0.5 * self.width

    def contains(self, theta):
        d = np.mod(np.asarray(theta, dtype=float) - self.start, TWO_PI)
        return d <= self.width

    @staticmethod
    def partition(n, start=0.0):
        w = TWO_PI / n
        return [Sector(start + (i + 0.5) * w, w) for i in range(n)]


def _polar(model):
    base = model.base if isinstance(model, CartesianDirectionalModel) else model
    if not getattr(base, "circular_first", False):
        raise ValueError("model needs a circular first (direction) axis")
    return base


class DirectionalMarginal:
    """Wave-height exceedance integrated over direction by composite Gauss-Legendre quadrature.

    ``pieces`` equal panels of ``nodes`` points each cover the integration
    range; the integrand is smooth and periodic, so a few thousand nodes
    reach round-off accuracy.
    """

    def __init__(self, model, pieces=128, nodes=16):
        self.model = _polar(model)
        self.pieces, self.nodes = pieces, nodes
        self._gl = roots_legendre(nodes)

    def _rule(self, start, width):
        x, w = self._gl
        edges = start + width * np.arange(self.pieces + 1) / self.pieces
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        theta = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weight = (half[:, None] * w[None, :]).ravel()
        return theta, weight

    def _setup(self, sector):
        lo = self.model.support[0][0]
        start, width = (lo, TWO_PI) if sector is None else (sector.start, sector.width)
        theta, weight = self._rule(start, width)
        red = lo + np.mod(theta - lo, TWO_PI)
        return weight * self.model.first.pdf(red), self.model.conditional(red)

    def occurrence(self, sector=None):
        w, _ = self._setup(sector)
        return float(w.sum())

    def joint_sf(self, h, sector=None):
        """``P(Hs > h, direction in sector)``; the whole circle when ``sector`` is None."""
        w, cond = self._setup(sector)
        h = np.atleast_1d(np.asarray(h, dtype=float))
        out = np.asarray(cond.sf(h[:, None])) @ w
        return out if out.size > 1 else float(out[0])

    def return_value(self, exceedance, sector=None):
        """Height whose (sector-conditional) exceedance probability is ``exceedance``."""
        w, cond = self._setup(sector)
        rate = float(w.sum())
        if rate < 1e-12:
            raise EmptySectorError("sector occurrence probability is numerically zero")
        w = w / rate

        def g(h):
            return np.log(max(float(np.asarray(cond.sf(h)) @ w), 1e-300)) - np.log(exceedance)

        lo, hi = self.model.support[1]
        if g(lo) < 0 or g(hi) > 0:
            raise ConvergenceError(f"exceedance {exceedance:g} not bracketed on [{lo}, {hi}]")
        return float(optimize.brentq(g, lo, hi, xtol=1e-10, rtol=1e-13))


def _per_year(state_duration):
    return HOURS_PER_YEAR / state_duration


def omnidirectional_return_value(model, return_period, state_duration, marginal=None):
    """Height exceeded once per ``return_period`` years regardless of direction."""
    marg = marginal or DirectionalMarginal(model)
    return marg.return_value(alpha_from_return_period(return_period, state_duration))


def sector_return_value(model, return_period, state_duration, sector, marginal=None):
    """Return value within a sector.

    The sector sees ``m = M p`` states per year, where ``M`` is the yearly
    state count and ``p`` the sector occurrence probability; its return
    value solves ``Q(h | sector) = 1 / (m T)``.
    """
    marg = marginal or DirectionalMarginal(model)
    rate = marg.occurrence(sector)
    if rate < 1e-12:
        raise EmptySectorError("sector occurrence probability is numerically zero")
    m = _per_year(state_duration) * rate
    target = 1.0 / (m * return_period)
    if target >= 1.0:
        raise ValueError("sector sees fewer than one state per return period")
    return marg.return_value(target, sector)


def sector_exceedance_probability(model, h, sector, marginal=None):
    marg = marginal or DirectionalMarginal(model)
    return marg.joint_sf(h, sector)


@dataclass(frozen=True)
class GapResult:
    max_hs: float
    return_value: float
    contour: object

    @property
    def below(self):
        return self.max_hs < self.return_value


def contour_vs_omnidirectional_gap(
    model, return_period, state_duration, method="DS", order=NATURAL, count=10_000_000, seed=42, cartesian=None
):
    """Largest wave height on a Cartesian contour versus the omnidirectional return value."""
    base = _polar(model)
    cart = cartesian or (model if isinstance(model, CartesianDirectionalModel) else CartesianDirectionalModel(base))
    spec = ExceedanceSpec.from_return_period("marginal", return_period, state_duration)
    method = method.upper()
    if method == "IFORM":
        contour = iform_contour(cart, spec, order)
    elif method == "DS":
        contour = ds_contour(sample(cart, count, seed), spec, labels=cart.labels)
    else:
        raise ValueError("method must be IFORM or DS")
    max_hs = float(np.hypot(contour.vertices[:, 0], contour.vertices[:, 1]).max())
    res = GapResult(max_hs, omnidirectional_return_value(base, return_period, state_duration), contour)
    if method == "DS" and not res.below:
        log.warning("DS contour reaches %.4f, above the omnidirectional value %.4f", max_hs, res.return_value)
    return res
