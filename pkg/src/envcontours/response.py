"""Deterministic structural responses, contour maxima, and long-term response integrals."""

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from ._numeric import ConvergenceError
from .exceedance import TOTAL
from .sampling import iter_blocks

__all__ = [
    "SDOFResponse",
    "BimodalResponse",
    "DirectionalEllipseResponse",
    "CallableResponse",
    "make_response",
    "RESPONSE_FAMILIES",
    "CoordinateMismatchError",
    "ResponseMaximum",
    "max_response_on_contour",
    "LongTermIntegrator",
    "long_term_cdf",
    "return_response",
    "failure_probability",
    "failure_probability_mc",
    "to_response_coordinates",
]

HS_TP = ("hs", "tp")
HX_HY = ("hx", "hy")
POLAR = ("theta", "hs")


class CoordinateMismatchError(ValueError):
    """States are not in the coordinates the response function expects."""


def _lorentz(tp, gain, width, period):
    return gain / (1.0 + width * (tp - period) ** 2)


@dataclass(frozen=True)
class SDOFResponse:
    """Single resonance: ``a hs / (1 + b (tp - tp0)^2)``."""

    a: float = 2.0
    b: float = 0.007
    tp0: float = 30.0
    coordinates = HS_TP
    family = "sdof"

    def __call__(self, hs, tp):
        return np.asarray(hs, dtype=float) * _lorentz(np.asarray(tp, dtype=float), self.a, self.b, self.tp0)


@dataclass(frozen=True)
class BimodalResponse:
    """Sum of two resonances at periods ``te1`` and ``te2``."""

    a1: float = 4.0
    a2: float = 1.1
    b1: float = 0.1
    b2: float = 0.05
    te1: float = 25.0
    te2: float = 12.5
    coordinates = HS_TP
    family = "bimodal"

    def __call__(self, hs, tp):
        hs = np.asarray(hs, dtype=float)
        tp = np.asarray(tp, dtype=float)
        return hs * (_lorentz(tp, self.a1, self.b1, self.te1) + _lorentz(tp, self.a2, self.b2, self.te2))


@dataclass(frozen=True)
class DirectionalEllipseResponse:
    """Elliptical response in wave-height components, principal axes rotated by ``phi`` (radians).

    ``r = sqrt(a p^2 + b q^2)`` with ``(p, q)`` the components in the frame
    rotated by ``phi``.  With ``a == b`` the response is ``sqrt(a) * hs``.
    """

    a: float = 1.4
    b: float = 5.0
    phi: float = np.deg2rad(315.0)
    coordinates = HX_HY
    family = "directional-ellipse"

    def rotate(self, hx, hy):
        c, s = np.cos(self.phi), np.sin(self.phi)
        hx = np.asarray(hx, dtype=float)
        hy = np.asarray(hy, dtype=float)
        return hx * c + hy * s, -hx * s + hy * c

    def in_rotated_frame(self, p, q):
        return np.sqrt(self.a * np.square(p) + self.b * np.square(q))

    def __call__(self, hx, hy):
        return self.in_rotated_frame(*self.rotate(hx, hy))


@dataclass(frozen=True)
class CallableResponse:
    """Wrap ``func(x1, x2)``; ``coordinates=None`` accepts any model axes."""

    func: object
    coordinates: tuple = None
    family = "callable"

    def __call__(self, x1, x2):
        return np.asarray(self.func(x1, x2), dtype=float)


RESPONSE_FAMILIES = {
    "sdof": SDOFResponse,
    "bimodal": BimodalResponse,
    "directional-ellipse": DirectionalEllipseResponse,
}


def make_response(family, **params):
    """Build a response by family name; ``phi_deg`` is accepted for the ellipse angle."""
    if family not in RESPONSE_FAMILIES:
        raise ValueError(f"unknown response family {family!r}; choose from {sorted(RESPONSE_FAMILIES)}")
    if "phi_deg" in params:
        params["phi"] = np.deg2rad(params.pop("phi_deg"))
    return RESPONSE_FAMILIES[family](**params)


def to_response_coordinates(fn, x1, x2, labels):
    """Express states labelled ``labels`` in the coordinates ``fn`` expects."""
    want = fn.coordinates
    labels = tuple(labels)
    if want is None or labels == tuple(want):
        return x1, x2
    if tuple(want) == HX_HY and labels == POLAR:
        x2 = np.asarray(x2, dtype=float)
        return x2 * np.cos(x1), x2 * np.sin(x1)
    raise CoordinateMismatchError(
        f"{fn.family} response expects states in {tuple(want)}, got {labels}"
    )


def _evaluate(fn, pts, labels):
    pts = np.asarray(pts, dtype=float)
    return fn(*to_response_coordinates(fn, pts[..., 0], pts[..., 1], labels))


@dataclass(frozen=True)
class ResponseMaximum:
    value: float
    state: np.ndarray
    component: int
    vertex: int


def max_response_on_contour(fn, contour, refine=True):
    """Largest response over the contour vertices, refined along the best vertex's two edges.

    ``state`` is returned in the contour's own coordinates.
    """
    labels = contour.labels
    best = None
    for ci, comp in enumerate(contour.components):
        r = _evaluate(fn, comp, labels)
        i = int(np.argmax(r))
        if best is None or r[i] > best.value:
            best = ResponseMaximum(float(r[i]), comp[i].copy(), ci, i)
    if not refine:
        return best
    comp = contour.components[best.component]
    m = len(comp)
    v = comp[best.vertex]
    for nb in (comp[(best.vertex - 1) % m], comp[(best.vertex + 1) % m]):
        seg = nb - v
        res = optimize.minimize_scalar(
            lambda t: -float(_evaluate(fn, v + t * seg, labels)),
            bounds=(0.0, 1.0),
            method="bounded",
            options={"xatol": 1e-8},
        )
        if -res.fun > best.value:
            best = ResponseMaximum(float(-res.fun), v + res.x * seg, best.component, best.vertex)
    return best


class LongTermIntegrator:
    """Distribution of the response over all states, by quadrature in native model coordinates.

    The native domain is split into ``n[0] x n[1]`` cells.  Cell probability
    comes from the model's CDFs when the domain provides them, otherwise it
    is the density at the cell midpoint times the cell area.  A cell lies
    entirely above or below a response level when all four corner responses
    do; for cells straddling the level, the fraction above is estimated from
    a ``sub x sub`` set of interior points.
    """

    def __init__(self, model, fn, n=(2000, 2000), sub=4, bounds=None):
        if np.isscalar(n):
            n = (int(n), int(n))
        self.model, self.fn, self.sub = model, fn, int(sub)
        dom = model.native_domain()
        self._to_state = dom.to_state
        self._labels = tuple(model.labels)
        (a, b), (c, d) = bounds or dom.bounds
        self.edges = (np.linspace(a, b, n[0] + 1), np.linspace(c, d, n[1] + 1))
        e1, e2 = self.edges
        m1, m2 = 0.5 * (e1[1:] + e1[:-1]), 0.5 * (e2[1:] + e2[:-1])
        area = np.outer(np.diff(e1), np.diff(e2))
        self.cell_mass = np.empty(area.shape)
        corner = np.empty((n[0] + 1, n[1] + 1))
        step = max(1, 1_000_000 // n[1])
        for s in range(0, n[0], step):
            if dom.cell_mass is not None:
                self.cell_mass[s : s + step] = dom.cell_mass(e1[s : s + step + 1], e2)
            else:
                self.cell_mass[s : s + step] = dom.pdf(m1[s : s + step, None], m2[None, :]) * area[s : s + step]
        for s in range(0, n[0] + 1, step):
            corner[s : s + step] = self._response(e1[s : s + step, None], e2[None, :])
        self.cell_mass = np.clip(np.nan_to_num(self.cell_mass, nan=0.0), 0.0, None)
        lo = np.minimum(np.minimum(corner[:-1, :-1], corner[1:, :-1]), np.minimum(corner[:-1, 1:], corner[1:, 1:]))
        hi = np.maximum(np.maximum(corner[:-1, :-1], corner[1:, :-1]), np.maximum(corner[:-1, 1:], corner[1:, 1:]))
        keep = self.cell_mass > 0
        self._mass = self.cell_mass[keep]
        self._lo, self._hi = lo[keep], hi[keep]
        self._index = np.argwhere(keep)
        self.total_mass = float(self._mass.sum())
        self.response_range = (float(lo.min()), float(hi.max()))

    def _response(self, a, c):
        s1, s2 = self._to_state(a, c)
        return _evaluate(self.fn, np.stack(np.broadcast_arrays(s1, s2), axis=-1), self._labels)

    def _fraction_above(self, idx, x):
        e1, e2 = self.edges
        k = (np.arange(self.sub) + 0.5) / self.sub
        i, j = idx[:, 0], idx[:, 1]
        a = e1[i, None, None] + (e1[i + 1] - e1[i])[:, None, None] * k[None, :, None]
        c = e2[j, None, None] + (e2[j + 1] - e2[j])[:, None, None] * k[None, None, :]
        r = self._response(a, c)
        return (r > x).reshape(len(idx), -1).mean(axis=1)

    def _split(self, x):
        above = self._lo > x
        mixed = (~above) & (self._hi > x)
        frac = self._fraction_above(self._index[mixed], x) if mixed.any() else np.zeros(0)
        m_mixed = self._mass[mixed]
        p_above = float(self._mass[above].sum() + np.dot(m_mixed, frac))
        p_below = float(self._mass[~above & ~mixed].sum() + np.dot(m_mixed, 1.0 - frac))
        return p_below, p_above

    def cdf(self, x):
        """Probability that the response does not exceed ``x``."""
        return self._split(float(x))[0]

    def sf(self, x):
        """Probability that the response exceeds ``x`` (summed directly, no cancellation)."""
        return self._split(float(x))[1]

    def quantile_exceedance(self, alpha, xtol=1e-5):
        """Response level exceeded with probability ``alpha``."""
        lo, hi = self.response_range
        f = lambda x: np.log(max(self.sf(x), 1e-300)) - np.log(alpha)  # noqa: E731
        if f(lo) < 0 or f(hi) > 0:
            raise ConvergenceError(f"exceedance {alpha:g} not bracketed by responses on the grid [{lo:g}, {hi:g}]")
        try:
            return float(optimize.brentq(f, lo, hi, xtol=xtol))
        except (RuntimeError, ValueError) as exc:
            raise ConvergenceError(str(exc)) from exc


def long_term_cdf(model, fn, x, **grid):
    return LongTermIntegrator(model, fn, **grid).cdf(x)


def return_response(model, fn, spec, integrator=None, **grid):
    """Response exceeded with probability ``spec.alpha`` over all states."""
    if spec.kind != TOTAL:
        raise ValueError("the all-states return response needs a total exceedance probability")
    integ = integrator or LongTermIntegrator(model, fn, **grid)
    return integ.quantile_exceedance(spec.alpha)


def failure_probability(model, fn, capacity, integrator=None, **grid):
    """Probability that the response exceeds ``capacity``."""
    if capacity <= 0:
        raise ValueError("capacity must be positive")
    integ = integrator or LongTermIntegrator(model, fn, **grid)
    return integ.sf(capacity)


def failure_probability_mc(model, fn, capacity, count, seed):
    """Monte Carlo failure probability and its binomial standard error."""
    if capacity <= 0:
        raise ValueError("capacity must be positive")
    hits = 0
    for _, pts in iter_blocks(model, count, seed):
        hits += int(np.count_nonzero(_evaluate(fn, pts, model.labels) > capacity))
    p = hits / count
    return p, float(np.sqrt(max(p * (1.0 - p), 1.0 / count) / count))
