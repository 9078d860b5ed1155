"""IFORM, ISORM, direct-sampling and highest-density contours."""

import logging
from dataclasses import dataclass, field

import numpy as np
from contourpy import LineType, contour_generator
from matplotlib.path import Path
from scipy import optimize
from scipy.spatial import ConvexHull, HalfspaceIntersection

from ._numeric import ConvergenceError
from .exceedance import MARGINAL, TOTAL, ExceedanceSpec, iform_radius, isorm_radius
from .joint import NATURAL, parse_order
from .sampling import SampleSet, empirical_quantiles, exceedance_count, project

log = logging.getLogger(__name__)

DEFAULT_POINTS = 360
DEFAULT_HD_GRID = (1000, 1000)
MIN_EXCEEDANCES = 100

__all__ = [
    "Contour",
    "ContourBounds",
    "InsufficientSampleError",
    "EmptyContourError",
    "iform_contour",
    "isorm_contour",
    "ds_contour",
    "ds_contours",
    "ds_offsets",
    "hd_contour",
    "hd_interval_1d",
    "contour_bounds",
    "empirical_total_alpha",
    "polygon_area",
    "is_simple_polygon",
]


class InsufficientSampleError(ValueError):
    """Too few sample points beyond the requested quantile."""


class EmptyContourError(ValueError):
    """The direct-sampling half-planes have an empty intersection."""


@dataclass
class Contour:
    """A closed contour (possibly several closed components) in model coordinates.

    ``components`` holds ``(m, 2)`` vertex arrays; each is closed implicitly
    (the last vertex connects back to the first).  ``points`` is the largest
    component.
    """

    method: str
    components: tuple
    spec: ExceedanceSpec
    labels: tuple = ("x1", "x2")
    meta: dict = field(default_factory=dict)

    @property
    def points(self):
        return self.components[0]

    @property
    def vertices(self):
        return np.concatenate(self.components, axis=0)

    def closed_points(self, component=0):
        pts = self.components[component]
        return np.vstack([pts, pts[:1]])


@dataclass(frozen=True)
class ContourBounds:
    lower: np.ndarray
    upper: np.ndarray
    argmin: np.ndarray
    argmax: np.ndarray


def _require_kind(spec, kind, method):
    if spec.kind != kind:
        raise ValueError(
            f"{method} contours are defined by a {kind} exceedance probability, got a {spec.kind} one"
        )


def _circle(radius, n_points):
    theta = 2.0 * np.pi * np.arange(n_points) / n_points
    return theta, np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])


def _rosenblatt_contour(method, model, spec, radius, order, n_points):
    order = parse_order(order)
    theta, u = _circle(radius, n_points)
    try:
        x = model.inverse_rosenblatt(u, order)
    except (ValueError, ConvergenceError):
        for t, ui in zip(theta, u):
            try:
                model.inverse_rosenblatt(ui[None, :], order)
            except (ValueError, ConvergenceError) as exc:
                raise type(exc)(f"inverse Rosenblatt failed at U-space angle {np.degrees(t):.2f} deg: {exc}") from exc
        raise
    meta = {"order": list(order), "n_points": n_points, "radius": float(radius), "model": model.name}
    return Contour(method, (x,), spec, tuple(model.labels), meta)


def iform_contour(model, spec, order=NATURAL, n_points=DEFAULT_POINTS):
    """Inverse-Rosenblatt image of the U-space circle of radius ``Phi^-1(1 - alpha)``."""
    _require_kind(spec, MARGINAL, "IFORM")
    return _rosenblatt_contour("IFORM", model, spec, iform_radius(spec.alpha), order, n_points)


def isorm_contour(model, spec, order=NATURAL, n_points=DEFAULT_POINTS):
    """Inverse-Rosenblatt image of the U-space circle with chi-squared(2) radius."""
    _require_kind(spec, TOTAL, "ISORM")
    return _rosenblatt_contour("ISORM", model, spec, isorm_radius(spec.alpha, 2), order, n_points)


def _angles(angles):
    if angles is None:
        angles = DEFAULT_POINTS
    if np.isscalar(angles):
        return 2.0 * np.pi * np.arange(int(angles)) / int(angles)
    return np.sort(np.mod(np.asarray(angles, dtype=float), 2.0 * np.pi))


def ds_offsets(sample, alphas, angles=None):
    """Half-plane offsets ``c[alpha, theta]``: empirical projection quantiles."""
    pts = sample.points if isinstance(sample, SampleSet) else np.asarray(sample, dtype=float)
    theta = _angles(angles)
    alphas = np.atleast_1d(np.asarray(alphas, dtype=float))
    for a in alphas:
        if a * len(pts) < 1 or exceedance_count(a, len(pts)) < MIN_EXCEEDANCES:
            raise InsufficientSampleError(
                f"need at least {MIN_EXCEEDANCES} exceedances per angle: alpha={a:g} with n={len(pts)}"
            )
    out = np.empty((len(alphas), len(theta)))
    for j, t in enumerate(theta):
        out[:, j] = empirical_quantiles(project(pts, t), alphas)
    return theta, out


def _halfplane_polygon(theta, offsets):
    normals = np.column_stack([np.cos(theta), np.sin(theta)])
    # Chebyshev centre: max r subject to n.x + r <= c
    res = optimize.linprog(
        c=[0.0, 0.0, -1.0],
        A_ub=np.column_stack([normals, np.ones(len(theta))]),
        b_ub=offsets,
        bounds=[(None, None), (None, None), (0.0, None)],
        method="highs",
    )
    if res.status != 0 or res.x[2] <= 1e-12:
        raise EmptyContourError("direct-sampling half-planes have an empty intersection")
    centre = res.x[:2]
    hs = HalfspaceIntersection(np.column_stack([normals, -offsets]), centre)
    verts = hs.intersections
    hull = ConvexHull(verts)
    return verts[hull.vertices]


def ds_contour(sample, spec, angles=None, labels=None):
    """Direct-sampling contour: boundary of the intersection of half-planes.

    For each angle the half-plane ``x1 cos(t) + x2 sin(t) <= c(t)`` leaves
    ``ceil(alpha * n)`` sample points outside.
    """
    _require_kind(spec, MARGINAL, "DS")
    theta, offs = ds_offsets(sample, [spec.alpha], angles)
    return _ds_from_offsets(sample, spec, theta, offs[0], labels)


def _ds_from_offsets(sample, spec, theta, offsets, labels):
    poly = _halfplane_polygon(theta, offsets)
    meta = {"n_angles": len(theta), "offsets": offsets.tolist()}
    if isinstance(sample, SampleSet):
        meta.update(seed=sample.seed, sample_count=sample.count, model=sample.model_id)
    return Contour("DS", (poly,), spec, tuple(labels) if labels else ("x1", "x2"), meta)


def ds_contours(sample, alphas, angles=None, labels=None):
    """DS contours at several marginal probabilities sharing one projection pass."""
    theta, offs = ds_offsets(sample, alphas, angles)
    return [_ds_from_offsets(sample, ExceedanceSpec.marginal(a), theta, o, labels) for a, o in zip(alphas, offs)]


def polygon_area(points):
    x, y = points[:, 0], points[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _density_grid(model, n, bounds):
    (a, b), (c, d) = bounds
    g1 = np.linspace(a, b, n[0])
    g2 = np.linspace(c, d, n[1])
    f = np.empty((n[0], n[1]))
    step = max(1, 2_000_000 // n[1])
    for s in range(0, n[0], step):
        f[s : s + step] = model.pdf(g1[s : s + step, None], g2[None, :])
    return g1, g2, f


def _trapezoid_weights(g):
    w = np.empty_like(g)
    dg = np.diff(g)
    w[1:-1] = 0.5 * (dg[1:] + dg[:-1])
    w[0], w[-1] = 0.5 * dg[0], 0.5 * dg[-1]
    return w


def hd_threshold(f, w, alpha):
    """Largest density threshold whose super-level set holds probability >= 1 - alpha.

    ``f`` are grid densities and ``w`` the matching quadrature weights.  The
    probability outside the region is a step function of the threshold with
    one step per distinct density level; it is made continuous by
    interpolating linearly between neighbouring levels, so nodes that share
    a level (flat stretches of the density) are split fractionally instead
    of all at once.  Returns ``(fc, outside_mass, inside_mass)`` where the
    masses are the interpolated ones.
    """
    f = f.ravel()
    order = np.argsort(f, kind="stable")
    fs = f[order]
    ms = (w.ravel() * f)[order]
    levels, first = np.unique(fs, return_index=True)
    level_mass = np.add.reduceat(ms, first)
    below = np.concatenate(([0.0], np.cumsum(level_mass)))
    total = below[-1]
    k = int(np.searchsorted(below, alpha, side="right")) - 1
    k = min(max(k, 0), len(levels) - 1)
    if k + 1 < len(levels) and level_mass[k] > 0:
        frac = float(np.clip((alpha - below[k]) / level_mass[k], 0.0, 1.0))
        fc = levels[k] + frac * (levels[k + 1] - levels[k])
        outside = below[k] + frac * level_mass[k]
    else:
        fc = levels[k]
        outside = below[k]
    return float(fc), float(outside), float(total - outside)


def hd_contour(model, spec, grid=DEFAULT_HD_GRID, bounds=None):
    """Highest-density contour: the isodensity line enclosing probability ``1 - alpha``.

    The density is tabulated on a regular grid over ``bounds`` (default: the
    model support) and the probability outside a level set is integrated
    with trapezoid weights.  The level line is traced by marching squares
    with crossing points interpolated linearly in the density.
    Several components are returned when the level set is disconnected.
    """
    _require_kind(spec, TOTAL, "HD")
    if np.isscalar(grid):
        grid = (int(grid), int(grid))
    bounds = tuple(tuple(b) for b in (bounds or model.support))
    g1, g2, f = _density_grid(model, grid, bounds)
    w = np.outer(_trapezoid_weights(g1), _trapezoid_weights(g2))
    fc, outside, inside = hd_threshold(f, w, spec.alpha)
    if fc <= 0:
        raise ConvergenceError("HD threshold is zero: the grid does not resolve the requested alpha")
    comps = _level_lines(g1, g2, f, fc)
    if not comps:
        raise ConvergenceError("no isodensity line found at the HD threshold")
    meta = {
        "density_threshold": fc,
        "grid": list(grid),
        "bounds": [list(b) for b in bounds],
        "outside_mass": outside,
        "enclosed_mass": inside,
        "grid_mass": outside + inside,
        "n_components": len(comps),
        "model": model.name,
    }
    return Contour("HD", tuple(comps), spec, tuple(model.labels), meta)


def _level_lines(g1, g2, f, level):
    d1, d2 = g1[1] - g1[0], g2[1] - g2[0]
    x = np.concatenate(([g1[0] - d1], g1, [g1[-1] + d1]))
    y = np.concatenate(([g2[0] - d2], g2, [g2[-1] + d2]))
    z = np.zeros((len(x), len(y)))
    z[1:-1, 1:-1] = f
    gen = contour_generator(x, y, z.T, line_type=LineType.Separate)
    lines = []
    for line in gen.lines(level):
        if len(line) < 4:
            continue
        if np.allclose(line[0], line[-1]):
            line = line[:-1]
        lines.append(np.asarray(line, dtype=float))
    lines.sort(key=lambda p: -abs(polygon_area(p)))
    return lines


def hd_interval_1d(dist, alpha, lower=None, upper=None):
    """Highest-density interval of a unimodal univariate density.

    Returns ``(c_lower, c_upper, fc)`` with ``pdf(c_lower) = pdf(c_upper) =
    fc`` (or ``c_lower`` at the lower end point when the density is maximal
    there) and ``F(c_lower) + Q(c_upper) = alpha``.
    """
    lo = dist.ppf(1e-300) if lower is None else lower
    hi = dist.isf(1e-300) if upper is None else upper
    res = optimize.minimize_scalar(lambda x: -dist.pdf(x), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-12})
    mode = res.x
    if dist.pdf(lo) >= dist.pdf(mode):
        mode = lo
    fmax = float(dist.pdf(mode))

    def crossings(fc):
        g = lambda x: float(dist.pdf(x)) - fc  # noqa: E731
        left = lo if g(lo) >= 0 else optimize.brentq(g, lo, mode, xtol=1e-14, rtol=1e-15)
        right = hi if g(hi) >= 0 else optimize.brentq(g, mode, hi, xtol=1e-14, rtol=1e-15)
        return left, right

    def outside(logf):
        left, right = crossings(np.exp(logf))
        return float(dist.cdf(left)) + float(dist.sf(right))

    lf_hi = np.log(fmax) - 1e-12
    lf_lo = np.log(fmax) - 1.0
    while outside(lf_lo) > alpha:
        lf_lo -= 2.0 * (lf_hi - lf_lo)
    logfc = optimize.brentq(lambda t: np.log(outside(t)) - np.log(alpha), lf_lo, lf_hi, xtol=1e-14)
    left, right = crossings(np.exp(logfc))
    return left, right, float(np.exp(logfc))


def contour_bounds(contour):
    """Per-axis minimum and maximum over all vertices, with the attaining states.

    Ties resolve to the first vertex in component order.
    """
    v = contour.vertices
    if len(v) == 0:
        raise ValueError("empty contour")
    i_min = np.argmin(v, axis=0)
    i_max = np.argmax(v, axis=0)
    return ContourBounds(v.min(axis=0), v.max(axis=0), v[i_min], v[i_max])


def inside_contour(contour, points):
    """Even-odd membership of points in the region bounded by the contour components."""
    pts = np.asarray(points, dtype=float)
    inside = np.zeros(len(pts), dtype=bool)
    for comp in contour.components:
        inside ^= Path(comp).contains_points(pts)
    return inside


def empirical_total_alpha(contour, sample, chunk=2_000_000):
    """Fraction of sample points outside the contour and its binomial standard error."""
    pts = sample.points if isinstance(sample, SampleSet) else np.asarray(sample, dtype=float)
    n = len(pts)
    outside = 0
    for s in range(0, n, chunk):
        outside += int((~inside_contour(contour, pts[s : s + chunk])).sum())
    p = outside / n
    return p, float(np.sqrt(p * (1.0 - p) / n))


def is_simple_polygon(points):
    """True when the closed polyline has no intersections between non-adjacent edges."""
    p = np.asarray(points, dtype=float)
    a = p
    b = np.roll(p, -1, axis=0)
    n = len(p)

    def orient(p, q, r):
        return np.sign((q[..., 0] - p[..., 0]) * (r[..., 1] - p[..., 1]) - (q[..., 1] - p[..., 1]) * (r[..., 0] - p[..., 0]))

    i, j = np.triu_indices(n, k=2)
    keep = ~((i == 0) & (j == n - 1))
    i, j = i[keep], j[keep]
    o1 = orient(a[i], b[i], a[j])
    o2 = orient(a[i], b[i], b[j])
    o3 = orient(a[j], b[j], a[i])
    o4 = orient(a[j], b[j], b[i])
    crossing = (o1 * o2 < 0) & (o3 * o4 < 0)
    return not bool(crossing.any())
