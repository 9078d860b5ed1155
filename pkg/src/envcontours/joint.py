"""Two-dimensional joint environmental models and Rosenblatt transforms.

A model is a density over two named axes plus, for every conditioning
order, a *chain*: the marginal of the first variable and the conditional
law of the second given the first.  Chains map states to U-space (standard
normal scores) and back.  Hierarchical models get an analytic chain in
their natural order; any other order is tabulated numerically from the
density on a grid.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import integrate, special

from ._numeric import ConvergenceError, bisect_increasing
from .distributions import (
    FAMILY_PARAMETERS,
    Mixture,
    Normal,
    VonMises,
    make_distribution,
)

TWO_PI = 2.0 * np.pi
NATURAL = (0, 1)
REVERSED = (1, 0)

__all__ = [
    "OutOfSupportError",
    "DependenceFunction",
    "JointModel",
    "HierarchicalModel",
    "NormalMixturePair",
    "CartesianDirectionalModel",
    "AxisScaledModel",
    "AnalyticChain",
    "TabulatedChain",
    "parse_order",
    "NATURAL",
    "REVERSED",
]


class OutOfSupportError(ValueError):
    """A state maps to a CDF value of exactly 0 or 1 (an infinite normal score)."""


def parse_order(order):
    """Normalize a Rosenblatt order to a permutation tuple ``(first, second)``.

    Accepts ``(0, 1)``/``(1, 0)`` or the strings ``"x1-first"``/``"x2-first"``
    (also ``"12"``/``"21"``).
    """
    if isinstance(order, str):
        key = order.lower().replace("_", "-")
        table = {"x1-first": NATURAL, "12": NATURAL, "x2-first": REVERSED, "21": REVERSED}
        if key not in table:
            raise ValueError(f"unknown Rosenblatt order {order!r}")
        return table[key]
    order = tuple(int(i) for i in order)
    if sorted(order) != [0, 1]:
        raise ValueError(f"Rosenblatt order must be a permutation of (0, 1), got {order!r}")
    return order


def _normal_score(cdf, sf):
    cdf = np.asarray(cdf, dtype=float)
    sf = np.asarray(sf, dtype=float)
    return np.where(cdf < 0.5, special.ndtri(cdf), -special.ndtri(sf))


def _check_finite_scores(u, what):
    if not np.all(np.isfinite(u)):
        raise OutOfSupportError(f"{what} lies at or beyond the edge of the support (CDF of 0 or 1)")
    return u


_DEPENDENCE_ARITY = {
    "constant": 1,
    "affine": 2,
    "power": 3,
    "exp-decay": 3,
    "exp-affine": 2,
}


@dataclass(frozen=True)
class DependenceFunction:
    """Parametric map from the conditioning variable to a distribution parameter.

    Forms and coefficient layouts:

    ========== =====================================
    constant   ``c``
    affine     ``a1 + a2*x``
    power      ``a + b*x**c``
    exp-decay  ``a + b*exp(c*x)``
    exp-affine ``b1 + exp(b2*x)``
    fourier    ``a0 + sum_j a_j cos(j x) + b_j sin(j x)``;
               coefficients ``(a0, a1..am, b1..bm)``
    ========== =====================================
    """

    form: str
    coefficients: tuple

    def __post_init__(self):
        coef = tuple(float(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coef)
        if self.form == "fourier":
            if len(coef) % 2 != 1:
                raise ValueError("fourier coefficients must be (a0, a1..am, b1..bm)")
        elif self.form in _DEPENDENCE_ARITY:
            if len(coef) != _DEPENDENCE_ARITY[self.form]:
                raise ValueError(
                    f"{self.form} dependence takes {_DEPENDENCE_ARITY[self.form]} coefficients, got {len(coef)}"
                )
        else:
            raise ValueError(f"unknown dependence form {self.form!r}")

    @classmethod
    def constant(cls, value):
        return cls("constant", (value,))

    @property
    def order(self):
        """Number of harmonics of a Fourier form."""
        return (len(self.coefficients) - 1) // 2

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        c = self.coefficients
        if self.form == "constant":
            return np.full_like(x, c[0])
        if self.form == "affine":
            return c[0] + c[1] * x
        if self.form == "power":
            return c[0] + c[1] * np.power(np.maximum(x, 0.0), c[2])
        if self.form == "exp-decay":
            return c[0] + c[1] * np.exp(c[2] * x)
        if self.form == "exp-affine":
            return c[0] + np.exp(c[1] * x)
        m = self.order
        j = np.arange(1, m + 1)
        ang = np.multiply.outer(x, j)
        return c[0] + np.cos(ang) @ np.asarray(c[1 : m + 1]) + np.sin(ang) @ np.asarray(c[m + 1 :])


class AnalyticChain:
    """Rosenblatt chain from a marginal and a conditional-distribution factory."""

    def __init__(self, first, conditional):
        self.first = first
        self.conditional = conditional

    def first_cdf(self, x):
        return np.asarray(self.first.cdf(x), dtype=float)

    def cond_cdf(self, y, x):
        return np.asarray(self.conditional(x).cdf(y), dtype=float)

    def to_u1(self, x):
        u = _normal_score(self.first.cdf(x), self.first.sf(x))
        return _check_finite_scores(u, "first variable")

    def to_u2(self, y, x):
        dist = self.conditional(x)
        u = _normal_score(dist.cdf(y), dist.sf(y))
        return _check_finite_scores(u, "second variable")

    @staticmethod
    def _invert(dist, u):
        u = np.asarray(u, dtype=float)
        p = special.ndtr(-np.abs(u))
        if np.any(p == 0.0):
            raise OutOfSupportError("normal score too large to invert in double precision")
        lower = np.asarray(dist.ppf(p), dtype=float)
        upper = np.asarray(dist.isf(p), dtype=float)
        x = np.where(u < 0, lower, upper)
        if not np.all(np.isfinite(x)):
            raise ConvergenceError("quantile inversion returned a non-finite state")
        return x

    def from_u1(self, u):
        return self._invert(self.first, u)

    def from_u2(self, u, x):
        u, x = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(x, dtype=float))
        return self._invert(self.conditional(x), u)


def _monotone_table(grid, scores):
    keep = np.isfinite(scores)
    g, z = grid[keep], scores[keep]
    if len(z) < 2:
        raise ConvergenceError("tabulated distribution has fewer than two resolvable nodes")
    # Zero-density stretches repeat a score; keep the first node of each run.
    strict = np.concatenate(([True], np.diff(z) > 0))
    return g[strict], z[strict]


def _table_from_density(grid, dens):
    """Normal-score table of the distribution with density ``dens`` on ``grid``."""
    cell = 0.5 * (dens[..., 1:] + dens[..., :-1]) * np.diff(grid)
    lower = np.concatenate((np.zeros(cell.shape[:-1] + (1,)), np.cumsum(cell, axis=-1)), axis=-1)
    upper = np.concatenate(
        (np.cumsum(cell[..., ::-1], axis=-1)[..., ::-1], np.zeros(cell.shape[:-1] + (1,))), axis=-1
    )
    total = lower[..., -1:]
    if np.any(total <= 0):
        raise ConvergenceError("density integrates to zero along a tabulation line")
    with np.errstate(divide="ignore"):
        return _normal_score(lower / total, upper / total)


def _refined_grid(grid, dens, edge_nodes=64):
    """Re-space ``grid`` over the stretch where ``dens`` is positive, graded towards both ends.

    Conditionals squeezed against a support edge would otherwise get only a
    handful of nodes and a truncated normal-score range.
    """
    pos = np.flatnonzero(dens > 0)
    if pos.size == 0:
        return grid
    a = grid[max(pos[0] - 1, 0)]
    b = grid[min(pos[-1] + 1, len(grid) - 1)]
    span = b - a
    edge = np.geomspace(1e-10 * span, span / (len(grid) - 1), edge_nodes)
    return np.unique(np.concatenate((np.linspace(a, b, len(grid)), a + edge, b - edge)))


class TabulatedChain:
    """Rosenblatt chain built numerically from a joint density.

    The marginal of the first variable is tabulated once on a grid (the
    density integrated along the second axis by the trapezoid rule).  The
    conditional of the second variable is re-tabulated at each requested
    conditioning value.  Both are stored as normal-score tables and mapped by
    piecewise-linear interpolation, so forward and inverse transforms are
    exact inverses of each other.
    """

    def __init__(self, model, order, n_first=2001, n_second=2001):
        self.model = model
        self.order = parse_order(order)
        (lo_i, hi_i) = model.support[self.order[0]]
        (lo_j, hi_j) = model.support[self.order[1]]
        self.grid_first = np.linspace(lo_i, hi_i, n_first)
        self.grid_second = np.linspace(lo_j, hi_j, n_second)

    def _pdf(self, xf, xs):
        if self.order == NATURAL:
            return self.model.pdf(xf, xs)
        return self.model.pdf(xs, xf)

    @cached_property
    def _first_table(self):
        dens = np.empty(len(self.grid_first))
        step = 256
        for start in range(0, len(self.grid_first), step):
            xf = self.grid_first[start : start + step, None]
            d = self._pdf(xf, self.grid_second[None, :])
            dens[start : start + step] = integrate.trapezoid(d, self.grid_second, axis=1)
        return _monotone_table(self.grid_first, _table_from_density(self.grid_first, dens))

    def first_cdf(self, x):
        g, z = self._first_table
        x = np.asarray(x, dtype=float)
        val = special.ndtr(np.interp(x, g, z))
        return np.where(x < g[0], 0.0, np.where(x > g[-1], 1.0, val))

    def to_u1(self, x):
        g, z = self._first_table
        x = np.asarray(x, dtype=float)
        if np.any(x < g[0]) or np.any(x > g[-1]):
            raise OutOfSupportError("first variable outside the tabulated support")
        return np.interp(x, g, z)

    def from_u1(self, u):
        g, z = self._first_table
        u = np.asarray(u, dtype=float)
        if np.any(u < z[0]) or np.any(u > z[-1]):
            raise OutOfSupportError(f"normal score beyond the tabulated range [{z[0]:.3f}, {z[-1]:.3f}]")
        return np.interp(u, z, g)

    def _conditional_tables(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        coarse = self._pdf(x[:, None], self.grid_second[None, :])
        tables = []
        for xi, row in zip(x, coarse):
            grid = _refined_grid(self.grid_second, row)
            dens = self._pdf(np.full(grid.shape, xi), grid)
            tables.append(_monotone_table(grid, _table_from_density(grid, dens)))
        return tables

    def cond_cdf(self, y, x):
        y, x = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(x, dtype=float))
        out = np.empty(y.shape)
        for idx, (g, z) in zip(np.ndindex(y.shape), self._conditional_tables(x.ravel())):
            v = y[idx]
            out[idx] = 0.0 if v < g[0] else 1.0 if v > g[-1] else special.ndtr(np.interp(v, g, z))
        return out

    def to_u2(self, y, x):
        y, x = np.broadcast_arrays(np.asarray(y, dtype=float), np.asarray(x, dtype=float))
        out = np.empty(y.shape)
        for idx, (g, z) in zip(np.ndindex(y.shape), self._conditional_tables(x.ravel())):
            if not g[0] <= y[idx] <= g[-1]:
                raise OutOfSupportError("second variable outside the tabulated support")
            out[idx] = np.interp(y[idx], g, z)
        return out

    def from_u2(self, u, x):
        u, x = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(x, dtype=float))
        out = np.empty(u.shape)
        for idx, (g, z) in zip(np.ndindex(u.shape), self._conditional_tables(x.ravel())):
            if not z[0] <= u[idx] <= z[-1]:
                raise OutOfSupportError(
                    f"normal score {u[idx]:.3f} beyond the tabulated conditional range [{z[0]:.3f}, {z[-1]:.3f}]"
                )
            out[idx] = np.interp(u[idx], z, g)
        return out


@dataclass(frozen=True)
class NativeDomain:
    """Coordinates in which a model's density is smooth, for 2-D quadrature.

    ``pdf(a, b)`` is the density in native coordinates and ``to_state(a, b)``
    maps native coordinates to model states.  ``cell_mass(e1, e2)``, when
    present, gives the probability of each rectangle of the edge grid.
    """

    bounds: tuple
    pdf: object
    to_state: object
    periodic_first: bool = False
    cell_mass: object = None


class JointModel:
    """Base class: density, support, chains, and the Rosenblatt transform."""

    name = "model"
    labels = ("x1", "x2")
    units = ("", "")
    support = ((-np.inf, np.inf), (-np.inf, np.inf))

    def pdf(self, x1, x2):
        raise NotImplementedError

    def _make_chain(self, order):
        return TabulatedChain(self, order)

    @cached_property
    def _chains(self):
        return {}

    def chain(self, order=NATURAL):
        order = parse_order(order)
        if order not in self._chains:
            self._chains[order] = self._make_chain(order)
        return self._chains[order]

    def in_support(self, x1, x2):
        (a, b), (c, d) = self.support
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        return (x1 >= a) & (x1 <= b) & (x2 >= c) & (x2 <= d)

    def rosenblatt(self, x, order=NATURAL):
        """Map states ``x[..., 2]`` (model axis order) to U-space.

        ``u[..., 0]`` is the score of the conditioning (first) variable of
        ``order`` and ``u[..., 1]`` the conditional score of the other.
        """
        order = parse_order(order)
        x = np.asarray(x, dtype=float)
        ch = self.chain(order)
        xf, xs = x[..., order[0]], x[..., order[1]]
        return np.stack([ch.to_u1(xf), ch.to_u2(xs, xf)], axis=-1)

    def inverse_rosenblatt(self, u, order=NATURAL):
        order = parse_order(order)
        u = np.asarray(u, dtype=float)
        if not np.all(np.isfinite(u)):
            raise ValueError("U-space points must be finite")
        ch = self.chain(order)
        xf = ch.from_u1(u[..., 0])
        xs = ch.from_u2(u[..., 1], xf)
        x = np.empty(u.shape)
        x[..., order[0]] = xf
        x[..., order[1]] = xs
        return x

    def marginal_cdf(self, axis, x):
        """CDF of one axis, from the chain that conditions on that axis."""
        return self.chain((axis, 1 - axis)).first_cdf(x)

    def conditional_cdf(self, x2, given, order=NATURAL):
        order = parse_order(order)
        lo, hi = self.support[order[0]]
        g = np.asarray(given, dtype=float)
        if np.any(g < lo) or np.any(g > hi):
            raise ValueError(f"conditioning value outside the support [{lo}, {hi}]")
        return self.chain(order).cond_cdf(x2, given)

    def native_domain(self):
        return NativeDomain(self.support, self.pdf, lambda a, b: (a, b))

    def sample_block(self, rng, n):
        raise NotImplementedError


def _conditional_factory(family, parameter_maps):
    names = FAMILY_PARAMETERS[family]
    missing = set(names) - set(parameter_maps)
    if family == "weibull":
        missing.discard("location")
    if missing or set(parameter_maps) - set(names):
        raise ValueError(
            f"{family} conditional needs parameters {names}, got {tuple(parameter_maps)}"
        )
    maps = {k: v if isinstance(v, DependenceFunction) else DependenceFunction.constant(v) for k, v in parameter_maps.items()}

    def factory(x):
        return make_distribution(family, **{k: f(x) for k, f in maps.items()})

    return factory, maps


class HierarchicalModel(JointModel):
    """``f(x1, x2) = f1(x1) * f(x2 | x1)`` with parametric dependence functions.

    Parameters
    ----------
    first : distribution
        Marginal law of the first axis.
    conditional_family : str
        Family name of ``X2 | X1`` (see ``FAMILY_PARAMETERS``).
    parameter_maps : dict
        Each conditional parameter as a ``DependenceFunction`` (or a constant).
    support : ((lo1, hi1), (lo2, hi2))
        Rectangle used for numerics; the density is zero outside it.
    circular_first : bool
        Treat the first axis as an angle; states are reduced into
        ``[lo1, lo1 + 2*pi)`` before evaluation.
    """

    def __init__(
        self,
        first,
        conditional_family,
        parameter_maps,
        support,
        labels=("x1", "x2"),
        units=("", ""),
        name="hierarchical",
        circular_first=False,
        validation_points=513,
    ):
        self.first = first
        self.conditional_family = conditional_family
        self._factory, self.parameter_maps = _conditional_factory(conditional_family, parameter_maps)
        self.support = tuple(tuple(float(v) for v in s) for s in support)
        self.labels = tuple(labels)
        self.units = tuple(units)
        self.name = name
        self.circular_first = circular_first
        lo, hi = self.support[0]
        check = np.linspace(lo, hi, validation_points)
        try:
            self._factory(check)
        except ValueError as exc:
            raise ValueError(f"dependence functions give invalid conditional parameters on the support: {exc}") from None

    def conditional(self, x1):
        return self._factory(np.asarray(x1, dtype=float))

    def _reduce_first(self, x1):
        x1 = np.asarray(x1, dtype=float)
        if self.circular_first:
            lo = self.support[0][0]
            return lo + np.mod(x1 - lo, TWO_PI)
        return x1

    def pdf(self, x1, x2):
        x1 = self._reduce_first(x1)
        x1, x2 = np.broadcast_arrays(x1, np.asarray(x2, dtype=float))
        inside = self.in_support(x1, x2)
        with np.errstate(all="ignore"):
            val = np.asarray(self.first.pdf(x1)) * np.asarray(self.conditional(x1).pdf(x2))
        return np.where(inside, np.nan_to_num(val, nan=0.0), 0.0)

    def _make_chain(self, order):
        if order == NATURAL:
            return AnalyticChain(self.first, self.conditional)
        return TabulatedChain(self, order)

    def rosenblatt(self, x, order=NATURAL):
        x = np.array(x, dtype=float)
        x[..., 0] = self._reduce_first(x[..., 0])
        return super().rosenblatt(x, order)

    def reversed_marginal_cdf(self, x2, epsabs=1e-10):
        """CDF of the conditioned variable, ``int f1(t) F(x2 | t) dt``, by adaptive quadrature."""
        lo, hi = self.support[0]
        x2 = np.atleast_1d(np.asarray(x2, dtype=float))

        def one(v):
            integrand = lambda t: float(self.first.pdf(t) * self.conditional(t).cdf(v))  # noqa: E731
            val, _ = integrate.quad(integrand, lo, hi, epsabs=epsabs, epsrel=1e-10, limit=500)
            return val

        out = np.array([one(v) for v in x2])
        return out if out.size > 1 else out[0]

    def native_domain(self):
        return NativeDomain(self.support, self.pdf, lambda a, b: (a, b), self.circular_first, self._cell_mass)

    def _cell_mass(self, e1, e2):
        """First-axis CDF increments times conditional CDF increments at the cell midpoints."""
        e1 = np.asarray(e1, dtype=float)
        lo, hi = self.support[0]
        c1 = np.asarray(self.first.cdf(e1), dtype=float)
        # Edges on the support limits: circular CDFs wrap at the upper limit
        c1 = np.where(e1 <= lo, 0.0, np.where(e1 >= hi, 1.0, c1))
        mid = 0.5 * (e1[1:] + e1[:-1])
        c2 = np.asarray(self.conditional(mid[:, None]).cdf(np.asarray(e2, dtype=float)[None, :]), dtype=float)
        return np.diff(c1)[:, None] * np.diff(c2, axis=1)

    def sample_block(self, rng, n):
        x1 = np.asarray(self.first.rvs(rng, n), dtype=float)
        x2 = np.asarray(self.conditional(x1).rvs(rng, n), dtype=float)
        return np.column_stack([x1, x2])


class _TwoNormalConditional:
    """``X2 | X1`` for the symmetric two-normal mixture (component means +-a)."""

    def __init__(self, x1, a):
        self.a = a
        # posterior weight of the (+a, +a) component
        self.w = special.expit(2.0 * a * np.asarray(x1, dtype=float))

    def cdf(self, y):
        y = np.asarray(y, dtype=float)
        return self.w * special.ndtr(y - self.a) + (1 - self.w) * special.ndtr(y + self.a)

    def sf(self, y):
        y = np.asarray(y, dtype=float)
        return self.w * special.ndtr(self.a - y) + (1 - self.w) * special.ndtr(-y - self.a)

    def pdf(self, y):
        y = np.asarray(y, dtype=float)
        return (self.w * np.exp(-0.5 * (y - self.a) ** 2) + (1 - self.w) * np.exp(-0.5 * (y + self.a) ** 2)) / np.sqrt(TWO_PI)

    def ppf(self, p):
        p = np.asarray(p, dtype=float)
        lo = special.ndtri(p) - self.a
        hi = special.ndtri(p) + self.a
        return bisect_increasing(self.cdf, p, lo, hi, xtol=1e-14)

    def isf(self, q):
        q = np.asarray(q, dtype=float)
        lo = -special.ndtri(q) - self.a
        hi = -special.ndtri(q) + self.a
        return bisect_increasing(lambda y: -self.sf(y), -q, lo, hi, xtol=1e-14)


class NormalMixturePair(JointModel):
    """Equal mixture of two unit bivariate normals centred at ``+-(a, a)``."""

    def __init__(self, offset=3.0, half_width=None, name="normal-mixture"):
        self.offset = float(offset)
        w = float(half_width) if half_width is not None else self.offset + 9.0
        self.support = ((-w, w), (-w, w))
        self.labels = ("x1", "x2")
        self.units = ("", "")
        self.name = name
        a = self.offset
        self.marginal = Mixture((0.5, 0.5), (Normal(a, 1.0), Normal(-a, 1.0)))

    def pdf(self, x1, x2):
        x1 = np.asarray(x1, dtype=float)
        x2 = np.asarray(x2, dtype=float)
        a = self.offset
        q1 = (x1 - a) ** 2 + (x2 - a) ** 2
        q2 = (x1 + a) ** 2 + (x2 + a) ** 2
        return 0.5 * (np.exp(-0.5 * q1) + np.exp(-0.5 * q2)) / TWO_PI

    def _make_chain(self, order):
        # Symmetric in (x1, x2): both orders share the same formulas.
        return AnalyticChain(self.marginal, lambda x: _TwoNormalConditional(x, self.offset))

    def sample_block(self, rng, n):
        sign = np.where(rng.random(n) < 0.5, 1.0, -1.0)
        z = rng.standard_normal((n, 2))
        return z + self.offset * sign[:, None]


class CartesianDirectionalModel(JointModel):
    """Directional model re-expressed in x/y components of the radial variable.

    ``base`` is a model over ``(theta, r)`` with a circular first axis; the
    density here is ``f(theta, r) / r`` at ``r = hypot(x, y)``,
    ``theta = atan2(y, x)``.
    """

    def __init__(self, base, labels=("hx", "hy"), name=None, tab_points=2001):
        self.base = base
        r_hi = base.support[1][1]
        self.support = ((-r_hi, r_hi), (-r_hi, r_hi))
        self.labels = tuple(labels)
        self.units = (base.units[1], base.units[1])
        self.name = name or f"cartesian({base.name})"
        self.tab_points = tab_points

    def pdf(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        r = np.hypot(x, y)
        theta = np.arctan2(y, x)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = self.base.pdf(theta, r) / r
        return np.where(r > 0, np.nan_to_num(val, nan=0.0), 0.0)

    def _make_chain(self, order):
        return TabulatedChain(self, order, self.tab_points, self.tab_points)

    def native_domain(self):
        b = self.base.native_domain()

        def to_state(theta, r):
            t, rr = b.to_state(theta, r)
            return rr * np.cos(t), rr * np.sin(t)

        return NativeDomain(b.bounds, b.pdf, to_state, periodic_first=True, cell_mass=b.cell_mass)

    def sample_block(self, rng, n):
        pol = self.base.sample_block(rng, n)
        return np.column_stack([pol[:, 1] * np.cos(pol[:, 0]), pol[:, 1] * np.sin(pol[:, 0])])


class _ScaledChain:
    def __init__(self, chain, s_first, s_second):
        self.c, self.sf_, self.ss = chain, s_first, s_second

    def first_cdf(self, x):
        return self.c.first_cdf(np.asarray(x) / self.sf_)

    def cond_cdf(self, y, x):
        return self.c.cond_cdf(np.asarray(y) / self.ss, np.asarray(x) / self.sf_)

    def to_u1(self, x):
        return self.c.to_u1(np.asarray(x) / self.sf_)

    def to_u2(self, y, x):
        return self.c.to_u2(np.asarray(y) / self.ss, np.asarray(x) / self.sf_)

    def from_u1(self, u):
        return self.c.from_u1(u) * self.sf_

    def from_u2(self, u, x):
        return self.c.from_u2(u, np.asarray(x) / self.sf_) * self.ss


class AxisScaledModel(JointModel):
    """Relabel axes by fixed positive factors, e.g. peak period = 1.2796 x zero-crossing period."""

    def __init__(self, base, factors=(1.0, 1.0), labels=None, units=None, name=None):
        if min(factors) <= 0:
            raise ValueError("axis scale factors must be positive")
        self.base = base
        self.factors = tuple(float(f) for f in factors)
        self.support = tuple(
            (lo * f, hi * f) for (lo, hi), f in zip(base.support, self.factors)
        )
        self.labels = tuple(labels) if labels else base.labels
        self.units = tuple(units) if units else base.units
        self.name = name or base.name

    def pdf(self, x1, x2):
        s1, s2 = self.factors
        return self.base.pdf(np.asarray(x1) / s1, np.asarray(x2) / s2) / (s1 * s2)

    def _make_chain(self, order):
        return _ScaledChain(self.base.chain(order), self.factors[order[0]], self.factors[order[1]])

    def reversed_marginal_cdf(self, x2):
        return self.base.reversed_marginal_cdf(np.asarray(x2) / self.factors[1])

    def native_domain(self):
        b = self.base.native_domain()
        s1, s2 = self.factors

        def to_state(a, c):
            x1, x2 = b.to_state(a, c)
            return x1 * s1, x2 * s2

        return NativeDomain(b.bounds, b.pdf, to_state, b.periodic_first, b.cell_mass)

    def sample_block(self, rng, n):
        return self.base.sample_block(rng, n) * np.asarray(self.factors)


def is_circular(dist):
    if isinstance(dist, VonMises):
        return True
    return isinstance(dist, Mixture) and all(isinstance(c, VonMises) for c in dist.components)
