"""Univariate families used as marginals and conditionals of joint models.

All parameters broadcast: a conditional distribution evaluated at an array
of conditioning values is simply the same family built with array-valued
parameters.  Every family exposes ``pdf``, ``cdf``, ``sf``, ``ppf``, ``isf``
and ``rvs``; survival-side methods are computed directly so upper tails
keep their relative precision.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import special

from ._numeric import bisect_increasing
from .stats import check_probability

TWO_PI = 2.0 * np.pi

__all__ = [
    "Weibull3",
    "LogNormal",
    "Normal",
    "Uniform",
    "VonMises",
    "Mixture",
    "make_distribution",
    "FAMILY_PARAMETERS",
]


def _out(x):
    x = np.asarray(x, dtype=float)
    return x.item() if x.ndim == 0 else x


def _arr(x):
    return np.asarray(x, dtype=float)


class _Continuous:
    """Shared quantile/sampling helpers."""

    def ppf(self, p):
        p = _arr(check_probability(p, open_lower=True, open_upper=True))
        return _out(self._ppf(p))

    def isf(self, q):
        q = _arr(check_probability(q, name="q", open_lower=True, open_upper=True))
        return _out(self._isf(q))

    def median(self):
        return self.ppf(0.5)

    def rvs(self, rng, size):
        # Exceedance draws keep the upper tail resolved down to 2**-53.
        q = 1.0 - rng.random(size)
        return self._isf(q)


@dataclass(frozen=True)
class Weibull3(_Continuous):
    """Three-parameter Weibull with scale, shape and location (lower end point)."""

    scale: float
    shape: float
    location: float = 0.0

    def __post_init__(self):
        if np.any(_arr(self.scale) <= 0) or np.any(_arr(self.shape) <= 0):
            raise ValueError("Weibull scale and shape must be positive")

    @property
    def support(self):
        return (self.location, np.inf)

    def _z(self, x):
        z = (_arr(x) - self.location) / self.scale
        return np.maximum(z, 0.0), z < 0

    def pdf(self, x):
        z, below = self._z(x)
        k = _arr(self.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = k / self.scale * z ** (k - 1.0) * np.exp(-(z**k))
        val = np.where(below, 0.0, val)
        return _out(np.nan_to_num(val, nan=0.0, posinf=np.inf))

    def logpdf(self, x):
        z, below = self._z(x)
        k = _arr(self.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.log(k / self.scale) + (k - 1.0) * np.log(z) - z**k
        return _out(np.where(below, -np.inf, val))

    def cdf(self, x):
        z, _ = self._z(x)
        return _out(-np.expm1(-(z**self.shape)))

    def sf(self, x):
        z, _ = self._z(x)
        return _out(np.exp(-(z**self.shape)))

    def _ppf(self, p):
        return self.location + self.scale * (-np.log1p(-p)) ** (1.0 / _arr(self.shape))

    def _isf(self, q):
        return self.location + self.scale * (-np.log(q)) ** (1.0 / _arr(self.shape))


@dataclass(frozen=True)
class LogNormal(_Continuous):
    """Log-normal law: ``ln X ~ N(mu, sigma**2)``."""

    mu: float
    sigma: float

    def __post_init__(self):
        if np.any(_arr(self.sigma) <= 0):
            raise ValueError("log-normal sigma must be positive")

    @property
    def support(self):
        return (0.0, np.inf)

    def _std(self, x):
        x = _arr(x)
        with np.errstate(divide="ignore"):
            return (np.log(np.maximum(x, 0.0)) - self.mu) / self.sigma

    def pdf(self, x):
        x = _arr(x)
        s = self._std(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.exp(-0.5 * s * s) / (x * self.sigma * np.sqrt(TWO_PI))
        return _out(np.where(x > 0, val, 0.0))

    def logpdf(self, x):
        x = _arr(x)
        s = self._std(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = -0.5 * s * s - np.log(x * self.sigma) - 0.5 * np.log(TWO_PI)
        return _out(np.where(x > 0, val, -np.inf))

    def cdf(self, x):
        return _out(special.ndtr(self._std(x)))

    def sf(self, x):
        return _out(special.ndtr(-self._std(x)))

    def _ppf(self, p):
        return np.exp(self.mu + self.sigma * special.ndtri(p))

    def _isf(self, q):
        return np.exp(self.mu - self.sigma * special.ndtri(q))


@dataclass(frozen=True)
class Normal(_Continuous):
    mean: float = 0.0
    std: float = 1.0

    def __post_init__(self):
        if np.any(_arr(self.std) <= 0):
            raise ValueError("normal std must be positive")

    @property
    def support(self):
        return (-np.inf, np.inf)

    def pdf(self, x):
        s = (_arr(x) - self.mean) / self.std
        return _out(np.exp(-0.5 * s * s) / (self.std * np.sqrt(TWO_PI)))

    def logpdf(self, x):
        s = (_arr(x) - self.mean) / self.std
        return _out(-0.5 * s * s - np.log(self.std) - 0.5 * np.log(TWO_PI))

    def cdf(self, x):
        return _out(special.ndtr((_arr(x) - self.mean) / self.std))

    def sf(self, x):
        return _out(special.ndtr((self.mean - _arr(x)) / self.std))

    def _ppf(self, p):
        return self.mean + self.std * special.ndtri(p)

    def _isf(self, q):
        return self.mean - self.std * special.ndtri(q)


@dataclass(frozen=True)
class Uniform(_Continuous):
    lower: float = 0.0
    upper: float = 1.0

    def __post_init__(self):
        if np.any(_arr(self.upper) <= _arr(self.lower)):
            raise ValueError("uniform upper bound must exceed the lower bound")

    @property
    def support(self):
        return (self.lower, self.upper)

    def pdf(self, x):
        x = _arr(x)
        inside = (x >= self.lower) & (x <= self.upper)
        return _out(np.where(inside, 1.0 / (_arr(self.upper) - self.lower), 0.0))

    def logpdf(self, x):
        with np.errstate(divide="ignore"):
            return _out(np.log(self.pdf(x)))

    def cdf(self, x):
        t = (_arr(x) - self.lower) / (_arr(self.upper) - self.lower)
        return _out(np.clip(t, 0.0, 1.0))

    def sf(self, x):
        t = (_arr(self.upper) - _arr(x)) / (_arr(self.upper) - self.lower)
        return _out(np.clip(t, 0.0, 1.0))

    def _ppf(self, p):
        return self.lower + p * (_arr(self.upper) - self.lower)

    def _isf(self, q):
        return self.upper - q * (_arr(self.upper) - self.lower)


@dataclass(frozen=True)
class VonMises(_Continuous):
    """Von Mises law on the circle (radians).

    The density is periodic.  The CDF is measured counter-clockwise from
    ``cut`` so that it runs from 0 to 1 over ``[cut, cut + 2*pi)``; angles
    are reduced into that window first.
    """

    location: float
    concentration: float
    cut: float = 0.0

    def __post_init__(self):
        if np.any(_arr(self.concentration) < 0):
            raise ValueError("von Mises concentration must be >= 0")

    @property
    def support(self):
        return (self.cut, self.cut + TWO_PI)

    def reduce(self, theta):
        return self.cut + np.mod(_arr(theta) - self.cut, TWO_PI)

    def pdf(self, theta):
        k = _arr(self.concentration)
        # i0e(k) = exp(-k) I0(k), keeps large concentrations finite
        val = np.exp(k * (np.cos(_arr(theta) - self.location) - 1.0)) / (TWO_PI * special.i0e(k))
        return _out(val)

    def logpdf(self, theta):
        return _out(np.log(self.pdf(theta)))

    def _harmonic_ratios(self):
        k = float(np.max(self.concentration))
        if k == 0.0:
            return np.zeros(0)
        orders = np.arange(1, 4000)
        rho = special.ive(orders, k) / special.ive(0, k)
        keep = rho > 1e-18
        return rho[: int(np.argmin(keep)) if not keep.all() else len(rho)]

    def cdf(self, theta):
        return _out(self._window_cdf(self.reduce(theta)))

    def _window_cdf(self, t):
        # t already inside [cut, cut + 2*pi]
        if np.ndim(self.concentration) or np.ndim(self.location):
            raise NotImplementedError("von Mises CDF needs scalar parameters")
        t = _arr(t)
        rho = self._harmonic_ratios()
        p = np.arange(1, len(rho) + 1)
        series = np.zeros_like(t)
        if len(rho):
            ang = np.multiply.outer(t - self.location, p)
            ang0 = (self.cut - self.location) * p
            series = ((np.sin(ang) - np.sin(ang0)) * (rho / p)).sum(axis=-1)
        val = (t - self.cut) / TWO_PI + series / np.pi
        return np.clip(val, 0.0, 1.0)

    def sf(self, theta):
        return _out(1.0 - _arr(self.cdf(theta)))

    def _ppf(self, p):
        return bisect_increasing(self._window_cdf, p, self.cut, self.cut + TWO_PI, xtol=1e-14)

    def _isf(self, q):
        return self._ppf(1.0 - q)

    def rvs(self, rng, size):
        return self.reduce(rng.vonmises(self.location, self.concentration, size))


@dataclass(frozen=True)
class Mixture(_Continuous):
    """Finite mixture ``sum_i w_i F_i`` of univariate distributions."""

    weights: tuple
    components: tuple = field(default=())

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if len(w) != len(self.components) or len(w) == 0:
            raise ValueError("mixture needs one weight per component")
        if np.any(w <= 0) or np.any(w > 1):
            raise ValueError("mixture weights must lie in (0, 1]")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"mixture weights must sum to 1, got {w.sum()!r}")

    @property
    def support(self):
        lows = [c.support[0] for c in self.components]
        highs = [c.support[1] for c in self.components]
        return (min(lows), max(highs))

    def _sum(self, method, x):
        return _out(sum(w * _arr(getattr(c, method)(x)) for w, c in zip(self.weights, self.components)))

    def pdf(self, x):
        return self._sum("pdf", x)

    def logpdf(self, x):
        with np.errstate(divide="ignore"):
            return _out(np.log(self.pdf(x)))

    def cdf(self, x):
        return self._sum("cdf", x)

    def sf(self, x):
        return self._sum("sf", x)

    def _bracket(self, p):
        qs = np.array([_arr(c._ppf(p)) for c in self.components])
        return qs.min(axis=0), qs.max(axis=0)

    def _ppf(self, p):
        if len(self.components) == 1:
            return self.components[0]._ppf(p)
        lo, hi = self._bracket(p)
        return bisect_increasing(lambda x: _arr(self.cdf(x)), p, lo, hi, xtol=1e-14)

    def _isf(self, q):
        if len(self.components) == 1:
            return self.components[0]._isf(q)
        qs = np.array([_arr(c._isf(q)) for c in self.components])
        neg_sf = lambda x: -_arr(self.sf(x))  # noqa: E731
        return bisect_increasing(neg_sf, -q, qs.min(axis=0), qs.max(axis=0), xtol=1e-14)

    def rvs(self, rng, size):
        which = rng.choice(len(self.components), size=size, p=np.asarray(self.weights))
        out = np.empty(size)
        for i, comp in enumerate(self.components):
            sel = which == i
            out[sel] = comp.rvs(rng, int(sel.sum()))
        return out


FAMILY_PARAMETERS = {
    "weibull": ("scale", "shape", "location"),
    "lognormal": ("mu", "sigma"),
    "normal": ("mean", "std"),
    "uniform": ("lower", "upper"),
    "vonmises": ("location", "concentration"),
}

_FAMILIES = {
    "weibull": Weibull3,
    "lognormal": LogNormal,
    "normal": Normal,
    "uniform": Uniform,
    "vonmises": VonMises,
}


def make_distribution(family, **params):
    """Build a family by name with keyword parameters (possibly array-valued)."""
    try:
        cls = _FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown distribution family {family!r}") from None
    return cls(**params)
