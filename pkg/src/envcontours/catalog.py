"""Registered joint models and small analytic toy models."""

import numpy as np

from .distributions import Mixture, Uniform, VonMises, Weibull3
from .joint import (
    AxisScaledModel,
    CartesianDirectionalModel,
    DependenceFunction,
    HierarchicalModel,
    NormalMixturePair,
)

TWO_PI = 2.0 * np.pi

# Zero-crossing to peak period conversion used by the sea-state response examples.
PEAK_PERIOD_FACTOR = 1.2796

SEA_STATE_WEIBULL = {"scale": 2.776, "shape": 1.471, "location": 0.8888}

DIRECTION_MIXTURE = {
    "weights": (0.21, 0.79),
    "locations": (2.10, 5.54),
    "concentrations": (0.74, 13.11),
}

# (a0, a1..a8, b1..b8) and (c0, c1..c8, d1..d8)
DIRECTIONAL_SCALE_FOURIER = (
    1.875,
    0.345, -0.210, -0.160, -0.265, -0.090, 0.070, 0.030, 0.030,
    -0.140, -0.820, -0.200, 0.095, 0.110, 0.070, 0.020, -0.015,
)  # fmt: skip
DIRECTIONAL_SHAPE_FOURIER = (
    1.910,
    0.240, -0.080, -0.010, -0.110, 0.0004, 0.060, 0.060, 0.004,
    -0.130, -0.170, -0.030, 0.030, 0.003, 0.020, 0.020, -0.010,
)  # fmt: skip
DIRECTIONAL_LOCATION = 0.5

__all__ = [
    "REGISTERED_MODELS",
    "build_paper_model",
    "sea_state_model",
    "normal_mixture_model",
    "weibull_normal_model",
    "directional_model",
    "cartesian_directional_model",
    "weibull_independent_model",
    "uniform_direction_model",
    "weibull_upper_support",
]


def weibull_upper_support(scale, shape, location, residual=1e-16):
    """Upper numerical bound leaving ``residual`` exceedance mass."""
    return location + scale * np.log(1.0 / residual) ** (1.0 / shape)


def sea_state_model(shape=SEA_STATE_WEIBULL["shape"], peak_period=False, name="sea-state"):
    """Weibull significant wave height with conditional log-normal zero-crossing period.

    ``peak_period=True`` relabels the period axis as peak period,
    ``tp = 1.2796 tz``.
    """
    scale, loc = SEA_STATE_WEIBULL["scale"], SEA_STATE_WEIBULL["location"]
    base = HierarchicalModel(
        first=Weibull3(scale, shape, loc),
        conditional_family="lognormal",
        parameter_maps={
            "mu": DependenceFunction("power", (0.1, 1.489, 0.1901)),
            "sigma": DependenceFunction("exp-decay", (0.04, 0.1748, -0.2243)),
        },
        support=((loc, weibull_upper_support(scale, shape, loc)), (0.1, 40.0)),
        labels=("hs", "tz"),
        units=("m", "s"),
        name=name,
    )
    if not peak_period:
        return base
    return AxisScaledModel(base, (1.0, PEAK_PERIOD_FACTOR), labels=("hs", "tp"), name=f"{name}-tp")


def normal_mixture_model(offset=3.0):
    return NormalMixturePair(offset)


def weibull_normal_model():
    """Weibull(scale 1, shape 3) with ``X2 | X1 ~ N(x1, (0.1 + exp(-x1))**2)``."""
    return HierarchicalModel(
        first=Weibull3(1.0, 3.0, 0.0),
        conditional_family="normal",
        parameter_maps={
            "mean": DependenceFunction("affine", (0.0, 1.0)),
            "std": DependenceFunction("exp-affine", (0.1, -1.0)),
        },
        support=((0.0, weibull_upper_support(1.0, 3.0, 0.0)), (-8.0, 12.0)),
        labels=("x1", "x2"),
        name="weibull-normal",
    )


def directional_model(cut=0.0, hs_max=25.0):
    """Von Mises mixture direction with Fourier-parameterized conditional Weibull height."""
    mix = DIRECTION_MIXTURE
    first = Mixture(
        mix["weights"],
        tuple(VonMises(m, k, cut) for m, k in zip(mix["locations"], mix["concentrations"])),
    )
    return HierarchicalModel(
        first=first,
        conditional_family="weibull",
        parameter_maps={
            "scale": DependenceFunction("fourier", DIRECTIONAL_SCALE_FOURIER),
            "shape": DependenceFunction("fourier", DIRECTIONAL_SHAPE_FOURIER),
            "location": DIRECTIONAL_LOCATION,
        },
        support=((cut, cut + TWO_PI), (DIRECTIONAL_LOCATION, hs_max)),
        labels=("theta", "hs"),
        units=("rad", "m"),
        name="directional",
        circular_first=True,
    )


def cartesian_directional_model(tab_points=2001):
    return CartesianDirectionalModel(directional_model(), tab_points=tab_points)


def weibull_independent_model(shape=1.0, second="normal", scale=1.0, location=0.0):
    """Weibull first axis with an independent uniform[-3, 3] or standard normal second axis."""
    upper = weibull_upper_support(scale, shape, location)
    if second == "uniform":
        maps = {"lower": -3.0, "upper": 3.0}
        bounds = (-3.0, 3.0)
    elif second == "normal":
        maps = {"mean": 0.0, "std": 1.0}
        bounds = (-9.0, 9.0)
    else:
        raise ValueError(f"second axis must be 'uniform' or 'normal', got {second!r}")
    return HierarchicalModel(
        first=Weibull3(scale, shape, location),
        conditional_family=second,
        parameter_maps=maps,
        support=((location, upper), bounds),
        name=f"weibull-{second}-independent",
    )


def uniform_direction_model(scale=2.0, shape=1.5, location=0.5, hs_max=25.0):
    """Uniform direction with direction-independent Weibull height."""
    return HierarchicalModel(
        first=Uniform(0.0, TWO_PI),
        conditional_family="weibull",
        parameter_maps={"scale": scale, "shape": shape, "location": location},
        support=((0.0, TWO_PI), (location, hs_max)),
        labels=("theta", "hs"),
        units=("rad", "m"),
        name="uniform-direction",
        circular_first=True,
    )


REGISTERED_MODELS = {
    "normal-mixture": normal_mixture_model,
    "weibull-normal": weibull_normal_model,
    "sea-state": sea_state_model,
    "directional": directional_model,
}


def build_paper_model(name):
    """Return one of the registered models by name."""
    try:
        return REGISTERED_MODELS[name]()
    except KeyError:
        raise ValueError(f"unknown model {name!r}; choose from {sorted(REGISTERED_MODELS)}") from None
