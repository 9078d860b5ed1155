"""Exceedance semantics and the marginal/total probability relations.

A contour is defined either by a *marginal* exceedance probability (the
probability beyond a tangent half-space, as for IFORM and direct-sampling
contours) or by a *total* exceedance probability (the probability of
falling anywhere outside the contour, as for ISORM and highest-density
contours).  For Rosenblatt-based contours the two are linked through the
U-space radius alone.
"""

from dataclasses import dataclass

import numpy as np

from .stats import check_dof, check_probability, chi2_isf, chi2_sf, norm_isf, norm_sf

HOURS_PER_YEAR = 365.25 * 24.0
MARGINAL = "marginal"
TOTAL = "total"

__all__ = [
    "DegenerateContourError",
    "ExceedanceSpec",
    "alpha_from_return_period",
    "return_period_from_alpha",
    "iform_radius",
    "isorm_radius",
    "isorm_marginal_alpha",
    "iform_total_alpha",
    "MARGINAL",
    "TOTAL",
]


class DegenerateContourError(ValueError):
    """A marginal exceedance probability of 0.5 or more gives a non-positive radius."""


def alpha_from_return_period(return_period, state_duration):
    """Per-state exceedance probability of a ``return_period``-year event.

    ``state_duration`` is in hours.
    """
    if return_period <= 0 or state_duration <= 0:
        raise ValueError("return period and state duration must be positive")
    return state_duration / (return_period * HOURS_PER_YEAR)


def return_period_from_alpha(alpha, state_duration):
    """Return period in years of a per-state exceedance probability."""
    check_probability(alpha, name="alpha", open_lower=True)
    if state_duration <= 0:
        raise ValueError("state duration must be positive")
    return state_duration / (alpha * HOURS_PER_YEAR)


@dataclass(frozen=True)
class ExceedanceSpec:
    """Probability semantics of a contour: kind plus alpha (optionally from a return period)."""

    kind: str
    alpha: float
    return_period: float = None
    state_duration: float = None

    def __post_init__(self):
        if self.kind not in (MARGINAL, TOTAL):
            raise ValueError(f"exceedance kind must be 'marginal' or 'total', got {self.kind!r}")
        check_probability(self.alpha, name="alpha", open_lower=True, open_upper=True)
        if (self.return_period is None) != (self.state_duration is None):
            raise ValueError("return period and state duration must be given together")
        if self.return_period is not None:
            expected = alpha_from_return_period(self.return_period, self.state_duration)
            if abs(expected - self.alpha) > 1e-12 * max(1.0, expected):
                raise ValueError("alpha is inconsistent with the return period and state duration")

    @classmethod
    def from_return_period(cls, kind, return_period, state_duration):
        return cls(kind, alpha_from_return_period(return_period, state_duration), return_period, state_duration)

    @classmethod
    def marginal(cls, alpha):
        return cls(MARGINAL, alpha)

    @classmethod
    def total(cls, alpha):
        return cls(TOTAL, alpha)

    def to_dict(self):
        out = {"kind": self.kind, "alpha": self.alpha}
        if self.return_period is not None:
            out.update(return_period=self.return_period, state_duration=self.state_duration)
        return out


def iform_radius(alpha_m):
    """U-space radius whose tangent half-space carries probability ``alpha_m``."""
    alpha_m = check_probability(alpha_m, name="alpha_m", open_lower=True)
    if np.any(np.asarray(alpha_m) >= 0.5):
        raise DegenerateContourError("marginal alpha must be < 0.5 (the radius would be <= 0)")
    return norm_isf(alpha_m)


def isorm_radius(alpha_t, n=2):
    """U-space radius of the n-sphere with total outside probability ``alpha_t``."""
    alpha_t = check_probability(alpha_t, name="alpha_t", open_lower=True, open_upper=True)
    return np.sqrt(chi2_isf(n, alpha_t))


def isorm_marginal_alpha(alpha_t, n=2):
    """Marginal exceedance probability of the first variable's maximum on an ISORM contour."""
    return norm_sf(isorm_radius(alpha_t, check_dof(n)))


def iform_total_alpha(alpha_m, n=2):
    """Total probability outside an IFORM contour defined at marginal ``alpha_m``."""
    beta = iform_radius(alpha_m)
    return chi2_sf(check_dof(n), np.square(beta))
