"""Environmental contours: IFORM, ISORM, direct-sampling and highest-density methods.

Joint models of sea-state variables, Rosenblatt transforms, contour
construction, response maxima along contours, all-states long-term
response, and directional return values.
"""

from .catalog import (
    REGISTERED_MODELS,
    build_paper_model,
    cartesian_directional_model,
    directional_model,
    normal_mixture_model,
    sea_state_model,
    weibull_independent_model,
    weibull_normal_model,
)
from .contours import (
    Contour,
    contour_bounds,
    ds_contour,
    empirical_total_alpha,
    hd_contour,
    iform_contour,
    isorm_contour,
)
from .exceedance import (
    ExceedanceSpec,
    alpha_from_return_period,
    iform_radius,
    iform_total_alpha,
    isorm_marginal_alpha,
    isorm_radius,
    return_period_from_alpha,
)
from .response import (
    BimodalResponse,
    DirectionalEllipseResponse,
    LongTermIntegrator,
    SDOFResponse,
    failure_probability,
    max_response_on_contour,
    return_response,
)
from .sampling import SampleSet, sample

__all__ = [
    "REGISTERED_MODELS",
    "build_paper_model",
    "cartesian_directional_model",
    "directional_model",
    "normal_mixture_model",
    "sea_state_model",
    "weibull_independent_model",
    "weibull_normal_model",
    "Contour",
    "contour_bounds",
    "ds_contour",
    "empirical_total_alpha",
    "hd_contour",
    "iform_contour",
    "isorm_contour",
    "ExceedanceSpec",
    "alpha_from_return_period",
    "iform_radius",
    "iform_total_alpha",
    "isorm_marginal_alpha",
    "isorm_radius",
    "return_period_from_alpha",
    "BimodalResponse",
    "DirectionalEllipseResponse",
    "LongTermIntegrator",
    "SDOFResponse",
    "failure_probability",
    "max_response_on_contour",
    "return_response",
    "SampleSet",
    "sample",
]
