"""Response-level properties of the three worked examples (1e7-sample scale)."""

import pytest

from envcontours.response import (
    BimodalResponse,
    DirectionalEllipseResponse,
    SDOFResponse,
    failure_probability_mc,
    max_response_on_contour,
)

pytestmark = pytest.mark.slow

MC_SAMPLES = 10_000_000
MC_SEED = 7


def _setup(ctx, example):
    if example == "sdof":
        return ctx.sea_state_tp, SDOFResponse(), ctx.sea_state_contours, 14.51
    if example == "bimodal":
        return ctx.sea_state_tp, BimodalResponse(), ctx.sea_state_contours, 16.57
    return ctx.directional, DirectionalEllipseResponse(), ctx.directional_contours, 10.33


@pytest.mark.parametrize("example", ["sdof", "bimodal", "directional"])
def test_failure_probability_quadrature_matches_monte_carlo(ctx, example):
    model, fn, _, capacity = _setup(ctx, example)
    p_quad = ctx.integrator(model, fn).sf(capacity)
    p_mc, se = failure_probability_mc(model, fn, capacity, MC_SAMPLES, MC_SEED)
    assert abs(p_quad - p_mc) <= 3 * se, f"quadrature {p_quad:.4e}, MC {p_mc:.4e} +- {se:.1e}"


@pytest.mark.parametrize("example", ["sdof", "bimodal"])
def test_contour_response_ordering(ctx, example):
    _, fn, contours, _ = _setup(ctx, example)
    r = {k: max_response_on_contour(fn, c).value for k, c in contours.items()}
    assert r["DS"] < r["HD"] < r["ISORM"]
    assert r["IFORM"] <= r["DS"], f"IFORM {r['IFORM']:.4f} above DS {r['DS']:.4f} at the fixed seed"
