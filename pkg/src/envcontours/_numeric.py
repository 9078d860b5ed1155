"""Vectorized root finding shared by quantile inversions."""

import numpy as np


class ConvergenceError(RuntimeError):
    """Raised when an iterative solver fails to meet its tolerance."""


def bisect_increasing(func, target, lo, hi, *, xtol=1e-12, ftol=0.0, maxiter=200):
    """Solve ``func(x) = target`` elementwise for a non-decreasing ``func``.

    ``lo`` and ``hi`` must bracket the solution (``func(lo) <= target <=
    func(hi)``); they broadcast against ``target``.  Bisection stops once the
    bracket is narrower than ``xtol`` (relative to its magnitude) or every
    residual is at most ``ftol``.
    """
    target = np.asarray(target, dtype=float)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), target.shape).copy()
    hi = np.broadcast_to(np.asarray(hi, dtype=float), target.shape).copy()
    slack = 1e-12 + 1e-9 * np.abs(target)
    if np.any(func(lo) > target + slack) or np.any(func(hi) < target - slack):
        raise ConvergenceError("bisection bracket does not contain the root")
    for _ in range(maxiter):
        mid = 0.5 * (lo + hi)
        fmid = func(mid)
        below = fmid < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        width = hi - lo
        if np.all(width <= xtol * np.maximum(1.0, np.abs(mid))) or np.all(
            np.abs(fmid - target) <= ftol
        ):
            break
    else:
        raise ConvergenceError(f"bisection did not converge in {maxiter} iterations")
    return 0.5 * (lo + hi)


def expand_bracket(func, target, lo, hi, *, grow=2.0, maxiter=200):
    """Widen a scalar bracket upward until ``func(hi) >= target``."""
    for _ in range(maxiter):
        if func(hi) >= target:
            return lo, hi
        lo, hi = hi, lo + grow * (hi - lo)
    raise ConvergenceError("could not bracket the root")
