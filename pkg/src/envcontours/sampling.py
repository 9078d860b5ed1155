"""Seeded Monte Carlo samples, projections, and empirical quantiles.

Draws come from NumPy's PCG64 generator.  A sample of ``count`` points is
split into fixed blocks of ``BLOCK_SIZE`` draws; block ``b`` is generated
from ``SeedSequence(seed, spawn_key=(b,))``, which is exactly the ``b``-th
child of ``SeedSequence(seed).spawn``.  Blocks are concatenated in index
order, so a sample does not depend on how (or in what order) blocks are
produced.  Whole blocks are shared between sample sizes: the first ``b``
full blocks of a larger sample equal those of any sample that also has
them.

Within a block each model draws through its natural conditioning chain:
the first variable by inverse CDF (exceedance form) and the second from
the conditional law at that value.  Discrete mixtures are drawn by
component selection.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .stats import check_probability

BLOCK_SIZE = 1 << 20

__all__ = ["SampleSet", "sample", "iter_blocks", "project", "empirical_quantile", "exceedance_count", "BLOCK_SIZE"]


@dataclass(frozen=True)
class SampleSet:
    points: np.ndarray = field(repr=False)
    seed: int
    model_id: str
    count: int

    def __post_init__(self):
        self.points.setflags(write=False)

    def header(self):
        return {"model_id": self.model_id, "seed": self.seed, "count": self.count}


def block_rng(seed, block):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(block,))))


def sample(model, count, seed, progress=None):
    """Draw ``count`` states from ``model`` reproducibly under ``seed``.

    ``progress`` is an optional callable receiving ``(done, count)`` after
    each block.
    """
    out = np.empty((count, 2)) if count >= 1 else None
    for start, block in iter_blocks(model, count, seed):
        out[start : start + len(block)] = block
        if progress is not None:
            progress(start + len(block), count)
    return SampleSet(out, int(seed), getattr(model, "name", type(model).__name__), count)


def iter_blocks(model, count, seed):
    """Yield ``(start, points)`` blocks of the sample without holding it all in memory."""
    if count < 1:
        raise ValueError("sample count must be >= 1")
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    for b in range(math.ceil(count / BLOCK_SIZE)):
        start = b * BLOCK_SIZE
        n = min(BLOCK_SIZE, count - start)
        yield start, model.sample_block(block_rng(seed, b), n)


def project(points, theta):
    """Project states onto the unit vector at angle ``theta``: ``x1 cos + x2 sin``."""
    pts = points.points if isinstance(points, SampleSet) else np.asarray(points, dtype=float)
    return pts[:, 0] * np.cos(theta) + pts[:, 1] * np.sin(theta)


def exceedance_count(alpha, n):
    """Number of order statistics strictly above the empirical quantile: ``ceil(alpha * n)``."""
    alpha = check_probability(alpha, name="alpha", open_lower=True, open_upper=True)
    if alpha * n < 1 - 1e-9:
        raise ValueError(f"alpha * n must be >= 1 (alpha={alpha}, n={n})")
    return math.ceil(alpha * n - 1e-9)


def empirical_quantile(values, alpha):
    """Value exceeded by exactly ``ceil(alpha * n)`` of the ``n`` values.

    That is the ``(n - k)``-th order statistic (1-based) with
    ``k = ceil(alpha * n)``; for ``values = 1..100`` and ``alpha = 0.01`` it
    returns 99.
    """
    values = np.asarray(values, dtype=float)
    n = values.size
    k = exceedance_count(alpha, n)
    return float(np.partition(values, n - k - 1)[n - k - 1])


def empirical_quantiles(values, alphas):
    """Empirical quantiles at several exceedance probabilities with one partition."""
    values = np.asarray(values, dtype=float)
    n = values.size
    idx = [n - exceedance_count(a, n) - 1 for a in alphas]
    part = np.partition(values, sorted(set(idx)))
    return np.array([part[i] for i in idx])
