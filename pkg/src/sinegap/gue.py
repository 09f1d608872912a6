"""Monte Carlo gap probabilities for the Gaussian Unitary Ensemble.

Samples come from the beta = 2 tridiagonal model: ``d_i ~ N(0, 1)`` and
``e_i^2 ~ Gamma(N - i, 1)`` (a chi variable with ``2(N - i)`` degrees of
freedom divided by ``sqrt 2``). Its spectrum has the GUE law with the
semicircle on ``[-2 sqrt N, 2 sqrt N]``, so the density at 0 is
``sqrt(N) / pi`` and the window ``(-s/sqrt N, s/sqrt N)`` corresponds to an
interval of length ``2s`` at density ``1/pi``.

Trial ``i`` draws from ``SeedSequence([seed, i])``, so results do not depend
on batching and any trial can be regenerated on its own.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidArgumentError
from .numerics import sturm_count_below

__all__ = [
    "TridiagonalSample",
    "GapEstimate",
    "sample_tridiagonal",
    "gap_probability",
    "gap_probabilities",
]

_BATCH = 2048


@dataclass(frozen=True, eq=False)
class TridiagonalSample:
    N: int
    d: np.ndarray
    e: np.ndarray
    seed: int


@dataclass(frozen=True)
class GapEstimate:
    s: float
    trials: int
    hits: int

    @property
    def p_hat(self) -> float:
        return self.hits / self.trials

    @property
    def stderr(self) -> float:
        p = self.p_hat
        return math.sqrt(p * (1.0 - p) / self.trials)


def _check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise InvalidArgumentError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return seed


def _draw(N: int, seed: int, index: int):
    rng = np.random.default_rng(np.random.SeedSequence([seed, index]))
    d = rng.standard_normal(N)
    e = np.sqrt(rng.standard_gamma(np.arange(N - 1, 0, -1, dtype=np.float64)))
    return d, e


def sample_tridiagonal(N: int, seed: int, index: int = 0) -> TridiagonalSample:
    """One draw of the tridiagonal GUE model; ``index`` selects the trial stream."""
    if int(N) != N or N < 50:
        raise InvalidArgumentError(f"N must be an integer >= 50, got {N!r}")
    seed = _check_seed(seed)
    d, e = _draw(int(N), seed, int(index))
    d.setflags(write=False)
    e.setflags(write=False)
    return TridiagonalSample(int(N), d, e, seed)


def gap_probabilities(N: int, s_values: Sequence[float], trials: int, seed: int) -> list[GapEstimate]:
    """Empirical probability of an empty window for each ``s``, all from the same samples."""
    if int(N) != N or N < 200:
        raise InvalidArgumentError(f"N must be an integer >= 200, got {N!r}")
    if int(trials) != trials or trials < 1000:
        raise InvalidArgumentError(f"trials must be an integer >= 1000, got {trials!r}")
    s_arr = np.asarray(list(s_values), dtype=np.float64)
    if s_arr.ndim != 1 or np.any(~(s_arr >= 0.0)) or np.any(s_arr > 3.0):
        raise InvalidArgumentError("each s must lie in [0, 3]")
    seed = _check_seed(seed)
    N, trials = int(N), int(trials)
    half = s_arr / math.sqrt(N)
    thresholds = np.concatenate([-half, half])
    k = len(s_arr)
    hits = np.zeros(k, dtype=np.int64)
    for start in range(0, trials, _BATCH):
        idx = range(start, min(start + _BATCH, trials))
        draws = [_draw(N, seed, i) for i in idx]
        d = np.stack([x[0] for x in draws])
        e = np.stack([x[1] for x in draws])
        counts = sturm_count_below(d[:, None, :], e[:, None, :], thresholds[None, :])
        inside = counts[:, k:] - counts[:, :k]
        hits += np.sum(inside == 0, axis=0)
    return [GapEstimate(float(s), trials, int(h)) for s, h in zip(s_arr, hits)]


def gap_probability(N: int, s: float, trials: int, seed: int) -> GapEstimate:
    """Estimate of ``Delta(s)`` from ``trials`` GUE matrices of size ``N``."""
    return gap_probabilities(N, [s], trials, seed)[0]
