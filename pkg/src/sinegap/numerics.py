"""Shared numerical kernels.

Gauss-Legendre rules (double and double-double), log-determinants of
symmetric positive definite matrices, and Sturm-sequence eigenvalue counts
for symmetric tridiagonal matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .ddouble import DoubleDouble, dd_sum
from .errors import ConditioningError, DomainError, InvalidArgumentError

__all__ = [
    "QuadratureRule",
    "gauss_legendre",
    "gauss_legendre_dd",
    "sym_log_det_one_minus",
    "one_minus_spectrum",
    "cholesky_log_det",
    "cholesky_prefix_log_dets",
    "sturm_count_below",
    "MAX_GL_ORDER",
]

MAX_GL_ORDER = 100000
_NEWTON_TOL = 1e-15
_NEWTON_MAXITER = 100
_STURM_EPS = 2.0**-52


@dataclass(frozen=True)
class QuadratureRule:
    """Gauss-Legendre nodes and weights on [-1, 1]."""

    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def on_interval(self, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
        """Affine image of the rule on [a, b]."""
        half = 0.5 * (b - a)
        return a + half * (self.nodes + 1.0), half * self.weights

    def integrate(self, f, a: float = -1.0, b: float = 1.0):
        x, w = self.on_interval(a, b)
        return np.dot(w, f(x))


def _legendre_and_derivative(x: np.ndarray, m: int):
    p_prev = np.ones_like(x)
    p = x.copy()
    for k in range(1, m):
        p_prev, p = p, ((2 * k + 1) * x * p - k * p_prev) / (k + 1)
    dp = m * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=64)
def _gl_cached(order: int) -> QuadratureRule:
    m = order
    if m == 1:
        return QuadratureRule(np.array([0.0]), np.array([2.0]), 1)
    half = (m + 1) // 2
    i = np.arange(1, half + 1)
    # Chebyshev-like initial guesses, largest root first
    x = np.cos(np.pi * (i - 0.25) / (m + 0.5))
    for _ in range(_NEWTON_MAXITER):
        p, dp = _legendre_and_derivative(x, m)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) < _NEWTON_TOL:
            break
    p, dp = _legendre_and_derivative(x, m)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    if m % 2:
        x[-1] = 0.0
        nodes = np.concatenate([-x, x[-2::-1]])
        weights = np.concatenate([w, w[-2::-1]])
    else:
        nodes = np.concatenate([-x, x[::-1]])
        weights = np.concatenate([w, w[::-1]])
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, m)


def gauss_legendre(order: int) -> QuadratureRule:
    """Gauss-Legendre rule of the given order (number of nodes).

    Nodes come from Newton iteration on the three-term recurrence started at
    Chebyshev-type guesses. Symmetry is imposed exactly by computing the
    positive half and mirroring it.

    >>> r = gauss_legendre(2)
    >>> [round(float(v), 10) for v in r.nodes]
    [-0.5773502692, 0.5773502692]
    """
    if int(order) != order or not 1 <= order <= MAX_GL_ORDER:
        raise InvalidArgumentError(f"order must be an integer in [1, {MAX_GL_ORDER}], got {order!r}")
    return _gl_cached(int(order))


def gauss_legendre_dd(order: int) -> tuple[DoubleDouble, DoubleDouble]:
    """Gauss-Legendre nodes and weights to double-double accuracy.

    Starts from the double-precision rule and polishes with Newton steps
    carried out in double-double arithmetic.
    """
    rule = gauss_legendre(order)
    m = rule.order
    if m == 1:
        return DoubleDouble(np.array([0.0])), DoubleDouble(np.array([2.0]))
    x = DoubleDouble(rule.nodes.copy())
    for _ in range(2):
        p, dp = _legendre_dd(x, m)
        x = x - p / dp
    p, dp = _legendre_dd(x, m)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    return x, w


def _legendre_dd(x: DoubleDouble, m: int):
    p_prev = DoubleDouble(np.ones_like(x.hi))
    p = x.copy()
    for k in range(1, m):
        p_prev, p = p, ((2 * k + 1) * x * p - p_prev * float(k)) / float(k + 1)
    dp = (x * p - p_prev) * float(m) / (x * x - 1.0)
    return p, dp


def _check_symmetric(M: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {M.shape}")
    if M.size and np.max(np.abs(M - M.T)) > tol * max(1.0, np.max(np.abs(M))):
        raise InvalidArgumentError("matrix is not symmetric")
    return M


def one_minus_spectrum(M: np.ndarray) -> np.ndarray:
    """Eigenvalues of ``I - M`` in ascending order, computed from those of ``M``."""
    M = _check_symmetric(M)
    if M.size == 0:
        return np.zeros(0)
    lam = np.linalg.eigvalsh(M)
    return (1.0 - lam)[::-1]


def sym_log_det_one_minus(M: np.ndarray) -> float:
    """``ln det(I - M)`` for symmetric ``M`` with spectrum below 1.

    Uses the symmetric eigendecomposition of ``M`` so each factor
    ``ln(1 - lambda_i)`` is formed individually; small eigenvalues go through
    ``log1p``.
    """
    M = _check_symmetric(M)
    if M.size == 0:
        return 0.0
    lam = np.linalg.eigvalsh(M)
    bad = np.nonzero(lam >= 1.0)[0]
    if bad.size:
        idx = int(bad[-1])
        raise DomainError(
            f"I - M is not positive definite: eigenvalue {lam[idx]!r} of M at index {idx} is >= 1",
            idx,
        )
    return math.fsum(np.log1p(-lam))


def cholesky_prefix_log_dets(T, precision: str = "standard") -> np.ndarray:
    """``ln det`` of every leading principal submatrix of an SPD matrix.

    Entry ``k`` of the result is ``ln det T[:k+1, :k+1]``. ``precision`` is
    ``"standard"`` (float64) or ``"extended"`` (double-double); ``T`` may be
    given as a :class:`DoubleDouble` array for the latter.
    """
    if precision == "standard":
        logdiag = _cholesky_logdiag(np.asarray(T, dtype=np.float64))
    elif precision == "extended":
        if not isinstance(T, DoubleDouble):
            T = DoubleDouble(np.asarray(T, dtype=np.float64))
        logdiag = _cholesky_logdiag_dd(T)
    else:
        raise InvalidArgumentError(f"unknown precision {precision!r}")
    return 2.0 * np.cumsum(logdiag)


def cholesky_log_det(T, precision: str = "standard") -> float:
    """``ln det T = 2 * sum(ln diag(L))`` from the Cholesky factor ``L``.

    Raises :class:`ConditioningError` carrying the failing pivot index when a
    pivot is not positive at the working precision.
    """
    n = T.shape[0]
    if n == 0:
        return 0.0
    return float(cholesky_prefix_log_dets(T, precision)[-1])


def _cholesky_logdiag(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    if T.shape != (n, n):
        raise InvalidArgumentError(f"expected a square matrix, got shape {T.shape}")
    L = np.zeros_like(T)
    logdiag = np.empty(n)
    for j in range(n):
        col = T[j:, j] - L[j:, :j] @ L[j, :j]
        pivot = col[0]
        if not pivot > 0.0:
            raise ConditioningError(f"nonpositive Cholesky pivot {pivot!r} at index {j}", j)
        d = math.sqrt(pivot)
        L[j, j] = d
        L[j + 1 :, j] = col[1:] / d
        logdiag[j] = math.log(d)
    return logdiag


def _cholesky_logdiag_dd(T: DoubleDouble) -> np.ndarray:
    n = T.shape[0]
    if T.shape != (n, n):
        raise InvalidArgumentError(f"expected a square matrix, got shape {T.shape}")
    Lhi = np.zeros((n, n))
    Llo = np.zeros((n, n))
    logdiag = np.empty(n)
    for j in range(n):
        col = DoubleDouble._raw(T.hi[j:, j].copy(), T.lo[j:, j].copy())
        if j:
            rows = DoubleDouble._raw(Lhi[j:, :j], Llo[j:, :j])
            pivrow = DoubleDouble._raw(Lhi[j, :j], Llo[j, :j])
            col = col - dd_sum(rows * pivrow, axis=1)
        pivot = col[0]
        if not float(pivot.hi) > 0.0:
            raise ConditioningError(f"nonpositive Cholesky pivot {float(pivot)!r} at index {j}", j)
        d = pivot.sqrt()
        Lhi[j, j], Llo[j, j] = d.hi, d.lo
        rest = col[1:] / d
        Lhi[j + 1 :, j], Llo[j + 1 :, j] = rest.hi, rest.lo
        # ln(hi + lo) = ln(hi) + log1p(lo/hi) is exact to double rounding
        logdiag[j] = math.log(float(d.hi)) + math.log1p(float(d.lo) / float(d.hi))
    return logdiag


def sturm_count_below(d, e, t):
    """Number of eigenvalues strictly below ``t`` of symmetric tridiagonal matrices.

    ``d`` has shape ``(..., N)`` and ``e`` shape ``(..., N-1)``; ``t`` broadcasts
    against the leading dimensions. Counts the negative pivots of the shifted
    LDL^T factorization. A zero pivot is replaced by ``eps * ||row||`` so the
    count is total.
    """
    d = np.asarray(d, dtype=np.float64)
    e = np.asarray(e, dtype=np.float64)
    if d.shape[-1] != e.shape[-1] + 1:
        raise InvalidArgumentError(f"need len(e) == len(d) - 1, got {e.shape[-1]} and {d.shape[-1]}")
    t = np.asarray(t, dtype=np.float64)
    n = d.shape[-1]
    lead = np.broadcast_shapes(d.shape[:-1], t.shape)
    count = np.zeros(lead, dtype=np.int64)
    e2 = e * e
    q = None
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(n):
            shifted = d[..., i] - t
            if i == 0:
                q = shifted
            else:
                q = shifted - e2[..., i - 1] / q
            zero = q == 0.0
            if np.any(zero):
                row = np.abs(shifted)
                if i > 0:
                    row = row + np.abs(e[..., i - 1])
                if i < n - 1:
                    row = row + np.abs(e[..., i])
                row = np.where(row > 0.0, row, 1.0)
                q = np.where(zero, _STURM_EPS * row, q)
            count = count + (q < 0.0)
    if count.ndim == 0:
        return int(count)
    return count
