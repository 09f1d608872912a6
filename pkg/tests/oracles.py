"""Reference computations that share no code with the package."""

import math

import numpy as np


def clenshaw_curtis(n: int):
    """Clenshaw-Curtis nodes and weights on [-1, 1] with n + 1 points (n even)."""
    j = np.arange(n + 1)
    theta = j * math.pi / n
    x = np.cos(theta)
    w = np.zeros(n + 1)
    for i in range(n + 1):
        acc = 1.0
        for k in range(1, n // 2 + 1):
            b = 1.0 if k == n // 2 else 2.0
            acc -= b * math.cos(2 * k * theta[i]) / (4 * k * k - 1)
        w[i] = (1.0 if i in (0, n) else 2.0) * acc / n
    return x, w


def trace_series_log_gap(s: float, n: int = 64, terms: int = 400) -> float:
    """``ln det(I - K)`` on an interval of length 2s as ``-sum_m tr(K^m)/m``.

    K is discretized with Clenshaw-Curtis and the Neumann series is summed
    with explicit matrix powers.
    """
    x, w = clenshaw_curtis(n)
    x = s * x
    w = s * w
    d = np.subtract.outer(x, x)
    with np.errstate(invalid="ignore", divide="ignore"):
        k = np.sin(d) / (math.pi * d)
    k[d == 0] = 1 / math.pi
    a = k * np.sqrt(np.outer(w, w))
    total, p = 0.0, np.eye(len(x))
    for m in range(1, terms + 1):
        p = p @ a
        t = np.trace(p) / m
        total -= t
        if abs(t) < 1e-18:
            break
    return total
