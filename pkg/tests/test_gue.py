import math

import numpy as np
import pytest

from sinegap.errors import InvalidArgumentError
from sinegap.fredholm import gap_determinant
from sinegap.gue import gap_probabilities, gap_probability, sample_tridiagonal


def test_sample_is_deterministic():
    a = sample_tridiagonal(100, 42, 3)
    b = sample_tridiagonal(100, 42, 3)
    assert np.array_equal(a.d, b.d) and np.array_equal(a.e, b.e)
    c = sample_tridiagonal(100, 42, 4)
    assert not np.array_equal(a.d, c.d)
    assert a.d.shape == (100,) and a.e.shape == (99,)


def test_sample_validation():
    with pytest.raises(InvalidArgumentError):
        sample_tridiagonal(49, 0)
    with pytest.raises(InvalidArgumentError):
        sample_tridiagonal(100, -1)
    with pytest.raises(InvalidArgumentError):
        gap_probabilities(100, [1.0], 1000, 0)
    with pytest.raises(InvalidArgumentError):
        gap_probabilities(200, [3.5], 1000, 0)
    with pytest.raises(InvalidArgumentError):
        gap_probabilities(200, [1.0], 999, 0)


def test_sample_moments():
    N, reps = 60, 4000
    d = np.stack([sample_tridiagonal(N, 7, i).d for i in range(reps)])
    e2 = np.stack([sample_tridiagonal(N, 7, i).e ** 2 for i in range(reps)])
    assert abs(d.mean()) < 3 / math.sqrt(d.size)
    # Gamma(k, 1) has mean and variance k
    k = np.arange(N - 1, 0, -1)
    z = (e2.mean(axis=0) - k) / np.sqrt(k / reps)
    assert np.max(np.abs(z)) < 4.5


def test_semicircle_edge():
    s = sample_tridiagonal(400, 1)
    lam = np.linalg.eigvalsh(np.diag(s.d) + np.diag(s.e, 1) + np.diag(s.e, -1))
    assert abs(lam[-1] / (2 * math.sqrt(400)) - 1) < 0.05


def test_gap_probability_basic():
    est = gap_probabilities(200, [0.0, 1.0, 2.0], 2000, 5)
    assert est[0].p_hat == 1.0 and est[0].stderr == 0.0
    assert est[2].p_hat < est[1].p_hat
    assert gap_probability(200, 1.0, 2000, 5) == est[1]


def test_gap_probability_independent_of_batching():
    a = gap_probabilities(200, [1.0], 3000, 9)[0]
    # a prefix of the trials reproduces from its own run
    b = gap_probabilities(200, [1.0], 2048, 9)[0]
    c = gap_probabilities(200, [1.0], 3000, 9)[0]
    assert a == c and b.hits <= a.hits


def test_gap_probability_matches_fredholm():
    est = gap_probability(400, 0.5, 20000, 11)
    assert abs(est.p_hat - gap_determinant(0.5)) < 4 * est.stderr + 5e-3
