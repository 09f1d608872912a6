import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sinegap.ddouble import DoubleDouble
from sinegap.errors import ConditioningError, DomainError, InvalidArgumentError
from sinegap.numerics import (
    cholesky_log_det,
    cholesky_prefix_log_dets,
    gauss_legendre,
    gauss_legendre_dd,
    one_minus_spectrum,
    sturm_count_below,
    sym_log_det_one_minus,
)


def test_gauss_legendre_small_orders():
    r = gauss_legendre(1)
    assert r.nodes.tolist() == [0.0] and r.weights.tolist() == [2.0]
    r = gauss_legendre(2)
    np.testing.assert_allclose(r.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=0, atol=1e-15)
    np.testing.assert_allclose(r.weights, [1.0, 1.0], rtol=0, atol=1e-15)


def test_gauss_legendre_exp_integral():
    assert abs(gauss_legendre(16).integrate(np.exp) - (math.e - 1 / math.e)) < 1e-14


@pytest.mark.parametrize("order", [3, 10, 57, 200])
def test_gauss_legendre_against_mpmath(order):
    # Newton polish of each node at 40 digits, weights from P_n'
    mpmath.mp.dps = 40
    r = gauss_legendre(order)

    def P(t):
        return mpmath.legendre(order, t)

    for x0, w0 in list(zip(r.nodes, r.weights))[: order // 2 + 1 : 3]:
        t = mpmath.findroot(P, mpmath.mpf(x0))
        w = 2 / ((1 - t**2) * mpmath.diff(P, t) ** 2)
        assert abs(float(t) - x0) < 1e-15
        assert abs(float(w / w0) - 1) < 1e-13
    assert abs(r.weights.sum() - 2.0) < 1e-13


def test_gauss_legendre_large_order():
    r = gauss_legendre(1000)
    assert abs(r.weights.sum() - 2.0) < 1e-12
    assert np.all(np.diff(r.nodes) > 0)
    assert abs(r.integrate(lambda x: np.cos(40 * x)) - math.sin(40) / 20) < 1e-13


def test_gauss_legendre_exact_for_polynomials():
    r = gauss_legendre(12)
    for k in range(0, 24):
        exact = 0.0 if k % 2 else 2.0 / (k + 1)
        assert abs(r.integrate(lambda x: x**k) - exact) < 1e-14


def test_gauss_legendre_dd_refines_float_rule():
    x, w = gauss_legendre_dd(40)
    r = gauss_legendre(40)
    np.testing.assert_allclose(x.hi, r.nodes, rtol=0, atol=1e-15)
    # the sum of weights is 2 to well below double rounding
    total = DoubleDouble(0.0)
    for i in range(40):
        total = total + w[i]
    assert abs((total - DoubleDouble(2.0)).hi) < 1e-28


def test_gauss_legendre_rejects_bad_order():
    with pytest.raises(InvalidArgumentError):
        gauss_legendre(0)


def test_log_det_one_minus_examples():
    assert sym_log_det_one_minus(np.zeros((3, 3))) == 0.0
    assert abs(sym_log_det_one_minus(np.diag([0.5, 0.5])) - 2 * math.log(0.5)) < 1e-15
    u = np.array([0.6, 0.3, math.sqrt(0.9 - 0.45)])
    assert abs(sym_log_det_one_minus(np.outer(u, u)) - math.log(0.1)) < 1e-13


def test_log_det_one_minus_rejects_unit_eigenvalue():
    with pytest.raises(DomainError):
        sym_log_det_one_minus(np.diag([0.2, 1.0]))


def test_one_minus_spectrum_sorted():
    spec = one_minus_spectrum(np.diag([0.1, 0.9, 0.5]))
    np.testing.assert_allclose(spec, [0.1, 0.5, 0.9])


def test_cholesky_log_det_examples():
    assert cholesky_log_det(np.eye(5)) == 0.0
    T = np.array([[0.5, -1 / math.pi], [-1 / math.pi, 0.5]])
    oracle = math.log(0.25 - 1 / math.pi**2)
    assert abs(cholesky_log_det(T) - oracle) < 1e-14
    assert abs(cholesky_log_det(T, "extended") - oracle) < 1e-14
    assert abs(cholesky_log_det(np.diag([2.0, 3.0])) - math.log(6.0)) < 1e-15


def test_cholesky_prefix_matches_slogdet():
    rng = np.random.default_rng(3)
    A = rng.standard_normal((8, 8))
    T = A @ A.T + 8 * np.eye(8)
    pref = cholesky_prefix_log_dets(T)
    for k in range(8):
        assert abs(pref[k] - np.linalg.slogdet(T[: k + 1, : k + 1])[1]) < 1e-12


def test_cholesky_reports_failing_pivot():
    T = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 2.0], [0.0, 2.0, 1.0]])
    with pytest.raises(ConditioningError) as info:
        cholesky_log_det(T)
    assert info.value.index == 2


def test_sturm_examples():
    assert sturm_count_below([-1.0, 0.0, 1.0], [0.0, 0.0], 0.5) == 2
    assert sturm_count_below([0.0, 0.0], [1.0], 0.0) == 1
    assert sturm_count_below([3.0, -2.0, 0.1], [0.3, 0.7], math.inf) == 3


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=2, max_value=30),
    st.integers(min_value=0, max_value=2**32 - 1),
    st.floats(min_value=-3.0, max_value=3.0),
)
def test_sturm_matches_eigvalsh(n, seed, t):
    rng = np.random.default_rng(seed)
    d = rng.standard_normal(n)
    e = rng.standard_normal(n - 1)
    lam = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
    if np.min(np.abs(lam - t)) < 1e-9:
        return
    assert sturm_count_below(d, e, t) == int(np.sum(lam < t))


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=2**32 - 1))
def test_log_det_one_minus_matches_slogdet(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n))
    S = A @ A.T
    M = 0.9 * S / (np.linalg.eigvalsh(S)[-1] + 1e-12)
    ref = np.linalg.slogdet(np.eye(n) - M)[1]
    assert abs(sym_log_det_one_minus(M) - ref) < 1e-12 * max(1.0, abs(ref))
