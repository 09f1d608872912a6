import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sinegap.errors import AccuracyWarning, ConditioningError, InvalidArgumentError
from sinegap.numerics import cholesky_log_det, gauss_legendre
from sinegap.opuc import (
    ArcWeight,
    arc_moment,
    build_ladder,
    cd_sum,
    eval_poly,
    toeplitz_log_det,
    toeplitz_log_dets,
    toeplitz_matrix,
    weight_moment,
    within_budget,
)


def exp_cos(alpha):
    return ArcWeight(alpha, lambda t: np.exp(np.cos(t)))


def test_arc_weight_validation():
    with pytest.raises(InvalidArgumentError):
        ArcWeight(0.0)
    with pytest.raises(InvalidArgumentError):
        ArcWeight(math.pi)
    with pytest.raises(InvalidArgumentError):
        ArcWeight(0.5, lambda t: np.cos(t))  # negative near theta = pi
    with pytest.raises(InvalidArgumentError):
        ArcWeight(0.5, lambda t: 2.0 + np.sin(t))  # not symmetric
    w = ArcWeight(math.pi / 2)
    assert w.kind == "constant-one"
    assert abs(w.gamma - math.cos(math.pi / 4)) < 1e-16
    assert exp_cos(0.5).kind == "analytic-symmetric"


def test_arc_moment_examples():
    assert abs(arc_moment(0, math.pi / 2) - 0.5) < 1e-16
    assert abs(arc_moment(2, math.pi / 2)) < 1e-16
    assert abs(arc_moment(1, math.pi / 2) + 1 / math.pi) < 1e-16
    assert arc_moment(-3, 0.7) == arc_moment(3, 0.7)


def test_weight_moment_constant_reduces():
    w = ArcWeight.cosine_series(0.8, [1.0])
    for k in range(6):
        assert abs(weight_moment(w, k) - arc_moment(k, 0.8)) < 1e-13


def test_weight_moment_node_doubling():
    w = exp_cos(0.6)
    assert abs(weight_moment(w, 0, 64) - weight_moment(w, 0, 128)) < 1e-12


def test_weight_moment_full_circle_limit():
    # I_0(1) from its power series
    i0 = sum(0.25**j / math.factorial(j) ** 2 for j in range(30))
    assert abs(weight_moment(exp_cos(1e-12), 0) - i0) < 1e-9


def test_weight_moment_warns_when_unconverged():
    w = ArcWeight(0.3, lambda t: 1.0 / (1.01 + np.cos(t)))
    with pytest.warns(AccuracyWarning):
        weight_moment(w, 0, 16)


def test_ladder_examples_quarter_arc():
    lad = build_ladder(ArcWeight(math.pi / 2), 5)
    assert abs(lad.reflection[0] + 2 / math.pi) < 1e-14
    assert abs(lad.chi[0] - math.sqrt(2)) < 1e-14
    assert abs(lad.chi[1] - math.sqrt(2 / (1 - 4 / math.pi**2))) < 1e-13
    assert abs(lad.chi[1] - 1.83384) < 1e-5


def test_ladder_full_circle_limit():
    lad = build_ladder(ArcWeight(1e-9), 10)
    assert np.max(np.abs(lad.reflection)) < 1e-8
    assert np.max(np.abs(lad.log_chi)) < 1e-8


@pytest.mark.parametrize("method", ["szego", "levinson"])
def test_ladder_invariants(method):
    lad = build_ladder(ArcWeight(0.3), 20, method=method)
    assert np.all(np.abs(lad.reflection) < 1)
    steps = np.diff(lad.log_chi)
    np.testing.assert_allclose(steps, -0.5 * np.log1p(-(lad.reflection**2)), rtol=1e-12, atol=0)
    assert np.all(steps >= 0)
    assert abs(lad.log_chi[0] + 0.5 * math.log(lad.moments[0])) < 1e-15


def test_methods_agree():
    for alpha, n in [(0.3, 20), (1.2, 8)]:
        a = build_ladder(ArcWeight(alpha), n, method="szego")
        b = build_ladder(ArcWeight(alpha), n, method="levinson")
        np.testing.assert_allclose(a.reflection, b.reflection, rtol=0, atol=1e-10)


def test_levinson_reports_conditioning():
    with pytest.raises(ConditioningError) as info:
        build_ladder(ArcWeight(1.5), 40, method="levinson")
    assert 0 < info.value.index <= 40


def test_budget_gate():
    assert within_budget(1.0, 20)
    assert not within_budget(2.5, 200)
    assert within_budget(2.5, 20, "extended") and not within_budget(2.5, 20)


def test_eval_poly_examples():
    lad = build_ladder(ArcWeight(math.pi / 2), 3)
    ev = eval_poly(lad, 0, 0.3 + 0.2j)
    assert ev.phi == lad.chi[0] and ev.dphi == 0
    ev = eval_poly(lad, 1, 1j)
    assert abs(ev.phi - lad.chi[1] * (1j + 2 / math.pi)) < 1e-14
    assert abs(ev.phi - (1.16745 + 1.83384j)) < 1e-5
    with pytest.raises(InvalidArgumentError):
        eval_poly(lad, 4, 1j)


def test_eval_poly_derivative_matches_difference():
    lad = build_ladder(exp_cos(0.9), 12)
    z, h = 0.7 + 0.4j, 1e-6
    ev = eval_poly(lad, 12, z)
    fd = (eval_poly(lad, 12, z + h).phi - eval_poly(lad, 12, z - h).phi) / (2 * h)
    assert abs(ev.dphi - fd) < 1e-6 * abs(ev.dphi)


@pytest.mark.parametrize("weight", [ArcWeight(0.7), exp_cos(0.7)], ids=["constant", "exp-cos"])
def test_orthonormality(weight):
    n = 20
    lad = build_ladder(weight, n)
    x, w = gauss_legendre(512).on_interval(weight.alpha, 2 * math.pi - weight.alpha)
    z = np.exp(1j * x)
    vals = np.array([[eval_poly(lad, k, zi).phi for zi in z] for k in range(n + 1)])
    gram = (vals * (w * weight(x) / (2 * math.pi))) @ vals.conj().T
    assert np.max(np.abs(gram - np.eye(n + 1))) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=0.2, max_value=2.5), st.floats(min_value=0.0, max_value=2 * math.pi))
def test_star_modulus_on_circle(alpha, theta):
    lad = build_ladder(ArcWeight(alpha), 10)
    ev = eval_poly(lad, 10, np.exp(1j * theta))
    assert abs(abs(ev.phi_star) - abs(ev.phi)) <= 1e-10 * max(1.0, abs(ev.phi))


def test_cd_examples():
    lad = build_ladder(ArcWeight(math.pi / 2), 2)
    sides = cd_sum(lad, 1, 1j)
    assert abs(sides.lhs - 2.0) < 1e-14 and abs(sides.rhs - 2.0) < 1e-13
    sides = cd_sum(lad, 0, 1j)
    assert sides.lhs == 0 and abs(sides.rhs) < 1e-15
    with pytest.raises(InvalidArgumentError):
        cd_sum(lad, 1, 1.01j)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=0.2, max_value=2.8),
    st.integers(min_value=0, max_value=50),
    st.floats(min_value=0.0, max_value=2 * math.pi),
)
def test_cd_identity(alpha, n, theta):
    lad = build_ladder(ArcWeight(alpha), 50)
    s = cd_sum(lad, n, np.exp(1j * theta))
    assert abs(s.lhs - s.rhs) <= 1e-9 * max(abs(s.lhs), 1e-300)


def test_toeplitz_log_det_examples():
    lad = build_ladder(ArcWeight(math.pi / 2), 3)
    assert abs(toeplitz_log_det(lad, 1) - math.log(0.5)) < 1e-15
    assert abs(toeplitz_log_det(lad, 2) - math.log(0.25 - 1 / math.pi**2)) < 1e-14
    assert abs(toeplitz_log_det(build_ladder(ArcWeight(1e-9), 8), 8)) < 1e-7


def _mp_prefix_log_dets(alpha, n):
    mpmath.mp.dps = 120
    a = mpmath.mpf(alpha)

    def c(k):
        return 1 - a / mpmath.pi if k == 0 else -mpmath.sin(k * a) / (mpmath.pi * k)

    L = mpmath.cholesky(mpmath.matrix([[c(i - j) for j in range(n)] for i in range(n)]))
    out, acc = [], mpmath.mpf(0)
    for k in range(n):
        acc += 2 * mpmath.log(L[k, k])
        out.append(float(acc))
    return np.array(out)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.0, 2.8])
def test_ladder_matches_exact_determinants_within_budget(alpha):
    n = 1
    while within_budget(alpha, n + 1) and n < 60:
        n += 1
    dets = toeplitz_log_dets(build_ladder(ArcWeight(alpha), n))[:n]
    ref = _mp_prefix_log_dets(alpha, n)
    np.testing.assert_allclose(dets, ref, rtol=1e-8, atol=1e-12)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 2.0])
def test_ladder_matches_float_cholesky_while_well_conditioned(alpha):
    # float Cholesky is only trustworthy while lambda_min(T) >> 1e-16
    lad = build_ladder(ArcWeight(alpha), 30)
    dets = toeplitz_log_dets(lad)
    for m in range(1, 31):
        T = toeplitz_matrix(alpha, m)
        if np.linalg.eigvalsh(T)[0] < 1e-8:
            break
        assert abs(dets[m - 1] - cholesky_log_det(T)) <= 1e-8 * max(1.0, abs(dets[m - 1]))
    assert m > 3


def test_ladder_matches_extended_cholesky_beyond_float_budget():
    lad = build_ladder(ArcWeight(1.5), 30)
    ref = cholesky_log_det(toeplitz_matrix(1.5, 30, "extended"), "extended")
    assert abs(toeplitz_log_det(lad, 30) - ref) <= 1e-8 * abs(ref)


def test_general_weight_matches_cholesky():
    w = exp_cos(0.8)
    lad = build_ladder(w, 12)
    with warnings.catch_warnings():
        warnings.simplefilter("error", AccuracyWarning)
        T = toeplitz_matrix(w, 12)
    assert abs(toeplitz_log_det(lad, 12) - cholesky_log_det(T)) < 1e-10
