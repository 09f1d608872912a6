"""Closed-form large-degree predictions and the identities used to test them.

Every prediction comes back as an :class:`AsymptoticPrediction` carrying the
order of the neglected remainder, so comparison code can normalize
residuals without hard-coding rates.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from ..errors import InvalidArgumentError, OutOfRegimeError
from ..opuc import ArcWeight, OpucLadder, eval_poly
from .conformal import _arc_log, _guard, _w, arc_distance
from .constants import DYSON_C0
from .szego import SzegoData

__all__ = [
    "Remainder",
    "AsymptoticPrediction",
    "Thm2Constants",
    "thm2_constants",
    "thm2_endpoint",
    "thm2_chi",
    "thm2_derivative",
    "asympt_phi_general",
    "asympt_chi",
    "widom_log_det",
    "dyson_log_gap",
    "dyson_toeplitz_log_det",
    "deift_rhs",
    "deriv_asymptotic",
    "RHO_MIN",
]

RHO_MIN = 5.0


def _log_cos(x: float) -> float:
    # ln cos x without the cancellation in cos x near 1
    return math.log1p(-2.0 * math.sin(0.5 * x) ** 2)


class Remainder(str, enum.Enum):
    """Order of the term dropped from a prediction."""

    RHO_INV_3 = "rho^-3"
    N_INV_2 = "n^-2"
    N_INV_3 = "n^-3"
    S_INV = "1/s"
    LITTLE_O_1 = "o(1)"
    N_SIN2_INV = "1/(n sin^2(alpha/2))"


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Predicted value, the order of its remainder and the inputs that produced it.

    ``log_value`` is ``ln|value|`` (or ``ln value`` for positive reals) computed
    without forming ``value``; it is set when the value itself can overflow.
    """

    value: complex | float
    order: Remainder
    inputs: Mapping[str, Any] = field(default_factory=dict)
    log_value: float | None = None

    def __post_init__(self):
        if not isinstance(self.order, Remainder):
            object.__setattr__(self, "order", Remainder(self.order))
        if self.log_value is None and not cmath.isfinite(complex(self.value)):
            raise ValueError("prediction is not finite")


@dataclass(frozen=True)
class Thm2Constants:
    """Coefficients of the endpoint expansion for the constant weight."""

    alpha: float
    r1_plus: complex
    r1_minus: complex
    r2_plus: complex
    r2_minus: complex
    r1_minus_prime: complex
    tau: complex
    rho: float | None = None


def _alpha(alpha) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < math.pi:
        raise InvalidArgumentError(f"alpha must lie in (0, pi), got {alpha!r}")
    return alpha


def thm2_constants(alpha: float, n: int | None = None) -> Thm2Constants:
    """The constants ``r1+-, r2+-, r1-'``, ``tau`` and (given ``n``) ``rho = n sin(alpha/2)``."""
    alpha = _alpha(alpha)
    e = cmath.exp(1j * alpha)
    eh = cmath.exp(0.5j * alpha)
    r1p = (1 + 1 / e - 2 * e) / (eh * 48j)
    r1m = (1 + 3 * e) / (eh * 16j)
    r2p = (16 - 9 * e + 43 / e - 2 / (e * e)) / (3 * 512)
    r2m = (-6 + 7 * e - 17 / e) / 512
    r1mp = eh / 4 * math.cos(alpha / 2) ** 2
    tau = (1 + 2 * math.cos(alpha)) / 6j
    rho = None if n is None else n * math.sin(alpha / 2)
    return Thm2Constants(alpha, r1p, r1m, r2p, r2m, r1mp, tau, rho)


def _regime(n, alpha):
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    rho = n * math.sin(alpha / 2)
    if rho < RHO_MIN:
        raise OutOfRegimeError(f"rho = n sin(alpha/2) = {rho:.3g} is below {RHO_MIN}")
    return int(n), rho


def _endpoint_prefactor(n, alpha, rho, shift):
    # gamma^n e^{i alpha (n/2 - shift)} sqrt(pi i rho), principal root
    gamma = math.cos(alpha / 2)
    return math.exp(n * math.log(gamma)) * cmath.exp(1j * alpha * (n / 2 - shift)) * cmath.sqrt(math.pi * 1j * rho)


def thm2_endpoint(n: int, alpha: float) -> AsymptoticPrediction:
    """``phi_n(e^{i alpha}) / chi_n`` for ``f = 1``, through the ``rho^-2`` term."""
    alpha = _alpha(alpha)
    n, rho = _regime(n, alpha)
    c = thm2_constants(alpha, n)
    value = _endpoint_prefactor(n, alpha, rho, 0.25) * (1 + c.r1_minus / rho + c.r2_minus / rho**2)
    return AsymptoticPrediction(value, Remainder.RHO_INV_3, {"n": n, "alpha": alpha, "rho": rho})


def thm2_derivative(n: int, alpha: float) -> AsymptoticPrediction:
    """``phi_n'(e^{i alpha}) / chi_n`` for ``f = 1``; terms with the unknown ``r3-`` are dropped."""
    alpha = _alpha(alpha)
    n, rho = _regime(n, alpha)
    c = thm2_constants(alpha, n)
    eh = cmath.exp(0.5j * alpha)
    bracket = (
        1j * rho**2
        + eh * rho
        + c.tau
        + (c.r1_minus * (1j * rho**2 + c.tau) + c.r1_plus * eh * rho + c.r1_minus_prime) / rho
        + (c.r2_minus * 1j * rho**2 + c.r2_plus * eh * rho) / rho**2
    )
    phi = thm2_endpoint(n, alpha).value
    value = (
        0.5 * n * phi * cmath.exp(-1j * alpha)
        + _endpoint_prefactor(n, alpha, rho, 1.25) / (2 * math.sin(alpha)) * bracket
    )
    return AsymptoticPrediction(value, Remainder.RHO_INV_3, {"n": n, "alpha": alpha, "rho": rho})


def thm2_chi(n: int, alpha: float) -> AsymptoticPrediction:
    """``chi_{n-1}^2 = gamma^{1-2n} (1 + 1/(4n) + 5/(32 n^2))`` for ``f = 1``.

    ``log_value`` holds ``ln chi_{n-1}^2``; ``value`` overflows to ``inf`` once
    ``gamma^{1-2n}`` leaves the float range.
    """
    alpha = _alpha(alpha)
    if int(n) != n or n < 2:
        raise InvalidArgumentError(f"n must be an integer >= 2, got {n!r}")
    n = int(n)
    log_value = (1 - 2 * n) * _log_cos(alpha / 2) + math.log1p(1 / (4 * n) + 5 / (32 * n * n))
    value = float(np.exp(np.float64(log_value))) if log_value < 709 else math.inf
    return AsymptoticPrediction(value, Remainder.N_INV_3, {"n": n, "alpha": alpha}, log_value)


def _szego(weight) -> SzegoData:
    if isinstance(weight, SzegoData):
        return weight
    return SzegoData(weight if isinstance(weight, ArcWeight) else ArcWeight(float(weight)))


def asympt_phi_general(weight, n: int, z, eps: float = 0.05) -> AsymptoticPrediction:
    """Two-term prediction of ``phi_n(z) / chi_n`` for ``z`` at least ``eps`` from the arc."""
    sz = _szego(weight)
    alpha = sz.alpha
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    z = complex(z)
    if arc_distance(z, alpha) < eps:
        raise InvalidArgumentError(f"z is within {eps} of the arc")
    zz = _guard(z, alpha)
    gamma = math.cos(alpha / 2)
    a = complex(np.exp(0.25 * _arc_log(zz, alpha)))
    psi = complex((zz + 1.0 + _w(zz, alpha)) / (2 * gamma))
    ea = cmath.exp(1j * alpha)
    eh = cmath.exp(0.5j * alpha)
    bracket = 0.5 * (a + 1 / a) + gamma / (8 * n) * (a * eh / (z - ea) + (1 / a) / (eh * (z - ea.conjugate())))
    log_lead = n * cmath.log(gamma * psi)
    value = cmath.exp(log_lead) * sz.D_infinity / complex(sz.D(z)) * bracket
    return AsymptoticPrediction(value, Remainder.N_INV_2, {"n": int(n), "alpha": alpha, "z": z})


def asympt_chi(weight, n: int) -> AsymptoticPrediction:
    """``chi_{n-1}^2 ~ gamma^{1-2n} / (D(0) D_inf) (1 + 1/(4n))``; ``log_value`` is its logarithm."""
    sz = _szego(weight)
    alpha = sz.alpha
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    d0 = complex(sz.D(0.0)).real
    log_value = (1 - 2 * n) * _log_cos(alpha / 2) - math.log(d0 * sz.D_infinity) + math.log1p(0.25 / n)
    value = math.exp(log_value) if log_value < 709 else math.inf
    return AsymptoticPrediction(value, Remainder.N_INV_2, {"n": n, "alpha": alpha}, log_value)


def widom_log_det(n: int, alpha: float) -> AsymptoticPrediction:
    """``ln det T_{n-1}(alpha) ~ n^2 ln cos(alpha/2) - ln(n sin(alpha/2))/4 + c0`` on a fixed arc."""
    alpha = _alpha(alpha)
    if int(n) != n or n < 2:
        raise InvalidArgumentError(f"n must be an integer >= 2, got {n!r}")
    value = n * n * _log_cos(alpha / 2) - 0.25 * math.log(n * math.sin(alpha / 2)) + DYSON_C0
    return AsymptoticPrediction(value, Remainder.LITTLE_O_1, {"n": int(n), "alpha": alpha})


def dyson_log_gap(s: float) -> AsymptoticPrediction:
    """``ln Delta(s) ~ -s^2/2 - ln(s)/4 + c0`` for large ``s``."""
    s = float(s)
    if not s >= 1.0:
        raise InvalidArgumentError(f"s must be >= 1, got {s!r}")
    return AsymptoticPrediction(-0.5 * s * s - 0.25 * math.log(s) + DYSON_C0, Remainder.S_INV, {"s": s})


def dyson_toeplitz_log_det(n: int, s: float) -> AsymptoticPrediction:
    """``ln det T_{n-1}(2s/n) ~ n^2 ln cos(s/n) - ln(n sin(s/n))/4 + c0``."""
    s = float(s)
    if not (int(n) == n and n > s > 0):
        raise InvalidArgumentError(f"need integer n > s > 0, got n={n!r}, s={s!r}")
    value = n * n * _log_cos(s / n) - 0.25 * math.log(n * math.sin(s / n)) + DYSON_C0
    return AsymptoticPrediction(value, Remainder.S_INV, {"n": int(n), "s": s})


def deift_rhs(ladder: OpucLadder, n: int, alpha: float | None = None) -> float:
    """``(n/pi)|phi_n(e^{ia})|^2 - (1/pi)(phi_n(e^{-ia}) e^{ia} phi_n'(e^{ia}) + c.c.)``.

    Equals ``d/d alpha ln det T_{n-1}(alpha)`` for ``n >= 1``.
    """
    if alpha is not None and abs(float(alpha) - ladder.alpha) > 1e-15:
        raise InvalidArgumentError("ladder was built for a different alpha")
    alpha = ladder.alpha
    x = cmath.exp(1j * alpha)
    ev = eval_poly(ladder, n, x)
    phi, dphi = complex(ev.phi), complex(ev.dphi)
    return (n * abs(phi) ** 2 - 2.0 * (phi.conjugate() * x * dphi).real) / math.pi


def deriv_asymptotic(n: int, alpha: float) -> AsymptoticPrediction:
    """``d/d alpha ln det T_{n-1} ~ -n^2 tan(alpha/2)/2 - cot(alpha/2)/8``."""
    alpha = _alpha(alpha)
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    value = -n * n * math.tan(alpha / 2) / 2 - 1 / (8 * math.tan(alpha / 2))
    return AsymptoticPrediction(value, Remainder.N_SIN2_INV, {"n": int(n), "alpha": alpha})
