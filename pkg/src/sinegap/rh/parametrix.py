"""Outer parametrix ``N`` and the first correction ``R_1`` away from the endpoints."""

from __future__ import annotations

import math

import numpy as np

from ..errors import InvalidArgumentError
from ..opuc import ArcWeight
from .conformal import _arc_log, _guard
from .constants import ALPHA_0
from .szego import SzegoData

__all__ = ["outer_parametrix", "first_correction_coefficients", "first_correction", "endpoint_radius"]


def _szego(weight) -> SzegoData:
    if isinstance(weight, SzegoData):
        return weight
    return SzegoData(weight if isinstance(weight, ArcWeight) else ArcWeight(float(weight)))


def outer_parametrix(weight, z) -> np.ndarray:
    """``N(z) = 1/2 D_inf^s3 [[a + 1/a, -i(a - 1/a)], [i(a - 1/a), a + 1/a]] D(z)^-s3``.

    ``weight`` may be an :class:`ArcWeight`, a prebuilt :class:`SzegoData`, or
    an angle (constant weight). Returns shape ``(2, 2)`` for scalar ``z`` and
    ``(..., 2, 2)`` for arrays.
    """
    sz = _szego(weight)
    z = _guard(z, sz.alpha)
    a = np.exp(0.25 * _arc_log(z, sz.alpha))
    d = np.asarray(sz.D(z))
    d_inf = sz.D_infinity
    p, m = a + 1.0 / a, a - 1.0 / a
    out = np.empty(z.shape + (2, 2), dtype=np.complex128)
    out[..., 0, 0] = 0.5 * p * d_inf / d
    out[..., 0, 1] = -0.5j * m * d_inf * d
    out[..., 1, 0] = 0.5j * m / (d_inf * d)
    out[..., 1, 1] = 0.5 * p * d / d_inf
    return out


def endpoint_radius(alpha: float) -> float:
    """Radius of the discs around ``e^{+-i alpha}`` excluded from the outer region."""
    return min(math.sin(alpha / 2), math.sin(ALPHA_0 / 2))


def first_correction_coefficients(weight, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Residue matrices ``A1`` at ``e^{i alpha}`` and ``B1 = conj(A1)`` at ``e^{-i alpha}``."""
    sz = _szego(weight)
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    alpha = sz.alpha
    d2 = sz.D_infinity**2
    a1 = (math.cos(alpha / 2) / (8.0 * n)) * np.array([[1.0, -1j * d2], [-1j / d2, -1.0]]) * np.exp(0.5j * alpha)
    return a1, np.conj(a1)


def first_correction(weight, n: int, z) -> np.ndarray:
    """``R_1(z) = A1/(z - e^{i alpha}) + B1/(z - e^{-i alpha})`` outside the endpoint discs."""
    sz = _szego(weight)
    alpha = sz.alpha
    z = np.asarray(z, dtype=np.complex128)
    ea = np.exp(1j * alpha)
    delta = endpoint_radius(alpha)
    if np.any(np.minimum(np.abs(z - ea), np.abs(z - np.conj(ea))) <= delta):
        raise InvalidArgumentError(f"z lies within {delta:.3g} of an endpoint, where R_1 has another form")
    a1, b1 = first_correction_coefficients(sz, n)
    za = (1.0 / (z - ea))[..., None, None]
    zb = (1.0 / (z - np.conj(ea)))[..., None, None]
    return a1 * za + b1 * zb
