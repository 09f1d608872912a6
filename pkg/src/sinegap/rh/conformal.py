"""Conformal map of the exterior of the arc and related functions.

The arc is ``Sigma = {e^{i theta}: alpha <= theta <= 2 pi - alpha}``. All
branches are built from one logarithm::

    r(z) = (z - e^{i alpha}) / (z - e^{-i alpha})

maps ``Sigma`` onto the ray ``arg r = alpha``, so taking ``arg r`` in
``(alpha - 2 pi, alpha]`` gives a logarithm ``L(z)`` analytic off ``Sigma``
and vanishing at infinity. Then ``a = exp(L/4)`` and
``w = (z - e^{-i alpha}) a^2`` is the square root of
``(z - e^{i alpha})(z - e^{-i alpha})`` with ``w(z)/z -> 1`` at infinity.

A principal square root of ``r`` would put the cut on the chord between the
endpoints instead of on the arc.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import BoundaryError, InvalidArgumentError

__all__ = [
    "ConformalFrame",
    "psi",
    "mu",
    "omega",
    "omega_series",
    "a_quarter_root",
    "w_root",
    "arc_log",
    "arc_distance",
    "on_arc",
    "boundary_values",
]

_ARC_TOL = 1e-12


def _check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < math.pi:
        raise InvalidArgumentError(f"alpha must lie in (0, pi), got {alpha!r}")
    return alpha


def arc_distance(z, alpha: float):
    """Euclidean distance from ``z`` to the closed arc."""
    z = np.asarray(z, dtype=np.complex128)
    theta = np.mod(np.angle(z), 2 * math.pi)
    inside = (theta >= alpha) & (theta <= 2 * math.pi - alpha)
    radial = np.abs(np.abs(z) - 1.0)
    ends = np.minimum(np.abs(z - np.exp(1j * alpha)), np.abs(z - np.exp(-1j * alpha)))
    return np.where(inside, radial, ends)


def on_arc(z, alpha: float, tol: float = _ARC_TOL):
    return arc_distance(z, alpha) < tol


def _guard(z, alpha):
    z = np.asarray(z, dtype=np.complex128)
    if np.any(on_arc(z, alpha)):
        raise BoundaryError("point lies on the arc, where the function has a jump")
    return z


def _out(x):
    return complex(x) if np.ndim(x) == 0 else x


def _arc_log(z, alpha):
    ea = np.exp(1j * alpha)
    r = (z - ea) / (z - np.conj(ea))
    return np.log(np.abs(r)) + 1j * (np.angle(-r * np.conj(ea)) + alpha - math.pi)


def arc_log(z, alpha: float):
    """``ln((z - e^{i alpha}) / (z - e^{-i alpha}))``, analytic off the arc, zero at infinity.

    Also equals the contour integral of ``1/(xi - z)`` along the arc traversed
    clockwise from ``e^{-i alpha}`` to ``e^{i alpha}``.
    """
    alpha = _check_alpha(alpha)
    return _out(_arc_log(_guard(z, alpha), alpha))


def a_quarter_root(z, alpha: float):
    """``a(z) = ((z - e^{i alpha}) / (z - e^{-i alpha}))^{1/4}`` with ``a -> 1`` at infinity."""
    alpha = _check_alpha(alpha)
    return _out(np.exp(0.25 * _arc_log(_guard(z, alpha), alpha)))


def _w(z, alpha):
    return (z - np.exp(-1j * alpha)) * np.exp(0.5 * _arc_log(z, alpha))


def w_root(z, alpha: float):
    """``sqrt((z - e^{i alpha})(z - e^{-i alpha}))`` analytic off the arc, ``~ z`` at infinity."""
    alpha = _check_alpha(alpha)
    return _out(_w(_guard(z, alpha), alpha))


def psi(z, alpha: float):
    """``(z + 1 + w(z)) / (2 cos(alpha/2))``, mapping the exterior of the arc outside the unit disc.

    >>> abs(psi(2.0, math.pi / 2) - (3 + math.sqrt(5)) / math.sqrt(2)) < 1e-12
    True
    """
    alpha = _check_alpha(alpha)
    z = _guard(z, alpha)
    return _out((z + 1.0 + _w(z, alpha)) / (2.0 * math.cos(alpha / 2)))


def mu(z, alpha: float):
    """Companion map with the opposite sign of the root; ``psi * mu = z``."""
    alpha = _check_alpha(alpha)
    z = _guard(z, alpha)
    return _out((z + 1.0 - _w(z, alpha)) / (2.0 * math.cos(alpha / 2)))


def _omega_radius(alpha):
    return math.sin(alpha)


def omega(z, alpha: float):
    """``(ln(psi(z) / sqrt(z)))^2`` near ``e^{i alpha}``; analytic across the arc.

    Defined on the disc ``|z - e^{i alpha}| < sin(alpha)``. At points on the
    arc the two boundary values of ``psi`` give the same result.
    """
    alpha = _check_alpha(alpha)
    z = np.asarray(z, dtype=np.complex128)
    ea = np.exp(1j * alpha)
    if np.any(np.abs(z - ea) >= _omega_radius(alpha)):
        raise InvalidArgumentError("omega is only defined on the disc |z - e^{i alpha}| < sin(alpha)")
    # on the arc either boundary value works since the square removes the sign
    z_safe = np.where(on_arc(z, alpha), z * (1.0 + 1e-15), z)
    g = (z_safe + 1.0 + _w(z_safe, alpha)) / (2.0 * math.cos(alpha / 2))
    lg = np.log(g / np.sqrt(z_safe))
    return _out(lg * lg)


def omega_series(z, alpha: float):
    """Two-term expansion of :func:`omega` about ``u = z - e^{i alpha} = 0``."""
    alpha = _check_alpha(alpha)
    u = np.asarray(z, dtype=np.complex128) - np.exp(1j * alpha)
    lead = 1j * math.tan(alpha / 2) * np.exp(-1j * alpha)
    em = np.exp(-1j * alpha)
    c1 = (1.0 - 2.0 * em - 2.0 * em * em) / (6j * math.sin(alpha))
    return _out(lead * u * (1.0 - c1 * u))


@dataclass(frozen=True)
class ConformalFrame:
    """Branch data for one arc; methods mirror the module functions."""

    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))

    @property
    def gamma(self) -> float:
        return math.cos(self.alpha / 2)

    @property
    def endpoints(self) -> tuple[complex, complex]:
        e = complex(np.exp(1j * self.alpha))
        return e, e.conjugate()

    def w(self, z):
        return w_root(z, self.alpha)

    def psi(self, z):
        return psi(z, self.alpha)

    def mu(self, z):
        return mu(z, self.alpha)

    def a(self, z):
        return a_quarter_root(z, self.alpha)

    def omega(self, z):
        return omega(z, self.alpha)

    def w_plus(self, theta):
        """Boundary value of ``w`` on the arc from outside the unit circle."""
        theta = np.asarray(theta, dtype=np.float64)
        return 1j * np.exp(0.5j * theta) * np.sqrt(2.0 * (math.cos(self.alpha) - np.cos(theta)))


def boundary_values(fn, theta: float, delta: float = 1e-6):
    """Limits of ``fn`` on the circle at angle ``theta`` from outside and inside.

    ``fn`` is evaluated at ``(1 +- k delta) e^{i theta}`` for ``k = 1, 2, 4``
    and the three samples are extrapolated to ``delta -> 0`` (Richardson,
    quadratic in the offset). Works for scalar or array valued ``fn``.
    """
    x = np.exp(1j * theta)

    def limit(sign):
        f1, f2, f4 = (np.asarray(fn(x * (1.0 + sign * k * delta))) for k in (1, 2, 4))
        # cancel the linear and quadratic terms in the offset
        return (8.0 * f1 - 6.0 * f2 + f4) / 3.0

    return _out(limit(+1)), _out(limit(-1))
