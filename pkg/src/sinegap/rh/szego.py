"""Szego function of a weight on the arc.

``D(z) = exp[w(z) / (2 pi i) * int_Sigma ln f(xi) / w_+(xi) dxi / (xi - z)]``
with ``Sigma`` traversed clockwise (the exterior of the circle is the ``+``
side, on the left) and ``w_+`` the exterior boundary value of ``w``.
``D`` is analytic off the arc, ``D_+ D_- = f`` on it, and
``D_inf = lim D(z) = exp[-1/(2 pi i) int_Sigma ln f dxi / w_+]``.

The integral is computed in ``t`` with ``theta = alpha + (2 pi - 2 alpha) sin^2(t/2)``,
which cancels the inverse square roots at both endpoints. Points close to
the arc are handled by subtracting the Cauchy singularity and using panels
graded geometrically towards the nearest arc point.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import AccuracyWarning, InvalidArgumentError
from ..numerics import gauss_legendre
from ..opuc import ArcWeight
from .conformal import _arc_log, _guard, _w, arc_distance

__all__ = ["SzegoData", "szego_function", "szego_infinity"]

_NEAR = 1.0
_PANEL_NODES = 20
_DOUBLING_TOL = 1e-8


def _theta_of_t(t, alpha):
    s2 = np.sin(0.5 * t) ** 2
    return alpha + (2 * math.pi - 2 * alpha) * s2, s2


def _density(t, alpha):
    """``h(t)`` with ``dxi / w_+(xi) = h(t) dt`` along the clockwise arc, and ``dxi/dt``."""
    theta, s2 = _theta_of_t(t, alpha)
    dtheta = (math.pi - alpha) * np.sin(t)
    # 2(cos(alpha) - cos(theta)) written without cancellation at either endpoint
    gap = 4.0 * np.sin((math.pi - alpha) * s2) * np.sin((math.pi - alpha) * np.cos(0.5 * t) ** 2)
    w_plus = 1j * np.exp(0.5j * theta) * np.sqrt(gap)
    dxi = -1j * np.exp(1j * theta) * dtheta
    with np.errstate(invalid="ignore", divide="ignore"):
        h = dxi / w_plus
    # endpoint limit: sin t / sqrt(gap) -> constant; sample just inside
    bad = ~np.isfinite(h)
    if np.any(bad):
        h[bad] = _density(np.clip(t[bad], 1e-9, math.pi - 1e-9), alpha)[0]
    return h, dxi, theta


@dataclass(frozen=True, eq=False)
class SzegoData:
    """Szego function of ``weight`` evaluated by ``nodes``-point Gauss-Legendre in ``t``."""

    weight: ArcWeight
    nodes: int = 64
    _t: np.ndarray = field(init=False, repr=False)
    _wt: np.ndarray = field(init=False, repr=False)
    _xi: np.ndarray = field(init=False, repr=False)
    _g: np.ndarray = field(init=False, repr=False)
    D_infinity: float = field(init=False)

    def __post_init__(self):
        if not isinstance(self.weight, ArcWeight):
            object.__setattr__(self, "weight", ArcWeight(float(self.weight)))
        if int(self.nodes) != self.nodes or self.nodes < 8:
            raise InvalidArgumentError("nodes must be an integer >= 8")
        t, wt, xi, g = self._rule(int(self.nodes))
        for name, val in (("_t", t), ("_wt", wt), ("_xi", xi), ("_g", g)):
            object.__setattr__(self, name, val)
        d_inf = self._log_d_inf(wt, g)
        if self.weight.f is not None:
            t2, wt2, _, g2 = self._rule(2 * int(self.nodes))
            diff = abs(self._log_d_inf(wt2, g2) - d_inf)
            if diff > _DOUBLING_TOL:
                warnings.warn(f"D_inf changed by {diff:.1e} under node doubling", AccuracyWarning, stacklevel=3)
        object.__setattr__(self, "D_infinity", float(math.exp(d_inf.real)))

    def _rule(self, m):
        rule = gauss_legendre(m)
        t, wt = rule.on_interval(0.0, math.pi)
        h, dxi, theta = _density(t, self.weight.alpha)
        lf = np.log(self.weight(theta))
        return t, wt, np.exp(1j * theta), lf * h

    @staticmethod
    def _log_d_inf(wt, g):
        return -np.dot(wt, g) / (2j * math.pi)

    @property
    def alpha(self) -> float:
        return self.weight.alpha

    @property
    def is_trivial(self) -> bool:
        return self.weight.f is None

    def log_D(self, z):
        """``ln D(z)`` for ``z`` off the arc (scalar or array)."""
        alpha = self.alpha
        z = _guard(z, alpha)
        if self.is_trivial:
            out = np.zeros(z.shape, dtype=np.complex128)
            return complex(out) if out.ndim == 0 else out
        flat = np.atleast_1d(z).ravel()
        result = np.empty(flat.shape, dtype=np.complex128)
        dist = arc_distance(flat, alpha)
        far = dist >= _NEAR
        if np.any(far):
            zf = flat[far]
            integral = (self._g[None, :] / (self._xi[None, :] - zf[:, None])) @ self._wt
            result[far] = _w(zf, alpha) * integral / (2j * math.pi)
        for i in np.nonzero(~far)[0]:
            result[i] = _w(flat[i], alpha) * self._near_integral(flat[i], dist[i]) / (2j * math.pi)
        result = result.reshape(np.shape(z))
        return complex(result) if result.ndim == 0 else result

    def _near_integral(self, z, dist):
        alpha = self.alpha
        # nearest arc point, as an angle and as a value of t
        theta0 = float(np.clip(np.mod(np.angle(z), 2 * math.pi), alpha, 2 * math.pi - alpha))
        t0 = 2.0 * math.asin(math.sqrt((theta0 - alpha) / (2 * math.pi - 2 * alpha)))
        f0 = float(self.weight(np.array([theta0]))[0])
        gap0 = 4.0 * math.sin(0.5 * (theta0 + alpha)) * math.sin(0.5 * (theta0 - alpha))
        g0 = math.log(f0) / (1j * np.exp(0.5j * theta0) * math.sqrt(gap0)) if gap0 > 0 else 0.0
        breaks = _graded_breaks(t0, max(dist, 1e-14) / max((math.pi - alpha) * math.sin(max(t0, 1e-3)), 1e-3))
        rule = gauss_legendre(_PANEL_NODES)
        total = 0.0 + 0.0j
        for lo, hi in zip(breaks[:-1], breaks[1:]):
            t, wt = rule.on_interval(lo, hi)
            h, dxi, theta = _density(t, alpha)
            xi = np.exp(1j * theta)
            integrand = (np.log(self.weight(theta)) * h - g0 * dxi) / (xi - z)
            total += np.dot(wt, integrand)
        # the subtracted piece integrates in closed form
        return total + g0 * _arc_log(np.asarray(z), alpha)

    def D(self, z):
        """Szego function ``D(z)``."""
        out = np.exp(self.log_D(z))
        return complex(out) if np.ndim(out) == 0 else out

    __call__ = D


def _graded_breaks(t0, scale, ratio=4.0):
    pts = {0.0, math.pi, t0}
    step = scale
    while step < math.pi:
        for p in (t0 - step, t0 + step):
            if 0.0 < p < math.pi:
                pts.add(p)
        step *= ratio
    return np.array(sorted(pts))


def szego_function(weight, z, nodes: int = 64):
    """``D(z)`` for an :class:`ArcWeight` (or an ``alpha``, meaning ``f = 1``)."""
    return SzegoData(weight, nodes).D(z)


def szego_infinity(weight, nodes: int = 64) -> float:
    """``D_inf``, real and positive for a symmetric weight."""
    return SzegoData(weight, nodes).D_infinity
