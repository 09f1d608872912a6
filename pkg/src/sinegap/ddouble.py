"""Double-double arithmetic on numpy arrays.

A value is carried as an unevaluated sum ``hi + lo`` of two float64 arrays
with ``|lo| <= ulp(hi) / 2``, giving roughly 31 significant decimal digits.
All operations are elementwise and broadcast like ordinary numpy arithmetic;
scalars are 0-d arrays.

The algorithms are the classical error-free transformations (Knuth two-sum,
Dekker split/two-product) and the accurate add/mul/div of Hida, Li and
Bailey's QD library.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "DoubleDouble",
    "ExtendedScalar",
    "two_sum",
    "two_prod",
    "dd_sum",
    "dd_dot",
    "DD_PI",
    "DD_LN2",
]

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    """Return ``(s, e)`` with ``s = fl(a + b)`` and ``s + e == a + b`` exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def _quick_two_sum(a, b):
    # requires |a| >= |b|
    s = a + b
    e = b - (s - a)
    return s, e


def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


def two_prod(a, b):
    """Return ``(p, e)`` with ``p = fl(a * b)`` and ``p + e == a * b`` exactly."""
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


class DoubleDouble:
    """Elementwise double-double number (or array of them)."""

    __slots__ = ("hi", "lo")
    __array_priority__ = 100.0

    def __init__(self, hi, lo=None):
        hi = np.asarray(hi, dtype=np.float64)
        if lo is None:
            lo = np.zeros_like(hi)
        else:
            lo = np.asarray(lo, dtype=np.float64)
            hi, lo = _quick_two_sum(*np.broadcast_arrays(hi, lo))
        self.hi = hi
        self.lo = lo

    @classmethod
    def _raw(cls, hi, lo):
        obj = cls.__new__(cls)
        obj.hi = hi
        obj.lo = lo
        return obj

    @classmethod
    def from_string(cls, text: str) -> "DoubleDouble":
        """Parse a decimal literal to full double-double accuracy."""
        from decimal import Decimal, getcontext

        getcontext().prec = 50
        d = Decimal(text)
        hi = float(d)
        lo = float(d - Decimal(hi))
        return cls(hi, lo)

    # -- conversion ---------------------------------------------------------
    @property
    def shape(self):
        return self.hi.shape

    def __len__(self):
        return len(self.hi)

    def __getitem__(self, idx):
        return DoubleDouble._raw(self.hi[idx], self.lo[idx])

    def __setitem__(self, idx, value):
        value = _as_dd(value)
        self.hi[idx] = value.hi
        self.lo[idx] = value.lo

    def to_float(self):
        return self.hi + self.lo

    def __float__(self):
        return float(self.hi + self.lo)

    def __repr__(self):
        return f"DoubleDouble(hi={self.hi!r}, lo={self.lo!r})"

    def copy(self):
        return DoubleDouble._raw(self.hi.copy(), self.lo.copy())

    def reshape(self, *shape):
        return DoubleDouble._raw(self.hi.reshape(*shape), self.lo.reshape(*shape))

    @property
    def T(self):
        return DoubleDouble._raw(self.hi.T, self.lo.T)

    # -- arithmetic ---------------------------------------------------------
    def __neg__(self):
        return DoubleDouble._raw(-self.hi, -self.lo)

    def __abs__(self):
        sign = np.where(self.hi < 0, -1.0, 1.0)
        return DoubleDouble._raw(sign * self.hi, sign * self.lo)

    def __add__(self, other):
        if not isinstance(other, DoubleDouble):
            other = np.asarray(other, dtype=np.float64)
            s, e = two_sum(self.hi, other)
            e = e + self.lo
            return DoubleDouble._raw(*_quick_two_sum(s, e))
        s, e = two_sum(self.hi, other.hi)
        t, f = two_sum(self.lo, other.lo)
        e = e + t
        s, e = _quick_two_sum(s, e)
        e = e + f
        return DoubleDouble._raw(*_quick_two_sum(s, e))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_as_dd(other))

    def __rsub__(self, other):
        return _as_dd(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, DoubleDouble):
            other = np.asarray(other, dtype=np.float64)
            p, e = two_prod(self.hi, other)
            e = e + self.lo * other
            return DoubleDouble._raw(*_quick_two_sum(p, e))
        p, e = two_prod(self.hi, other.hi)
        e = e + (self.hi * other.lo + self.lo * other.hi)
        return DoubleDouble._raw(*_quick_two_sum(p, e))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_dd(other)
        q1 = self.hi / other.hi
        r = self - other * q1
        q2 = r.hi / other.hi
        r = r - other * q2
        q3 = r.hi / other.hi
        q1, q2 = _quick_two_sum(q1, q2)
        return DoubleDouble._raw(q1, q2) + q3

    def __rtruediv__(self, other):
        return _as_dd(other) / self

    def __pow__(self, k: int):
        if int(k) != k or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = DoubleDouble(np.ones_like(self.hi))
        base = self
        k = int(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparisons use the leading component and break ties on the tail
    def __lt__(self, other):
        other = _as_dd(other)
        return (self.hi < other.hi) | ((self.hi == other.hi) & (self.lo < other.lo))

    def __gt__(self, other):
        return _as_dd(other) < self

    def __le__(self, other):
        return ~(self > other)

    def __ge__(self, other):
        return ~(self < other)

    # -- elementary functions ----------------------------------------------
    def sqrt(self):
        hi = self.hi
        if np.any(hi < 0):
            raise ValueError("sqrt of negative double-double")
        with np.errstate(divide="ignore", invalid="ignore"):
            y = np.sqrt(hi)
            r = self - DoubleDouble._raw(*two_prod(y, y))
            corr = np.where(y > 0, r.hi / (2.0 * y), 0.0)
        return DoubleDouble._raw(*_quick_two_sum(y, corr))

    def exp(self):
        k = np.round(self.hi / DD_LN2.hi)
        r = self - DD_LN2 * k
        r = r * (1.0 / 512.0)
        # Taylor series on |r| <= ln2/1024
        term = r
        acc = r
        for j in range(2, 14):
            term = term * r / float(j)
            acc = acc + term
        # (1 + acc)^(512) via repeated squaring of e^r - 1
        for _ in range(9):
            acc = acc * acc + acc * 2.0
        acc = acc + 1.0
        scale = np.ldexp(1.0, k.astype(np.int64))
        return DoubleDouble._raw(acc.hi * scale, acc.lo * scale)

    def log(self):
        if np.any(self.hi <= 0):
            raise ValueError("log of non-positive double-double")
        x = DoubleDouble(np.log(self.hi))
        # one Newton step on exp(x) = a doubles the accuracy
        return x + self * (-x).exp() - 1.0

    def sin(self):
        return _sincos(self)[0]

    def cos(self):
        return _sincos(self)[1]

    # -- reductions ---------------------------------------------------------
    def sum(self, axis=None):
        return dd_sum(self, axis=axis)


ExtendedScalar = DoubleDouble


def _as_dd(x) -> DoubleDouble:
    return x if isinstance(x, DoubleDouble) else DoubleDouble(x)


def dd_sum(x: DoubleDouble, axis=None) -> DoubleDouble:
    """Accurate pairwise reduction of a double-double array."""
    hi, lo = x.hi, x.lo
    if axis is None:
        hi, lo = hi.ravel(), lo.ravel()
        axis = 0
    hi = np.moveaxis(hi, axis, -1)
    lo = np.moveaxis(lo, axis, -1)
    acc = DoubleDouble._raw(hi, lo)
    while acc.hi.shape[-1] > 1:
        n = acc.hi.shape[-1]
        half = n // 2
        left = DoubleDouble._raw(acc.hi[..., :half], acc.lo[..., :half])
        right = DoubleDouble._raw(acc.hi[..., half : 2 * half], acc.lo[..., half : 2 * half])
        merged = left + right
        if n % 2:
            tail = DoubleDouble._raw(acc.hi[..., -1:], acc.lo[..., -1:])
            merged = DoubleDouble._raw(
                np.concatenate([merged.hi, tail.hi], axis=-1),
                np.concatenate([merged.lo, tail.lo], axis=-1),
            )
        acc = merged
    if acc.hi.shape[-1] == 0:
        z = np.zeros(acc.hi.shape[:-1])
        return DoubleDouble._raw(z, z.copy())
    return DoubleDouble._raw(acc.hi[..., 0], acc.lo[..., 0])


def dd_dot(x: DoubleDouble, y: DoubleDouble, axis=-1) -> DoubleDouble:
    """Sum of elementwise products along ``axis``."""
    return dd_sum(_as_dd(x) * _as_dd(y), axis=axis)


DD_PI = DoubleDouble(3.141592653589793, 1.2246467991473532e-16)
DD_LN2 = DoubleDouble(0.6931471805599453, 2.3190468138462996e-17)
_PIO2 = (1.5707963267948966, 6.123233995736766e-17, -1.4973849048591698e-33)


def _sincos(x: DoubleDouble):
    k = np.round(x.hi / _PIO2[0])
    # three-part reduction keeps ~31 digits for |x| up to ~1e5
    r = x - DoubleDouble._raw(*two_prod(k, _PIO2[0]))
    r = r - DoubleDouble._raw(*two_prod(k, _PIO2[1]))
    r = r - k * _PIO2[2]
    r2 = r * r
    # Taylor series; |r| <= pi/4 so 15 terms reach ~1e-33
    s_term = r
    s_acc = r
    c_term = DoubleDouble(np.ones_like(r.hi))
    c_acc = c_term
    for j in range(1, 16):
        s_term = -(s_term * r2) / float((2 * j) * (2 * j + 1))
        s_acc = s_acc + s_term
        c_term = -(c_term * r2) / float((2 * j - 1) * (2 * j))
        c_acc = c_acc + c_term
    q = np.mod(k, 4).astype(np.int64)
    sin_hi = np.choose(q, [s_acc.hi, c_acc.hi, -s_acc.hi, -c_acc.hi])
    sin_lo = np.choose(q, [s_acc.lo, c_acc.lo, -s_acc.lo, -c_acc.lo])
    cos_hi = np.choose(q, [c_acc.hi, -s_acc.hi, -c_acc.hi, s_acc.hi])
    cos_lo = np.choose(q, [c_acc.lo, -s_acc.lo, -c_acc.lo, s_acc.lo])
    return DoubleDouble._raw(sin_hi, sin_lo), DoubleDouble._raw(cos_hi, cos_lo)
