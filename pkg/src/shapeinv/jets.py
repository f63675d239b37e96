"""Truncated Taylor arithmetic.

A :class:`TaylorJet` stores normalized coefficients ``c[k] = f^(k)(x0)/k!``
for ``k = 0..N``.  Coefficients may carry trailing batch dimensions, so
one jet can describe a function at many anchors at once; all operations
broadcast over the batch.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InsufficientOrder


class TaylorJet:
    __slots__ = ("c",)
    __array_priority__ = 1000

    def __init__(self, coeffs):
        c = np.asarray(coeffs, dtype=float)
        if c.ndim == 0:
            c = c[None]
        self.c = c

    # -- construction ----------------------------------------------------
    @classmethod
    def variable(cls, x0, order: int) -> "TaylorJet":
        x0 = np.asarray(x0, dtype=float)
        c = np.zeros((order + 1,) + x0.shape)
        c[0] = x0
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, order: int, shape=()) -> "TaylorJet":
        c = np.zeros((order + 1,) + tuple(shape))
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return self.c.shape[0] - 1

    @property
    def value(self):
        return self.c[0]

    def derivative_value(self, k: int):
        """``f^(k)(x0)``."""
        if k > self.order:
            raise InsufficientOrder(f"jet of order {self.order} has no derivative {k}")
        return self.c[k] * math.factorial(k)

    def truncate(self, order: int) -> "TaylorJet":
        if order > self.order:
            raise InsufficientOrder(f"cannot raise order {self.order} to {order}")
        return TaylorJet(self.c[: order + 1])

    def d(self) -> "TaylorJet":
        """Derivative with respect to the jet variable; order drops by one."""
        if self.order < 1:
            raise InsufficientOrder("derivative of an order-0 jet")
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * (self.c.ndim - 1))
        return TaylorJet(self.c[1:] * k)

    def __repr__(self):
        return f"TaylorJet({self.c!r})"

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "TaylorJet":
        if isinstance(other, TaylorJet):
            return other
        c = np.zeros_like(self.c)
        c[0] = other
        return TaylorJet(c)

    def _match(self, other: "TaylorJet"):
        n = min(self.order, other.order)
        return self.c[: n + 1], other.c[: n + 1]

    def __add__(self, other):
        if not isinstance(other, TaylorJet):
            c = self.c.copy()
            c[0] = c[0] + other
            return TaylorJet(c)
        a, b = self._match(other)
        return TaylorJet(a + b)

    __radd__ = __add__

    def __neg__(self):
        return TaylorJet(-self.c)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TaylorJet):
            return TaylorJet(self.c * other)
        a, b = self._match(other)
        out = np.zeros(np.broadcast_shapes(a.shape, b.shape))
        for k in range(out.shape[0]):
            out[k] = np.sum(a[: k + 1] * b[k::-1], axis=0)
        return TaylorJet(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TaylorJet):
            return TaylorJet(self.c / other)
        a, b = self._match(other)
        shape = np.broadcast_shapes(a.shape, b.shape)
        out = np.zeros(shape)
        for k in range(shape[0]):
            acc = a[k] - np.sum(b[1: k + 1] * out[k - 1:: -1][:k], axis=0) if k else a[0]
            out[k] = acc / b[0]
        return TaylorJet(out)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) and p >= 0:
            out = TaylorJet.constant(1.0, self.order, self.c.shape[1:])
            base = self
            n = int(p)
            while n:
                if n & 1:
                    out = out * base
                base = base * base
                n >>= 1
            return out
        if isinstance(p, (int, np.integer)):
            return 1.0 / (self ** (-int(p)))
        return power(self, float(p))


def _series(a: TaylorJet, first, step):
    """Shared driver for recurrences of the form ``y_k = step(k, y)``."""
    shape = a.c.shape
    out = np.zeros(shape)
    out[0] = first
    for k in range(1, shape[0]):
        out[k] = step(k, out)
    return TaylorJet(out)


def _weighted(a: np.ndarray, y: np.ndarray, k: int):
    """``sum_{j=1..k} j a_j y_{k-j}``."""
    j = np.arange(1, k + 1).reshape((-1,) + (1,) * (a.ndim - 1))
    return np.sum(j * a[1: k + 1] * y[k - 1:: -1][:k], axis=0)


def exp(a: TaylorJet) -> TaylorJet:
    c = a.c
    return _series(a, np.exp(c[0]), lambda k, y: _weighted(c, y, k) / k)


def log(a: TaylorJet) -> TaylorJet:
    c = a.c

    def step(k, y):
        j = np.arange(1, k).reshape((-1,) + (1,) * (c.ndim - 1))
        inner = np.sum(j * y[1:k] * c[k - 1: 0: -1], axis=0) if k > 1 else 0.0
        return (c[k] - inner / k) / c[0]

    return _series(a, np.log(c[0]), step)


def power(a: TaylorJet, p: float) -> TaylorJet:
    """``a**p`` for a positive constant term."""
    c = a.c

    def step(k, y):
        j = np.arange(1, k + 1).reshape((-1,) + (1,) * (c.ndim - 1))
        return np.sum((p * j - (k - j)) * c[1: k + 1] * y[k - 1:: -1][:k], axis=0) / (k * c[0])

    return _series(a, c[0] ** p, step)


def sqrt(a: TaylorJet) -> TaylorJet:
    return power(a, 0.5)


def _sincos(a: TaylorJet, hyperbolic: bool):
    c = a.c
    n = c.shape[0]
    s = np.zeros_like(c)
    co = np.zeros_like(c)
    s[0] = np.sinh(c[0]) if hyperbolic else np.sin(c[0])
    co[0] = np.cosh(c[0]) if hyperbolic else np.cos(c[0])
    sign = 1.0 if hyperbolic else -1.0
    for k in range(1, n):
        s[k] = _weighted(c, co, k) / k
        co[k] = sign * _weighted(c, s, k) / k
    return TaylorJet(s), TaylorJet(co)


def sin(a: TaylorJet) -> TaylorJet:
    return _sincos(a, False)[0]


def cos(a: TaylorJet) -> TaylorJet:
    return _sincos(a, False)[1]


def sinh(a: TaylorJet) -> TaylorJet:
    return _sincos(a, True)[0]


def cosh(a: TaylorJet) -> TaylorJet:
    return _sincos(a, True)[1]


def atan(a: TaylorJet) -> TaylorJet:
    if a.order == 0:
        return TaylorJet(np.arctan(a.c))
    deriv = a.d() / (1.0 + a.truncate(a.order - 1) * a.truncate(a.order - 1))
    return integrate(deriv, np.arctan(a.c[0]))


def integrate(a: TaylorJet, constant) -> TaylorJet:
    """Antiderivative jet with the given value at the anchor."""
    k = np.arange(1, a.order + 2).reshape((-1,) + (1,) * (a.c.ndim - 1))
    c = np.concatenate([np.asarray(constant, dtype=float)[None] * np.ones((1,) + a.c.shape[1:]),
                        a.c / k])
    return TaylorJet(c)


def polyval(coeffs, x: TaylorJet) -> TaylorJet:
    """Horner evaluation of a polynomial (ascending float coefficients) on a jet."""
    out = TaylorJet.constant(0.0, x.order, x.c.shape[1:])
    for c in reversed(list(coeffs)):
        out = out * x + float(c)
    return out
