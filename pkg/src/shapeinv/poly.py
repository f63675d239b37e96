"""Dense exact polynomials over the rationals and the Gaussian rationals."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Binary floats are rejected so that exact code paths never see them.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        return GaussianRational(other, 0)

    def __add__(self, other):
        o = self._lift(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * GaussianRational(o.re, -o.im)
        return GaussianRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, n: int):
        out = GaussianRational(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)


def _strip(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


class RationalPoly:
    """Polynomial in ``s`` with exact coefficients, index = power.

    Coefficients are Fractions, or GaussianRationals for the one oracle
    route that needs them.  Trailing zeros are never stored, so the zero
    polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, GaussianRational) else as_fraction(c) for c in coeffs]
        self.coeffs = tuple(_strip(cs))

    @classmethod
    def monomial(cls, k: int, c=1) -> "RationalPoly":
        return cls([0] * k + [c])

    @classmethod
    def constant(cls, c) -> "RationalPoly":
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("s" if k == 1 else f"s^{k}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __add__(self, other):
        other = _lift_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_lift_poly(other))

    def __rsub__(self, other):
        return _lift_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, RationalPoly):
            return RationalPoly(c * other for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RationalPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return RationalPoly(c / scalar for c in self.coeffs)

    def __pow__(self, n: int):
        out = RationalPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "RationalPoly"):
        """Exact long division; returns ``(quotient, remainder)``."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 0)
        lead = other.leading
        for k in range(len(rem) - 1, other.degree - 1, -1):
            c = rem[k] / lead
            if c == 0:
                continue
            shift = k - other.degree
            q[shift] = c
            for j, b in enumerate(other.coeffs):
                rem[shift + j] = rem[shift + j] - c * b
        return RationalPoly(q), RationalPoly(rem)

    def derive(self, times: int = 1) -> "RationalPoly":
        cs = list(self.coeffs)
        for _ in range(times):
            cs = [k * cs[k] for k in range(1, len(cs))]
        return RationalPoly(cs)

    def compose(self, inner: "RationalPoly") -> "RationalPoly":
        out = RationalPoly()
        for c in reversed(self.coeffs):
            out = out * inner + RationalPoly([c])
        return out

    def monic(self) -> "RationalPoly":
        if self.is_zero():
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self / self.leading

    def __call__(self, s):
        """Exact evaluation for exact arguments (Horner)."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def eval_float(self, s):
        """Floating evaluation; ``s`` may be a scalar or numpy array."""
        acc = np.zeros_like(np.asarray(s, dtype=float))
        for c in reversed(self.coeffs):
            acc = acc * s + float(c)
        return acc if np.ndim(acc) else float(acc)

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    def real_part(self) -> "RationalPoly":
        return RationalPoly(c.re if isinstance(c, GaussianRational) else c for c in self.coeffs)

    def imag_part(self) -> "RationalPoly":
        return RationalPoly(c.im if isinstance(c, GaussianRational) else 0 for c in self.coeffs)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]


GaussianRationalPoly = RationalPoly

S = RationalPoly([0, 1])


def _lift_poly(value) -> RationalPoly:
    if isinstance(value, RationalPoly):
        return value
    return RationalPoly([value])


def poly_from(coeffs: Sequence) -> RationalPoly:
    return RationalPoly(coeffs)
