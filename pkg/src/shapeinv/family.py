"""The six canonical hypergeometric-type families.

Each family is the equation ``sigma*y'' + tau*y' + lambda*y = 0`` with
``tau(s) = alpha*s + beta`` and one of six normalized ``sigma``.  The
family carries its interval, weight, cutoff and the exact eigenvalues.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import OutOfDomain, ParameterConstraintViolated
from .poly import RationalPoly, as_fraction

INF = math.inf


class SigmaCase(enum.Enum):
    ONE = "one"
    S = "s"
    ONE_MINUS_S2 = "one-minus-s2"
    S2_MINUS_1 = "s2-minus-1"
    S2 = "s2"
    S2_PLUS_1 = "s2-plus-1"

    @classmethod
    def parse(cls, tag: "str | SigmaCase") -> "SigmaCase":
        if isinstance(tag, SigmaCase):
            return tag
        key = tag.strip().lower().replace("_", "-")
        aliases = {
            "1": "one", "oneminuss2": "one-minus-s2",
            "1-s2": "one-minus-s2", "1-s^2": "one-minus-s2",
            "s2minus1": "s2-minus-1", "s2-1": "s2-minus-1", "s^2-1": "s2-minus-1",
            "s^2": "s2", "s2plus1": "s2-plus-1", "s2+1": "s2-plus-1", "s^2+1": "s2-plus-1",
        }
        key = aliases.get(key, key)
        for case in cls:
            if case.value == key:
                return case
        raise ValueError(f"unknown sigma case {tag!r}; choose from {[c.value for c in cls]}")

    @property
    def sigma_coeffs(self) -> tuple[Fraction, Fraction, Fraction]:
        """``(sigma0, sigma1, sigma2)`` with ``sigma = sigma2*s^2 + sigma1*s + sigma0``."""
        return _SIGMA[self]

    @property
    def infinite(self) -> bool:
        return self in (SigmaCase.ONE, SigmaCase.S, SigmaCase.ONE_MINUS_S2)

    @property
    def interval(self) -> tuple[float, float]:
        return _INTERVAL[self]


_F = Fraction
_SIGMA = {
    SigmaCase.ONE: (_F(1), _F(0), _F(0)),
    SigmaCase.S: (_F(0), _F(1), _F(0)),
    SigmaCase.ONE_MINUS_S2: (_F(1), _F(0), _F(-1)),
    SigmaCase.S2_MINUS_1: (_F(-1), _F(0), _F(1)),
    SigmaCase.S2: (_F(0), _F(0), _F(1)),
    SigmaCase.S2_PLUS_1: (_F(1), _F(0), _F(1)),
}
_INTERVAL = {
    SigmaCase.ONE: (-INF, INF),
    SigmaCase.S: (0.0, INF),
    SigmaCase.ONE_MINUS_S2: (-1.0, 1.0),
    SigmaCase.S2_MINUS_1: (1.0, INF),
    SigmaCase.S2: (0.0, INF),
    SigmaCase.S2_PLUS_1: (-INF, INF),
}


@dataclass(frozen=True)
class WeightSpec:
    """Closed-form weight ``rho(s)``.

    ``rho = prod(factor**exponent) * exp(poly(s) + inv_coeff/s + atan_coeff*atan(s))``
    where each factor is one of ``"s"``, ``"1+s"``, ``"1-s"``, ``"s-1"``,
    ``"1+s^2"``.
    """

    factors: tuple[tuple[str, Fraction], ...] = ()
    exp_poly: tuple[Fraction, ...] = ()
    inv_coeff: Fraction = Fraction(0)
    atan_coeff: Fraction = Fraction(0)

    def log_value(self, s, da=None, db=None, interval=(-INF, INF)):
        """``log rho`` at ``s``; ``da = s - a`` and ``db = b - s`` may be
        supplied to keep endpoint factors accurate near finite endpoints."""
        s = np.asarray(s, dtype=float)
        out = np.zeros_like(s)
        for name, e in self.factors:
            out = out + float(e) * np.log(_factor_value(name, s, da, db, interval))
        if self.exp_poly:
            acc = np.zeros_like(s)
            for c in reversed(self.exp_poly):
                acc = acc * s + float(c)
            out = out + acc
        if self.inv_coeff:
            out = out + float(self.inv_coeff) / s
        if self.atan_coeff:
            out = out + float(self.atan_coeff) * np.arctan(s)
        return out

    def value(self, s, da=None, db=None, interval=(-INF, INF)):
        return np.exp(self.log_value(s, da, db, interval))

    def formula(self) -> str:
        parts = []
        for name, e in self.factors:
            if e == 0:
                continue
            base = name if name == "s" else f"({name})"
            parts.append(base if e == 1 else f"{base}^({e})" if e.denominator != 1 or e < 0 else f"{base}^{e}")
        expo = []
        names = ["", "s", "s^2"]
        for k in range(len(self.exp_poly) - 1, -1, -1):
            c = self.exp_poly[k]
            if c:
                expo.append(_term(c, names[k]))
        if self.inv_coeff:
            expo.append(_term(self.inv_coeff, "/s", suffix=True))
        if self.atan_coeff:
            expo.append(_term(self.atan_coeff, "atan(s)"))
        if expo:
            e = " + ".join(expo).replace("+ -", "- ")
            parts.append(f"exp({e})")
        return "*".join(parts) if parts else "1"


def _term(c: Fraction, mono: str, suffix: bool = False) -> str:
    if suffix:
        return f"{c}{mono}"
    if not mono:
        return str(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{c}*{mono}"


def _factor_value(name, s, da, db, interval):
    a, b = interval
    if name == "s":
        return da if (da is not None and a == 0) else s
    if name == "1+s":
        return da if (da is not None and a == -1) else 1.0 + s
    if name == "1-s":
        return db if (db is not None and b == 1) else 1.0 - s
    if name == "s-1":
        return da if (da is not None and a == 1) else s - 1.0
    if name == "1+s^2":
        return 1.0 + s * s
    raise ValueError(f"unknown weight factor {name!r}")


def _weight_spec(case: SigmaCase, alpha: Fraction, beta: Fraction) -> WeightSpec:
    if case is SigmaCase.ONE:
        return WeightSpec(exp_poly=(_F(0), beta, alpha / 2))
    if case is SigmaCase.S:
        return WeightSpec(factors=(("s", beta - 1),), exp_poly=(_F(0), alpha))
    if case is SigmaCase.ONE_MINUS_S2:
        return WeightSpec(factors=(("1+s", -(alpha - beta) / 2 - 1),
                                   ("1-s", -(alpha + beta) / 2 - 1)))
    if case is SigmaCase.S2_MINUS_1:
        return WeightSpec(factors=(("1+s", (alpha - beta) / 2 - 1),
                                   ("s-1", (alpha + beta) / 2 - 1)))
    if case is SigmaCase.S2:
        return WeightSpec(factors=(("s", alpha - 2),), inv_coeff=-beta)
    return WeightSpec(factors=(("1+s^2", alpha / 2 - 1),), atan_coeff=beta)


MODES = ("strict", "tilde", "formal")


@dataclass(frozen=True)
class Family:
    """One validated hypergeometric-type family.

    ``cutoff`` is None for the infinite families, otherwise the rational
    ``(1 - alpha)/2``; polynomial indices must stay strictly below it.
    """

    case: SigmaCase
    alpha: Fraction
    beta: Fraction
    mode: str = "strict"
    weight: WeightSpec = field(default=None, compare=False, repr=False)
    cutoff: Optional[Fraction] = None

    @property
    def interval(self) -> tuple[float, float]:
        return self.case.interval

    @property
    def sigma(self) -> RationalPoly:
        return RationalPoly(self.case.sigma_coeffs)

    @property
    def tau(self) -> RationalPoly:
        return RationalPoly([self.beta, self.alpha])

    @property
    def sigma2(self) -> Fraction:
        return self.case.sigma_coeffs[2]

    def label(self) -> str:
        return f"{self.case.value}(alpha={self.alpha}, beta={self.beta})"

    def in_range(self, l: int) -> bool:
        return self.cutoff is None or l < self.cutoff

    def max_index(self, cap: int) -> int:
        """``min(cap, L)``; ``-1`` when no index is admissible."""
        L = degree_budget(self)
        return cap if L is None else min(cap, L)

    def sigma_float(self, s, da=None, db=None):
        """``sigma(s)`` using endpoint distances where they improve accuracy."""
        c = self.case
        if c is SigmaCase.ONE:
            return np.ones_like(np.asarray(s, dtype=float))
        if c is SigmaCase.S:
            return da if da is not None else s
        if c is SigmaCase.ONE_MINUS_S2:
            if da is not None and db is not None:
                return da * db
            return (1.0 - s) * (1.0 + s)
        if c is SigmaCase.S2_MINUS_1:
            if da is not None:
                return da * (da + 2.0)
            return (s - 1.0) * (s + 1.0)
        if c is SigmaCase.S2:
            return s * s
        return 1.0 + s * s


def _check_strict(case: SigmaCase, a: Fraction, b: Fraction) -> Optional[str]:
    """Return the violated Table-1 style inequality, or None."""
    if case is SigmaCase.ONE:
        return None if a < 0 else "alpha < 0"
    if case is SigmaCase.S:
        if not a < 0:
            return "alpha < 0"
        return None if b > 0 else "beta > 0"
    if case is SigmaCase.ONE_MINUS_S2:
        return None if a < b < -a else "alpha < beta < -alpha"
    if case is SigmaCase.S2_MINUS_1:
        return None if -b < a < 0 else "-beta < alpha < 0"
    if case is SigmaCase.S2:
        if not a < 0:
            return "alpha < 0"
        return None if b > 0 else "beta > 0"
    return None if a < 0 else "alpha < 0"


def _power_row(case: SigmaCase, a: Fraction, b: Fraction) -> Optional[Fraction]:
    if case is SigmaCase.S and a == 0:
        return b - 1
    if case is SigmaCase.ONE_MINUS_S2 and b == 0:
        return -a / 2 - 1
    if case in (SigmaCase.S2_MINUS_1, SigmaCase.S2, SigmaCase.S2_PLUS_1) and b == 0:
        return a / 2 - 1
    return None


def _check_tilde_row(case: SigmaCase, a: Fraction, b: Fraction) -> Optional[str]:
    if _power_row(case, a, b) is None:
        return "(alpha, beta) matches a power-weight row"
    if case is SigmaCase.S:
        return None if b > 0 else "beta > 0"
    return None if a < 0 else "alpha < 0"


def build_family(case, alpha, beta=0, *, mode: str = "strict", tilde: bool = False) -> Family:
    """Validate ``(case, alpha, beta)`` and derive interval, weight, cutoff.

    ``mode="tilde"`` (or ``tilde=True``) additionally admits the
    power-weight rows ``rho = sigma**k``; ``mode="formal"`` skips the
    interval constraints entirely and is meant for purely algebraic work.
    """
    case = SigmaCase.parse(case)
    alpha = as_fraction(alpha)
    beta = as_fraction(beta)
    if tilde:
        mode = "tilde"
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode != "formal":
        violated = _check_strict(case, alpha, beta)
        if violated is not None and mode == "tilde":
            row = _check_tilde_row(case, alpha, beta)
            violated = None if row is None else violated
        if violated is not None:
            raise ParameterConstraintViolated(
                f"{case.value}: requires {violated} (alpha={alpha}, beta={beta})")
    cutoff = None if case.infinite else (1 - alpha) / 2
    return Family(case, alpha, beta, mode, _weight_spec(case, alpha, beta), cutoff)


def eigenvalue(f: Family, l: int) -> Fraction:
    """``lambda_l = -(sigma''/2) l(l-1) - alpha*l`` (exact)."""
    if l < 0:
        raise ValueError("l must be non-negative")
    return -f.sigma2 * l * (l - 1) - f.alpha * l


def degree_budget(f: Family) -> Optional[int]:
    """Largest admissible polynomial index ``L``, or None when unbounded."""
    if f.cutoff is None:
        return None
    c = f.cutoff
    # largest integer strictly below c
    return math.ceil(c) - 1


def weight_at(f: Family, s: float) -> float:
    a, b = f.interval
    if not a < s < b:
        raise OutOfDomain(f"s={s} outside ({a}, {b})")
    return float(f.weight.value(s, s - a, b - s, f.interval))


def power_weight_exponent(f: Family) -> Optional[Fraction]:
    """``k`` with ``rho = sigma**k`` when the family is a power-weight row."""
    return _power_row(f.case, f.alpha, f.beta)
