"""Changes of variable ``s = s(x)`` with ``ds/dx = sign * kappa(s(x))``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import jets as J
from .family import SigmaCase
from .jets import TaylorJet

INF = math.inf


@dataclass(frozen=True)
class CoordinateMap:
    case: SigmaCase
    sign: int
    x_domain: tuple[float, float]
    s_of_x: Callable
    x_of_s: Callable
    _jets: Callable

    def jets(self, xj: TaylorJet) -> dict:
        """Jets of ``s``, ``kappa`` and the weight factors along ``x``.

        Endpoint factors such as ``1 - s`` are produced from half-angle
        identities so they keep full relative accuracy near the ends.
        """
        return self._jets(xj)

    def contains(self, x) -> bool:
        a, b = self.x_domain
        x = np.asarray(x, dtype=float)
        return bool(np.all((x > a) & (x < b)))


def _one(xj):
    return {"s": xj, "kappa": TaylorJet.constant(1.0, xj.order, xj.c.shape[1:])}


def _s(xj):
    s = xj * xj * 0.25
    return {"s": s, "kappa": xj * 0.5, "factor:s": s}


def _one_minus_s2(xj):
    half = xj * 0.5
    sh, ch = J.sin(half), J.cos(half)
    return {"s": J.cos(xj), "kappa": J.sin(xj),
            "factor:1+s": ch * ch * 2.0, "factor:1-s": sh * sh * 2.0}


def _s2_minus_1(xj):
    half = xj * 0.5
    sh, ch = J.sinh(half), J.cosh(half)
    return {"s": J.cosh(xj), "kappa": J.sinh(xj),
            "factor:1+s": ch * ch * 2.0, "factor:s-1": sh * sh * 2.0}


def _s2(xj):
    e = J.exp(xj)
    return {"s": e, "kappa": e, "factor:s": e, "log:s": xj}


def _s2_plus_1(xj):
    ch = J.cosh(xj)
    return {"s": J.sinh(xj), "kappa": ch, "factor:1+s^2": ch * ch}


_MAPS = {
    SigmaCase.ONE: (1, (-INF, INF), lambda x: x, lambda s: s, _one),
    SigmaCase.S: (1, (0.0, INF), lambda x: x * x / 4.0, lambda s: 2.0 * np.sqrt(s), _s),
    SigmaCase.ONE_MINUS_S2: (-1, (0.0, math.pi), np.cos, np.arccos, _one_minus_s2),
    SigmaCase.S2_MINUS_1: (1, (0.0, INF), np.cosh, np.arccosh, _s2_minus_1),
    SigmaCase.S2: (1, (-INF, INF), np.exp, np.log, _s2),
    SigmaCase.S2_PLUS_1: (1, (-INF, INF), np.sinh, np.arcsinh, _s2_plus_1),
}


def coordinate_map(case) -> CoordinateMap:
    case = SigmaCase.parse(case)
    sign, dom, sx, xs, jets = _MAPS[case]
    return CoordinateMap(case, sign, dom, sx, xs, jets)
