"""Double-exponential quadrature for the weighted scalar products.

Finite intervals use tanh-sinh.  A half line ``(a, inf)`` is first mapped
by ``s = a + t/(1-t)`` and a full line by ``s = t/(1-t^2)``; composing
either map with tanh-sinh gives the exp-sinh and sinh-sinh node sets that
are generated directly below.  The integrand always receives the
distances ``s - a`` and ``b - s`` computed without cancellation, which is
what keeps integrable endpoint singularities accurate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import Divergent, LayerMismatch
from .family import Family

T_MAX = 6.0
MIN_LEVEL = 3


@dataclass(frozen=True)
class QuadratureSpec:
    levels: int = 12
    abs_tol: float = 1e-12


@dataclass(frozen=True)
class IntegralResult:
    value: "float | np.ndarray"
    error_estimate: float
    levels_used: int


DEFAULT = QuadratureSpec()


def _nodes(t: np.ndarray, a: float, b: float):
    """Abscissae, distances to both ends and Jacobian weights at ``t``."""
    u = 0.5 * math.pi * np.sinh(t)
    du = 0.5 * math.pi * np.cosh(t)
    with np.errstate(over="ignore", under="ignore"):
        if math.isfinite(a) and math.isfinite(b):
            hw = 0.5 * (b - a)
            da = hw * 2.0 / (1.0 + np.exp(-2.0 * u))
            db = hw * 2.0 / (1.0 + np.exp(2.0 * u))
            s = np.where(u < 0, a + da, b - db)
            w = hw * du / np.cosh(u) ** 2
        elif math.isfinite(a):
            da = np.exp(2.0 * u)
            s = a + da
            db = np.full_like(s, np.inf)
            w = 2.0 * du * da
        elif not math.isfinite(a) and not math.isfinite(b):
            s = 0.5 * np.sinh(2.0 * u)
            da = np.full_like(s, np.inf)
            db = da
            w = du * np.cosh(2.0 * u)
        else:
            raise ValueError("intervals of the form (-inf, b) are not used")
    return s, da, db, w


def _level_points(level: int) -> np.ndarray:
    if level == 0:
        n = int(T_MAX)
        return np.arange(-n, n + 1, dtype=float)
    h = 2.0 ** -level
    k = np.arange(1, int(T_MAX / h) + 1, 2, dtype=float)
    pos = k * h
    return np.concatenate([-pos[::-1], pos])


def integrate(fn: Callable, interval, spec: QuadratureSpec = DEFAULT) -> IntegralResult:
    """Integrate ``fn(s, da, db)`` over ``interval``.

    ``fn`` maps node arrays of shape ``(N,)`` to values of shape
    ``(..., N)``; every component is integrated.  Convergence is declared
    per component when two successive levels differ by at most
    ``abs_tol * max(1, integral of |fn|)``.
    """
    a, b = float(interval[0]), float(interval[1])
    total = None
    l1 = None
    prev = None
    tail_mass = None
    for level in range(spec.levels + 1):
        t = _level_points(level)
        s, da, db, w = _nodes(t, a, b)
        with np.errstate(all="ignore"):
            vals = np.asarray(fn(s, da, db), dtype=float) * w
        vals = np.where(np.isfinite(vals), vals, 0.0)
        part = vals.sum(axis=-1)
        apart = np.abs(vals).sum(axis=-1)
        if level == 0:
            total, l1 = part, apart
            tail_mass = np.abs(vals[..., [0, -1]]).max(axis=-1)
        else:
            total, l1 = total + part, l1 + apart
        h = 2.0 ** -level
        estimate = total * h
        scale = np.maximum(1.0, l1 * h)
        tol = spec.abs_tol * scale
        if prev is not None:
            err = np.abs(estimate - prev)
            if level >= MIN_LEVEL and np.all(err <= tol):
                if np.any(tail_mass > tol):
                    raise Divergent("integrand does not decay at the ends of the interval")
                return IntegralResult(_squeeze(estimate), float(np.max(err)), level)
        prev = estimate
    raise Divergent(f"no convergence after {spec.levels} levels "
                    f"(last change {float(np.max(np.abs(estimate - prev))):.3e})")


def _squeeze(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def integrate_family(f: Family, fn: Callable, spec: QuadratureSpec = DEFAULT) -> IntegralResult:
    """``integral of fn(s) * rho(s) ds`` over the family interval."""
    interval = f.interval

    def weighted(s, da, db):
        return fn(s, da, db) * f.weight.value(s, da, db, interval)

    return integrate(weighted, interval, spec)


def inner_product(f: Family, g1, g2, spec: QuadratureSpec = DEFAULT) -> IntegralResult:
    """``<g1, g2> = integral sigma^m p1 p2 rho`` for layered functions."""
    if g1.m != g2.m:
        raise LayerMismatch(f"layers differ: {g1.m} vs {g2.m}")
    m = g1.m

    def fn(s, da, db):
        return f.sigma_float(s, da, db) ** m * g1.p.eval_float(s) * g2.p.eval_float(s)

    return integrate_family(f, fn, spec)


def gram_matrix(f: Family, m: int, l_max: int, spec: QuadratureSpec = DEFAULT) -> np.ndarray:
    """Matrix of ``<Phi_{l,m}, Phi_{k,m}>`` for ``l, k = m .. l_max``."""
    from .ladder import associated

    basis = [associated(f, l, m).p for l in range(m, l_max + 1)]

    def fn(s, da, db):
        vals = np.stack([p.eval_float(s) for p in basis])
        return f.sigma_float(s, da, db) ** m * vals[:, None, :] * vals[None, :, :]

    g = np.atleast_2d(integrate_family(f, fn, spec).value)
    return 0.5 * (g + g.T)


def normalized_gram(g: np.ndarray) -> np.ndarray:
    d = np.sqrt(np.diag(g))
    return g / np.outer(d, d)
