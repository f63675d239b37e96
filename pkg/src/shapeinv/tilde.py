"""gamma-shifted shape-invariant operators for power-weight families.

When ``rho = sigma**k`` the ladder operators can be shifted by the
constant ``eps_m = gamma/(2m + 2k + 1)`` while keeping shape invariance;
the resulting Coulomb, Rosen-Morse and Eckart type problems are handled
pointwise on jets because their eigenfunctions carry an ``exp(-sign*eps*x)``
factor that leaves the polynomial carrier.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import jets as J
from .coords import coordinate_map
from .errors import (DegenerateShift, DegenerateTildeEigenvalue, Divergent, IndexBeyondCutoff,
                     InvalidIndex, NotPowerWeight)
from .family import Family, SigmaCase, eigenvalue, power_weight_exponent
from .jets import TaylorJet
from .ladder import LayeredFunction
from .poly import RationalPoly
from .quad import integrate
from . import schrod


@dataclass(frozen=True)
class TildeFamily:
    base: Family
    k: Fraction
    gamma: "Fraction | float"

    @property
    def sign(self) -> int:
        return coordinate_map(self.base.case).sign


def _exactish(gamma):
    if isinstance(gamma, (int, Fraction)):
        return Fraction(gamma)
    if isinstance(gamma, str):
        return Fraction(gamma)
    return float(gamma)


def make_tilde(f: Family, gamma) -> TildeFamily:
    """Attach a shift ``gamma`` to a power-weight family."""
    k = power_weight_exponent(f)
    if k is None:
        raise NotPowerWeight(f"{f.label()} has no weight of the form sigma**k")
    # tau = (k+1) sigma' must hold identically
    if f.tau != f.sigma.derive() * (k + 1):
        raise NotPowerWeight(f"tau != (k+1) sigma' for {f.label()}")
    bad = -(2 * k + 1) / 2
    if bad.denominator == 1 and bad >= 0 and f.in_range(int(bad)):
        raise DegenerateShift(f"2m + 2k + 1 = 0 at m = {bad}")
    return TildeFamily(f, k, _exactish(gamma))


def shift_denominator(tf: TildeFamily, m: int) -> Fraction:
    d = 2 * m + 2 * tf.k + 1
    if d == 0:
        raise DegenerateShift(f"2m + 2k + 1 = 0 at m = {m}")
    return d


def epsilon(tf: TildeFamily, m: int):
    return tf.gamma / shift_denominator(tf, m)


def tilde_lambda_exact(tf: TildeFamily, m: int):
    d = shift_denominator(tf, m)
    return eigenvalue(tf.base, m) - tf.gamma * tf.gamma / (d * d)


def tilde_lambda(tf: TildeFamily, m: int) -> float:
    """``lambda_m - gamma^2/(2m + 2k + 1)^2``."""
    return float(tilde_lambda_exact(tf, m))


def tilde_superpotential_jet(tf: TildeFamily, m: int, x, order: int) -> TaylorJet:
    return schrod.superpotential_jet(tf.base, m, x, order) + float(epsilon(tf, m))


def tilde_superpotential(tf: TildeFamily, m: int, x):
    return schrod._out(tilde_superpotential_jet(tf, m, x, 0).value, x)


def tilde_potential_jet(tf: TildeFamily, m: int, x, order: int = 0) -> TaylorJet:
    """``V_m - gamma * dkappa/ds`` along ``x``."""
    shift_denominator(tf, m)
    b = schrod.BaseJets(tf.base, x, order)
    return schrod.potential_jet(tf.base, m, x, order) - b.dkappa * float(tf.gamma)


def tilde_potential(tf: TildeFamily, m: int, x):
    return schrod._out(tilde_potential_jet(tf, m, x, 0).value, x)


def tilde_potential_factorized(tf: TildeFamily, m: int, x):
    """``W~^2 - sign*W~' + lambda~_m``."""
    w = tilde_superpotential_jet(tf, m, x, 1)
    v = (w * w).truncate(0) - w.d() * tf.sign + tilde_lambda(tf, m)
    return schrod._out(v.value, x)


def closed_form_tilde(tf: TildeFamily, m: int, x):
    """Printed ``(W~_m, V~_m)`` for the Coulomb, trigonometric Rosen-Morse,
    Eckart and hyperbolic Rosen-Morse problems.

    The ``lambda_m`` inside the last two is taken from the general
    eigenvalue formula ``-m(m + alpha - 1)``.
    """
    f = tf.base
    schrod._anchor(f, x)
    x = np.asarray(x, dtype=float)
    a, b, g = float(f.alpha), float(f.beta), float(tf.gamma)
    lam = float(eigenvalue(f, m))
    c = f.case
    if c is SigmaCase.S:
        q = b + m - 0.5
        w = -q / x + g / (2 * m + 2 * b - 1)
        v = q * (q - 1) / (x * x) - g / x
    elif c is SigmaCase.ONE_MINUS_S2:
        ap = (2 * m - a - 1) / 2
        cot = 1 / np.tan(x)
        w = ap * cot + g / (2 * m - a - 1)
        v = (ap * ap - ap) / np.sin(x) ** 2 + g * cot - ap * ap + m * (m - a - 1)
    elif c is SigmaCase.S2_MINUS_1:
        am = -(2 * m + a - 1) / 2
        coth = 1 / np.tanh(x)
        w = am * coth + g / (2 * m + a - 1)
        v = (am * am + am) / np.sinh(x) ** 2 - g * coth + am * am + lam
    elif c is SigmaCase.S2_PLUS_1:
        am = -(2 * m + a - 1) / 2
        th = np.tanh(x)
        w = am * th + g / (2 * m + a - 1)
        v = -(am * am + am) / np.cosh(x) ** 2 - g * th + am * am + lam
    else:
        raise NotPowerWeight(f"no printed closed form for {c.value}")
    return schrod._out(w, x), schrod._out(v, x)


def _check_l(tf: TildeFamily, l: int) -> None:
    if l < 0:
        raise InvalidIndex("l must be non-negative")
    if not tf.base.in_range(l):
        raise IndexBeyondCutoff(f"l={l} is not below the cutoff {tf.base.cutoff}")


def tilde_ground(tf: TildeFamily, l: int, x, order: int = 2) -> TaylorJet:
    """``Psi~_{l,l} = Psi_{l,l} * exp(-sign*eps_l*x)`` with the monic
    ``Phi_{l,l} = l! kappa**l``."""
    _check_l(tf, l)
    f = tf.base
    eps = float(epsilon(tf, l))
    b = schrod.BaseJets(f, x, order)
    g = LayeredFunction(l, RationalPoly([math.factorial(l)]))
    psi = schrod.layered_jet(f, g, x, order)
    return psi * J.exp(b.x * (-tf.sign * eps))


def tilde_ladder_apply(tf: TildeFamily, m: int, direction: str, psi: TaylorJet, x) -> TaylorJet:
    """``A~_m = sign d/dx + W~_m`` (up) or ``A~_m^+ = -sign d/dx + W~_m`` (down)."""
    if direction not in ("up", "down"):
        raise ValueError("direction must be 'up' or 'down'")
    w = tilde_superpotential_jet(tf, m, x, psi.order - 1)
    sgn = tf.sign if direction == "up" else -tf.sign
    return psi.d() * sgn + w * psi.truncate(psi.order - 1)


def tilde_eigenfunction(tf: TildeFamily, l: int, m: int, x, order: int = 2) -> TaylorJet:
    """``Psi~_{l,m}`` from the ground jet by the chain of
    ``A~_j^+/(lambda~_l - lambda~_j)``, ``j = l-1 .. m``."""
    if not 0 <= m <= l:
        raise InvalidIndex(f"need 0 <= m <= l, got l={l}, m={m}")
    psi = tilde_ground(tf, l, x, order + (l - m))
    lam_l = tilde_lambda_exact(tf, l)
    for j in range(l - 1, m - 1, -1):
        gap = lam_l - tilde_lambda_exact(tf, j)
        if gap == 0:
            raise DegenerateTildeEigenvalue(f"lambda~_{l} == lambda~_{j} (gamma={tf.gamma})")
        psi = tilde_ladder_apply(tf, j, "down", psi, x) / float(gap)
    return psi


def tilde_grid(tf: TildeFamily, l: int, m: int, n: int = 200) -> np.ndarray:
    cmap = coordinate_map(tf.base.case)

    def amp(xs):
        return tilde_eigenfunction(tf, l, m, xs, 0).value

    lo, hi = schrod.truncation_interval(cmap.x_domain, amp)
    return schrod.chebyshev_grid(lo, hi, n)


def tilde_residual(tf: TildeFamily, l: int, m: int, grid) -> float:
    grid = np.asarray(grid, dtype=float)
    psi = tilde_eigenfunction(tf, l, m, grid, 2)
    v = tilde_potential_jet(tf, m, grid, 0).value
    return schrod.normalized_residual(psi, v, tilde_lambda(tf, l))


def tilde_inner(tf: TildeFamily, l1: int, l2: int, m: int) -> float:
    """``integral Psi~_{l1,m} Psi~_{l2,m} dx`` over the x-domain."""
    cmap = coordinate_map(tf.base.case)

    def fn(xs, da, db):
        xs = np.clip(xs, *_open(cmap.x_domain))
        p1 = tilde_eigenfunction(tf, l1, m, xs, 0).value
        p2 = tilde_eigenfunction(tf, l2, m, xs, 0).value
        return p1 * p2

    return integrate(fn, cmap.x_domain).value


def is_normalizable(tf: TildeFamily, l: int, m: int) -> bool:
    try:
        return bool(tilde_inner(tf, l, l, m) > 0)
    except Divergent:
        return False


def _open(domain):
    a, b = domain
    return (np.nextafter(a, math.inf) if math.isfinite(a) else -np.inf,
            np.nextafter(b, -math.inf) if math.isfinite(b) else np.inf)
