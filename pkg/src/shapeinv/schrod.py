"""Schrodinger form of the associated-function equations.

With ``ds/dx = sign*kappa(s(x))`` and ``Psi = sqrt(kappa*rho) * Phi_{l,m}``
the equation ``H_m Phi = lambda_l Phi`` becomes
``-Psi'' + V_m(x) Psi = lambda_l Psi``.  Everything here is evaluated
pointwise on Taylor jets in ``x``; scalar or array anchors are accepted.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import jets as J
from .coords import CoordinateMap, coordinate_map
from .errors import InsufficientOrder, OutOfDomain
from .family import Family, SigmaCase, eigenvalue
from .jets import TaylorJet
from .ladder import LayeredFunction, associated, norm

GRID_INSET = 1e-3
TRUNCATION = 1e-14
MAX_REACH = 256.0
FALLBACK_REACH = 32.0
BOUNDARY_BAND = 0.01  # scan fraction ignored next to a finite end when locating the peak


def _anchor(f: Family, x) -> tuple[CoordinateMap, np.ndarray]:
    cmap = coordinate_map(f.case)
    xa = np.asarray(x, dtype=float)
    if not cmap.contains(xa):
        raise OutOfDomain(f"x outside {cmap.x_domain} for {f.case.value}")
    return cmap, xa


def _out(value, x):
    return float(value) if np.ndim(x) == 0 else np.asarray(value)


class BaseJets:
    """Jets of the ``s``-space ingredients pulled back to ``x``."""

    def __init__(self, f: Family, x, order: int):
        self.family = f
        self.cmap, xa = _anchor(f, x)
        self.x = TaylorJet.variable(xa, order)
        parts = self.cmap.jets(self.x)
        self.parts = parts
        self.s = parts["s"]
        self.kappa = parts["kappa"]
        s0, s1, s2 = f.case.sigma_coeffs
        self.dsigma = self.s * float(2 * s2) + float(s1)
        self.dkappa = self.dsigma / (self.kappa * 2.0)  # d kappa / d s
        self.tau = self.s * float(f.alpha) + float(f.beta)
        self.log_kappa = J.log(self.kappa)

    @property
    def sign(self) -> int:
        return self.cmap.sign

    def log_rho(self) -> TaylorJet:
        w = self.family.weight
        out = TaylorJet.constant(0.0, self.x.order, self.x.c.shape[1:])
        for name, e in w.factors:
            if e == 0:
                continue
            key = "factor:" + name
            if "log:" + name in self.parts:
                lg = self.parts["log:" + name]
            else:
                lg = J.log(self.parts[key])
            out = out + lg * float(e)
        if w.exp_poly:
            out = out + J.polyval([float(c) for c in w.exp_poly], self.s)
        if w.inv_coeff:
            out = out + (1.0 / self.s) * float(w.inv_coeff)
        if w.atan_coeff:
            out = out + J.atan(self.s) * float(w.atan_coeff)
        return out

    def prefactor(self, m: int) -> TaylorJet:
        """Jet of ``sqrt(kappa*rho) * kappa**m``."""
        return J.exp(self.log_kappa * (m + 0.5) + self.log_rho() * 0.5)


# -- superpotential and potential -----------------------------------------

def superpotential_jet(f: Family, m: int, x, order: int) -> TaylorJet:
    """``W_m = -tau/(2 kappa) - (m - 1/2) dkappa/ds`` along ``x``."""
    b = BaseJets(f, x, order)
    return -(b.tau / (b.kappa * 2.0)) - b.dkappa * (m - 0.5)


def superpotential(f: Family, m: int, x):
    return _out(superpotential_jet(f, m, x, 0).value, x)


def potential_jet(f: Family, m: int, x, order: int = 0) -> TaylorJet:
    """``V_m = W_m^2 - sign*W_m' + lambda_m`` including the ``lambda_m`` offset."""
    cmap = coordinate_map(f.case)
    w = superpotential_jet(f, m, x, order + 1)
    return (w * w).truncate(order) - w.d() * cmap.sign + float(eigenvalue(f, m))


def potential(f: Family, m: int, x):
    return _out(potential_jet(f, m, x, 0).value, x)


def potential_from_s(f: Family, m: int, x):
    """``V_m(s(x))`` from the change-of-variable formula with
    ``eta = (kappa*rho)**-1/2``; independent of the superpotential."""
    cmap, xa = _anchor(f, x)
    s = cmap.s_of_x(xa)
    s0, s1, s2 = (float(c) for c in f.case.sigma_coeffs)
    a, b = float(f.alpha), float(f.beta)
    sig = s2 * s * s + s1 * s + s0
    ds = 2 * s2 * s + s1
    dds = 2 * s2
    tau = a * s + b
    u = (ds - 2 * tau) / (4 * sig)
    du = ((dds - 2 * a) * sig - (ds - 2 * tau) * ds) / (4 * sig * sig)
    v = (m * (m - 2) / 4 * ds * ds / sig + m * tau * ds / (2 * sig)
         - 0.5 * m * (m - 2) * dds - m * a - sig * (du + u * u) - tau * u)
    return _out(v, x)


def _alpha_m(f: Family, m: int) -> float:
    return -(2 * m + float(f.alpha) - 1) / 2


def _alpha_prime_m(f: Family, m: int) -> float:
    return (2 * m - float(f.alpha) - 1) / 2


def closed_form_superpotential(f: Family, m: int, x):
    _anchor(f, x)
    x = np.asarray(x, dtype=float)
    a, b = float(f.alpha), float(f.beta)
    c = f.case
    if c is SigmaCase.ONE:
        w = -(a * x + b) / 2
    elif c is SigmaCase.S:
        w = -a / 4 * x - (b + m - 0.5) / x
    elif c is SigmaCase.ONE_MINUS_S2:
        w = _alpha_prime_m(f, m) / np.tan(x) - b / 2 / np.sin(x)
    elif c is SigmaCase.S2_MINUS_1:
        w = _alpha_m(f, m) / np.tanh(x) - b / 2 / np.sinh(x)
    elif c is SigmaCase.S2:
        w = -b / 2 * np.exp(-x) + _alpha_m(f, m)
    else:
        w = _alpha_m(f, m) * np.tanh(x) - b / 2 / np.cosh(x)
    return _out(w, x)


def closed_form_potential(f: Family, m: int, x):
    """Catalogue potentials (shifted oscillator, 3D oscillator,
    Poschl-Teller, generalized Poschl-Teller, Morse, Scarf)."""
    _anchor(f, x)
    x = np.asarray(x, dtype=float)
    a, b = float(f.alpha), float(f.beta)
    lam = float(eigenvalue(f, m))
    c = f.case
    if c is SigmaCase.ONE:
        v = (a * x + b) ** 2 / 4 + a / 2 + lam
    elif c is SigmaCase.S:
        v = (a * a / 16 * x * x + (b + m - 0.5) * (b + m - 1.5) / (x * x)
             + a / 2 * (b + m) + lam)
    elif c is SigmaCase.ONE_MINUS_S2:
        ap = _alpha_prime_m(f, m)
        csc, cot = 1 / np.sin(x), 1 / np.tan(x)
        v = (ap * ap - ap + b * b / 4) * csc ** 2 - (2 * ap - 1) * b / 2 * cot * csc - ap * ap + lam
    elif c is SigmaCase.S2_MINUS_1:
        am = _alpha_m(f, m)
        csch, coth = 1 / np.sinh(x), 1 / np.tanh(x)
        v = (am * am + am + b * b / 4) * csch ** 2 - (2 * am + 1) * b / 2 * coth * csch + am * am + lam
    elif c is SigmaCase.S2:
        am = _alpha_m(f, m)
        e = np.exp(-x)
        v = b * b / 4 * e * e - (2 * am + 1) * b / 2 * e + am * am + lam
    else:
        am = _alpha_m(f, m)
        sech, th = 1 / np.cosh(x), np.tanh(x)
        v = (-am * am - am + b * b / 4) * sech ** 2 - (2 * am + 1) * b / 2 * th * sech + am * am + lam
    return _out(v, x)


# -- eigenfunctions --------------------------------------------------------

def layered_jet(f: Family, g: LayeredFunction, x, order: int) -> TaylorJet:
    """Jet of ``sqrt(kappa*rho) * kappa**m * P(s(x))`` for ``g = (m, P)``."""
    b = BaseJets(f, x, order)
    return b.prefactor(g.m) * J.polyval(g.p.float_coeffs(), b.s)


def eigenfunction_jet(f: Family, l: int, m: int, x, order: int = 2,
                      normalized: bool = False) -> TaylorJet:
    """Jet of ``Psi_{l,m}(x)``; ``normalized=True`` divides by ``||Phi_{l,m}||``."""
    jet = layered_jet(f, associated(f, l, m), x, order)
    if normalized:
        jet = jet / norm(f, l, m)
    return jet


def default_order(l: int, m: int) -> int:
    return (l - m) + 2


def x_ladder_apply(f: Family, m: int, direction: str, psi: TaylorJet, x) -> TaylorJet:
    """``A_m = sign d/dx + W_m`` (``"up"``) or ``A_m^+ = -sign d/dx + W_m`` (``"down"``)."""
    if psi.order < 1:
        raise InsufficientOrder("ladder operators need a jet of order >= 1")
    cmap = coordinate_map(f.case)
    w = superpotential_jet(f, m, x, psi.order - 1)
    sgn = cmap.sign if direction == "up" else -cmap.sign
    if direction not in ("up", "down"):
        raise ValueError("direction must be 'up' or 'down'")
    return psi.d() * sgn + w * psi.truncate(psi.order - 1)


# -- grids and residuals ---------------------------------------------------

def _safe_abs(fn, x):
    with np.errstate(all="ignore"):
        v = np.abs(np.asarray(fn(x), dtype=float))
    return np.where(np.isfinite(v), v, np.nan)


def truncation_interval(domain, amplitude, threshold: float = TRUNCATION):
    """Finite window of ``domain`` outside which ``|amplitude|`` stays below
    ``threshold * max|amplitude|``; finite endpoints are kept.

    The reference maximum skips a thin band beside finite endpoints so a
    function that blows up there does not collapse the window.  An infinite
    end along which the amplitude never decays is cut at ``FALLBACK_REACH``.
    """
    a, b = domain
    lo = a if math.isfinite(a) else None
    hi = b if math.isfinite(b) else None
    if lo is not None and hi is not None:
        return lo, hi
    reach = 4.0
    while True:
        xs, small = _scan(lo, hi, reach, amplitude, threshold)
        ok_left = lo is not None or small[0]
        ok_right = hi is not None or small[-1]
        if ok_left and ok_right:
            break
        if reach >= MAX_REACH:
            xs, small = _scan(lo, hi, FALLBACK_REACH, amplitude, threshold)
            break
        reach *= 2.0
    big = np.nonzero(~small)[0]
    i0, i1 = (big[0], big[-1]) if big.size else (0, xs.size - 1)
    step = xs[1] - xs[0]
    left, right = lo, hi
    if lo is None:
        left = xs[max(i0 - 1, 0)] - step if ok_left else xs[0] - step
    if hi is None:
        right = xs[min(i1 + 1, xs.size - 1)] + step if ok_right else xs[-1] + step
    return left, right


def _scan(lo, hi, reach, amplitude, threshold):
    left = lo if lo is not None else -reach
    right = hi if hi is not None else reach
    if lo is None and hi is None:
        half = np.linspace(0.0, reach, 2001)
        xs = np.concatenate([-half[:0:-1], half])[1:-1]  # mirror-exact
    else:
        xs = np.linspace(left, right, 4001)[1:-1]
    v = _safe_abs(amplitude, xs)
    band = int(BOUNDARY_BAND * xs.size)
    core = v[band if lo is not None else 0: xs.size - band if hi is not None else None]
    peak = np.nanmax(core)
    return xs, (v < threshold * peak) | ~np.isfinite(v)


def chebyshev_grid(lo: float, hi: float, n: int, inset: float = GRID_INSET) -> np.ndarray:
    """``n`` Chebyshev nodes on ``[lo, hi]`` shrunk by ``inset`` of the width
    at each end; symmetric windows contain their midpoint exactly for odd ``n``."""
    width = hi - lo
    lo, hi = lo + inset * width, hi - inset * width
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    j = np.arange(n)
    return mid + half * np.sin(np.pi * (2 * j + 1 - n) / (2 * n))


def schrodinger_grid(f: Family, l: int, m: int, n: int = 200) -> np.ndarray:
    cmap = coordinate_map(f.case)
    g = associated(f, l, m)

    def amp(xs):
        return layered_jet(f, g, xs, 0).value

    lo, hi = truncation_interval(cmap.x_domain, amp)
    return chebyshev_grid(lo, hi, n)


def normalized_residual(psi: TaylorJet, v, lam: float) -> float:
    """``max |(-psi'' + v psi - lam psi)| / (1 + |lam| |psi|)`` with ``psi``
    rescaled to unit maximum over the grid."""
    val = psi.value
    scale = np.max(np.abs(val))
    if not np.all(np.isfinite(val)):
        return math.nan
    if scale == 0:
        return 0.0
    p0 = val / scale
    p2 = psi.derivative_value(2) / scale
    r = -p2 + v * p0 - lam * p0
    return float(np.max(np.abs(r) / (1.0 + abs(lam) * np.abs(p0))))


def schrodinger_residual(f: Family, l: int, m: int, grid) -> float:
    grid = np.asarray(grid, dtype=float)
    psi = eigenfunction_jet(f, l, m, grid, order=2)
    v = potential_jet(f, m, grid, 0).value
    return normalized_residual(psi, v, float(eigenvalue(f, l)))
