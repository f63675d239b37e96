"""Associated functions and the shape-invariant ladder algebra.

A :class:`LayeredFunction` ``(m, P)`` stands for ``kappa(s)**m * P(s)``
with ``kappa = sqrt(sigma)``.  Every operator below maps such pairs to
such pairs with exact polynomial arithmetic; ``kappa`` only enters
through ``sigma`` and ``sigma'`` (``2*kappa*kappa' = sigma'``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateEigenvalue, InvalidIndex, LayerUnderflow
from .family import Family, eigenvalue
from .poly import RationalPoly
from .polycore import generate_phi


@dataclass(frozen=True)
class LayeredFunction:
    m: int
    p: RationalPoly

    def __post_init__(self):
        if self.m < 0:
            raise LayerUnderflow(f"layer {self.m} < 0")

    def __add__(self, other: "LayeredFunction") -> "LayeredFunction":
        if other.m != self.m:
            raise ValueError("cannot add functions on different layers")
        return LayeredFunction(self.m, self.p + other.p)

    def __sub__(self, other: "LayeredFunction") -> "LayeredFunction":
        return self + other.scale(-1)

    def scale(self, c) -> "LayeredFunction":
        return LayeredFunction(self.m, self.p * Fraction(c))

    def is_zero(self) -> bool:
        return self.p.is_zero()

    def eval_float(self, f: Family, s):
        """``sigma(s)**(m/2) * P(s)`` in floating point."""
        return f.sigma_float(s) ** (self.m / 2) * self.p.eval_float(s)


def _check_lm(f: Family, l: int, m: int) -> None:
    if not 0 <= m <= l:
        raise InvalidIndex(f"need 0 <= m <= l, got l={l}, m={m}")


def associated(f: Family, l: int, m: int) -> LayeredFunction:
    """``Phi_{l,m} = kappa**m * d^m/ds^m Phi_l`` with monic ``Phi_l``."""
    _check_lm(f, l, m)
    return LayeredFunction(m, generate_phi(f, l).derive(m))


def raise_m(f: Family, g: LayeredFunction) -> LayeredFunction:
    """``A_m = kappa d/ds - m kappa'`` acting on layer ``m = g.m``."""
    return LayeredFunction(g.m + 1, g.p.derive())


def lower_m(f: Family, g: LayeredFunction) -> LayeredFunction:
    """``A_m^+ = -kappa d/ds - tau/kappa - (m-1) kappa'`` with ``m = g.m - 1``."""
    if g.m == 0:
        raise LayerUnderflow("A^+ needs a function on layer >= 1")
    m = g.m - 1
    q = g.p
    sigma, tau = f.sigma, f.tau
    return LayeredFunction(m, -(sigma * q.derive()) - tau * q - sigma.derive() * q * m)


def hamiltonian_apply(f: Family, g: LayeredFunction) -> LayeredFunction:
    """``H_m`` through the factorization ``H_m = A_m^+ A_m + lambda_m``."""
    m = g.m
    return lower_m(f, raise_m(f, g)) + g.scale(eigenvalue(f, m))


def hamiltonian_direct(f: Family, g: LayeredFunction) -> LayeredFunction:
    """``H_m`` expanded term by term on ``kappa**m * P``.

    Every term is first multiplied by ``sigma`` so that the ``sigma'^2/sigma``
    pieces become polynomials; the sum must then be exactly divisible by
    ``sigma`` again.  Raises ``ArithmeticError`` if it is not.
    """
    m, P = g.m, g.p
    sigma, tau = f.sigma, f.tau
    ds, dds = sigma.derive(), sigma.derive(2)
    alpha = f.alpha
    # sigma * (kappa^m)'/kappa^m and sigma^2 * (kappa^m)''/kappa^m
    log1 = ds * Fraction(m, 2)
    log2 = (dds * sigma - ds * ds) * Fraction(m, 2) + ds * ds * Fraction(m * m, 4)
    # sigma * [-sigma f''] / kappa^m
    t_second = -(sigma * sigma * P.derive(2) + sigma * log1 * P.derive() * 2 + log2 * P)
    # sigma * [-tau f'] / kappa^m
    t_first = -(tau * (sigma * P.derive() + log1 * P))
    # sigma * potential terms
    pot = (ds * ds * Fraction(m * (m - 2), 4)
           + tau * ds * Fraction(m, 2)
           + sigma * (dds * Fraction(-m * (m - 2), 2) - alpha * m))
    total = t_second + t_first + pot * P
    quotient, rem = total.divmod(sigma)
    if not rem.is_zero():
        raise ArithmeticError("sigma-denominators failed to cancel")
    return LayeredFunction(m, quotient)


def build_from_top(f: Family, l: int, m: int) -> LayeredFunction:
    """Apply ``A_j^+/(lambda_l - lambda_j)``, ``j = l-1 .. m``, to ``kappa**l``."""
    _check_lm(f, l, m)
    lam_l = eigenvalue(f, l)
    g = LayeredFunction(l, RationalPoly([1]))
    for j in range(l - 1, m - 1, -1):
        gap = lam_l - eigenvalue(f, j)
        if gap == 0:
            raise DegenerateEigenvalue(f"lambda_{l} == lambda_{j}")
        g = lower_m(f, g).scale(1 / gap)
    return g


def norm_chain(f: Family, l: int, base_norm: float) -> list[float]:
    """``[||Phi_{l,l}||, ||Phi_{l,l-1}||, ..., ||Phi_{l,0}||]`` from the top norm."""
    if not base_norm > 0:
        raise ValueError("base_norm must be positive")
    lam_l = eigenvalue(f, l)
    out = [base_norm]
    for j in range(l - 1, -1, -1):
        gap = lam_l - eigenvalue(f, j)
        if gap <= 0:
            raise DegenerateEigenvalue(f"lambda_{l} - lambda_{j} = {gap} is not positive")
        out.append(out[-1] / math.sqrt(gap))
    return out


def top_norm(f: Family, l: int) -> float:
    """``||Phi_{l,l}||`` with ``Phi_{l,l} = l! kappa**l`` by quadrature."""
    from .quad import integrate_family

    res = integrate_family(f, lambda s, da, db: f.sigma_float(s, da, db) ** l)
    return math.factorial(l) * math.sqrt(res.value)


def norm(f: Family, l: int, m: int) -> float:
    _check_lm(f, l, m)
    return norm_chain(f, l, top_norm(f, l))[l - m]


def normalized_phi(f: Family, l: int, m: int, s) -> float:
    """``phi_{l,m}(s) = Phi_{l,m}(s) / ||Phi_{l,m}||``."""
    a, b = f.interval
    if not a < s < b:
        from .errors import OutOfDomain
        raise OutOfDomain(f"s={s} outside ({a}, {b})")
    return float(associated(f, l, m).eval_float(f, s)) / norm(f, l, m)
