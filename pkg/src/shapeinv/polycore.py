"""Monic polynomial solutions of the hypergeometric-type equation.

``generate_phi`` solves the ODE directly by a downward coefficient
recurrence.  ``classical_reference`` rebuilds the same polynomial from
textbook Hermite / Laguerre / Jacobi sums under the change of variable
that maps each family onto its classical counterpart, and is used only
as an oracle.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateEigenvalue, IndexBeyondCutoff, Unsupported
from .family import Family, SigmaCase, eigenvalue
from .poly import GaussianRational, I, RationalPoly, S


def _check_index(f: Family, l: int) -> None:
    if l < 0:
        raise IndexBeyondCutoff(f"l={l} must be non-negative")
    if not f.in_range(l):
        raise IndexBeyondCutoff(f"l={l} is not below the cutoff {f.cutoff} of {f.label()}")


@lru_cache(maxsize=4096)
def generate_phi(f: Family, l: int) -> RationalPoly:
    """The monic degree-``l`` solution of the ODE with ``lambda = lambda_l``."""
    _check_index(f, l)
    s0, s1, _ = f.case.sigma_coeffs
    lam_l = eigenvalue(f, l)
    c = [Fraction(0)] * (l + 3)
    c[l] = Fraction(1)
    for j in range(l - 1, -1, -1):
        gap = lam_l - eigenvalue(f, j)
        if gap == 0:
            raise DegenerateEigenvalue(f"lambda_{l} == lambda_{j} for {f.label()}")
        rhs = (j + 1) * (s1 * j + f.beta) * c[j + 1] + s0 * (j + 2) * (j + 1) * c[j + 2]
        c[j] = -rhs / gap
    return RationalPoly(c[: l + 1])


def ode_residual(f: Family, p: RationalPoly, lam) -> RationalPoly:
    """``sigma*p'' + tau*p' + lam*p`` as an exact polynomial."""
    return f.sigma * p.derive(2) + f.tau * p.derive() + p * lam


# -- classical polynomials -------------------------------------------------

def gbinom(top, k: int):
    """Generalized binomial ``binom(top, k)`` for any exact field element."""
    if k < 0:
        return Fraction(0)
    out = Fraction(1)
    for j in range(k):
        out = out * (top - j)
    return out / math.factorial(k)


def hermite(n: int) -> RationalPoly:
    """Physicists' Hermite ``H_n`` via the three-term recurrence."""
    prev, cur = RationalPoly([1]), RationalPoly([0, 2])
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, S * cur * 2 - prev * (2 * k)
    return cur


def laguerre(n: int, p) -> RationalPoly:
    """Generalized Laguerre ``L_n^p`` from its explicit sum."""
    return RationalPoly((-1) ** k * gbinom(n + p, n - k) / math.factorial(k) for k in range(n + 1))


def jacobi(n: int, a, b, arg: RationalPoly = S) -> RationalPoly:
    """Jacobi ``P_n^(a,b)(arg)`` from the two-binomial sum.

    ``a``, ``b`` may be Fractions or GaussianRationals.
    """
    minus = (arg - 1) / 2
    plus = (arg + 1) / 2
    out = RationalPoly()
    for j in range(n + 1):
        coeff = gbinom(n + a, n - j) * gbinom(n + b, j)
        if coeff == 0:
            continue
        out = out + minus ** j * plus ** (n - j) * coeff
    return out


def _rational_sqrt(q: Fraction):
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def classical_reference(f: Family, l: int) -> RationalPoly:
    """Monic polynomial built from the classical-polynomial correspondence.

    Raises ``Unsupported`` for case ``one`` when ``-alpha/2`` is not the
    square of a rational (the map then lives in a quadratic extension).
    """
    _check_index(f, l)
    a, b = f.alpha, f.beta
    case = f.case
    if case is SigmaCase.ONE:
        c1 = _rational_sqrt(-a / 2)
        if c1 is None:
            raise Unsupported(f"-alpha/2 = {-a / 2} is not a rational square")
        raw = hermite(l).compose(RationalPoly([-b / (2 * c1), c1]))
    elif case is SigmaCase.S:
        raw = laguerre(l, b - 1).compose(RationalPoly([0, -a]))
    elif case is SigmaCase.ONE_MINUS_S2:
        raw = jacobi(l, -(a + b) / 2 - 1, (-a + b) / 2 - 1)
    elif case is SigmaCase.S2_MINUS_1:
        raw = jacobi(l, (a - b) / 2 - 1, (a + b) / 2 - 1, -S)
    elif case is SigmaCase.S2:
        # (s/beta)^l * L_l^{1-alpha-2l}(beta/s): term k of L becomes s^(l-k)
        lag = laguerre(l, 1 - a - 2 * l)
        coeffs = [Fraction(0)] * (l + 1)
        for k, c in enumerate(lag.coeffs):
            coeffs[l - k] = c * b ** k / b ** l
        raw = RationalPoly(coeffs)
    else:
        p = GaussianRational(a, b) / 2 - 1
        q = GaussianRational(a, -b) / 2 - 1
        raw = jacobi(l, p, q, RationalPoly([0, I])) * I ** l
        if not raw.imag_part().is_zero():
            raise ArithmeticError("imaginary part survived the i^l P_l(is) map")
        raw = raw.real_part()
    if raw.degree != l:
        raise Unsupported(f"classical polynomial degenerates below degree {l}")
    return raw.monic()
