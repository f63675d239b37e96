from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from shapeinv.poly import GaussianRational, RationalPoly, S, as_fraction

fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))
polys = st.lists(fractions, max_size=6).map(RationalPoly)


def test_evaluation_and_derivative():
    p = S ** 2 - Fraction(1, 2)
    assert p(1) == Fraction(1, 2)
    assert p.derive() == RationalPoly([0, 2])


def test_product_of_linear_factors():
    assert (S - 1) * (S + 1) == S ** 2 - 1


def test_trailing_zeros_are_stripped():
    p = RationalPoly([1, 2, 0, 0])
    assert p.degree == 1
    assert RationalPoly([0, 0]).degree == -1
    assert RationalPoly([0]).is_zero()


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert as_fraction("-3/4") == Fraction(-3, 4)


def test_string_forms():
    assert str(S ** 2 - Fraction(1, 2)) == "s^2 - 1/2"
    assert (S ** 2 - Fraction(1, 2)).to_strings() == ["-1/2", "0", "1"]


def test_gaussian_rationals():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1, 0)
    assert i ** 4 == GaussianRational(1)
    z = GaussianRational(Fraction(1, 2), 3)
    assert z / z == GaussianRational(1)


def test_gaussian_polynomial_parts():
    i = GaussianRational(0, 1)
    p = RationalPoly([i, 1]) * RationalPoly([-i, 1])  # s^2 + 1
    assert p.imag_part().is_zero()
    assert p.real_part() == S ** 2 + 1


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == RationalPoly()


@given(polys, polys)
def test_product_rule(a, b):
    assert (a * b).derive() == a.derive() * b + a * b.derive()


@given(polys, st.lists(fractions, min_size=1, max_size=4).map(lambda c: RationalPoly(c + [1])))
def test_division_with_remainder(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(polys, polys, fractions)
def test_composition_evaluates_consistently(a, b, x):
    assert a.compose(b)(x) == a(b(x))


@given(polys, st.floats(-3, 3))
def test_float_evaluation_matches_exact(a, x):
    exact = float(a(Fraction(x)))
    assert a.eval_float(np.float64(x)) == pytest.approx(exact, rel=1e-12, abs=1e-9)
