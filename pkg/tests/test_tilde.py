import math
from fractions import Fraction

import numpy as np
import pytest

from shapeinv import schrod
from shapeinv.errors import DegenerateShift, DegenerateTildeEigenvalue, NotPowerWeight
from shapeinv.family import build_family
from shapeinv.tilde import (TildeFamily, closed_form_tilde, is_normalizable, make_tilde,
                            tilde_eigenfunction, tilde_grid, tilde_ground, tilde_inner,
                            tilde_lambda, tilde_lambda_exact, tilde_ladder_apply, tilde_potential,
                            tilde_potential_factorized, tilde_residual, tilde_superpotential)
from shapeinv.verify import shape_invariance_defect


def coulomb(gamma=2):
    return make_tilde(build_family("s", 0, 1, mode="tilde"), gamma)


def trig_rm(gamma=3):
    return make_tilde(build_family("one-minus-s2", -4, 0), gamma)


def eckart(gamma=Fraction(1, 2)):
    return make_tilde(build_family("s2-minus-1", -10, 0, mode="tilde"), gamma)


def hyp_rm(gamma=1):
    return make_tilde(build_family("s2-plus-1", -6, 0), gamma)


ALL = [coulomb, trig_rm, eckart, hyp_rm]


def test_construction():
    assert coulomb().k == 0
    assert trig_rm().k == 1
    with pytest.raises(NotPowerWeight):
        make_tilde(build_family("one", -2, 0), 1)
    with pytest.raises(DegenerateShift):
        make_tilde(build_family("s", 0, Fraction(1, 2), mode="tilde"), 1)


def test_spectrum_examples():
    assert tilde_lambda_exact(coulomb(), 0) == -4
    assert tilde_lambda_exact(coulomb(), 1) == Fraction(-4, 9)
    assert tilde_lambda(trig_rm(), 1) == pytest.approx(3.64, abs=1e-15)


def test_coulomb_spectrum_increases_to_zero():
    tf = coulomb()
    lams = [tilde_lambda_exact(tf, m) for m in range(12)]
    assert lams == [Fraction(-4, (2 * m + 1) ** 2) for m in range(12)]
    assert all(a < b < 0 for a, b in zip(lams, lams[1:]))


def test_superpotential_and_potential_examples():
    assert tilde_superpotential(coulomb(), 0, 1.0) == pytest.approx(1.5, abs=1e-15)
    assert tilde_superpotential(trig_rm(), 0, math.pi / 2) == pytest.approx(1.0, abs=1e-15)
    assert tilde_potential(coulomb(), 0, 2.0) == pytest.approx(-1.0625, abs=1e-14)
    assert tilde_potential(hyp_rm(), 0, 0.0) == pytest.approx(-3.5, abs=1e-14)


@pytest.mark.parametrize("make", ALL, ids=lambda f: f.__name__)
def test_zero_shift_is_the_base_problem(make):
    tf = make(0)
    f = tf.base
    x = tilde_grid(tf, 0, 0, 15)
    for m in range(min(2, f.max_index(2)) + 1):
        assert tilde_superpotential(tf, m, x) == pytest.approx(schrod.superpotential(f, m, x), abs=1e-14)
        assert tilde_potential(tf, m, x) == pytest.approx(schrod.potential(f, m, x), rel=1e-13, abs=1e-13)


@pytest.mark.parametrize("make", ALL, ids=lambda f: f.__name__)
def test_closed_forms_and_factorization(make):
    tf = make()
    for m in range(min(3, tf.base.max_index(3)) + 1):
        x = tilde_grid(tf, m, m, 31)
        w, v = closed_form_tilde(tf, m, x)
        vg = tilde_potential(tf, m, x)
        assert np.max(np.abs(v - vg) / (1 + np.abs(vg))) <= 1e-10
        assert np.max(np.abs(w - tilde_superpotential(tf, m, x))) <= 1e-10
        vf = tilde_potential_factorized(tf, m, x)
        assert np.max(np.abs(vf - vg) / (1 + np.abs(vg))) <= 1e-10


def test_coulomb_ground_state():
    tf = coulomb()
    x = np.linspace(0.05, 8.0, 60)
    psi = tilde_ground(tf, 0, x, 2)
    ratio = psi.value / (np.sqrt(x) * np.exp(-2 * x))
    assert np.max(np.abs(ratio / ratio[0] - 1)) <= 1e-12
    kernel = tilde_ladder_apply(tf, 0, "up", psi, x)
    assert np.max(np.abs(kernel.value)) <= 1e-10
    assert tilde_residual(tf, 0, 0, tilde_grid(tf, 0, 0)) <= 1e-10


@pytest.mark.parametrize("make", ALL, ids=lambda f: f.__name__)
def test_residuals(make):
    tf = make()
    for l in range(tf.base.max_index(4) + 1):
        for m in range(l + 1):
            assert tilde_residual(tf, l, m, tilde_grid(tf, l, m)) <= 1e-8


@pytest.mark.parametrize("make", ALL, ids=lambda f: f.__name__)
def test_chain_relations(make):
    tf = make()
    for l in range(1, tf.base.max_index(3) + 1):
        x = tilde_grid(tf, l, 0, 15)[2:-2]
        top = tilde_eigenfunction(tf, l, l, x, 2)
        assert np.allclose(top.c, tilde_ground(tf, l, x, 2).c, rtol=1e-15, atol=0)
        for m in range(l):
            lo = tilde_eigenfunction(tf, l, m, x, 1)
            hi = tilde_eigenfunction(tf, l, m + 1, x, 1)
            scale = max(np.max(np.abs(lo.value)), np.max(np.abs(hi.value)))
            up = tilde_ladder_apply(tf, m, "up", lo, x).value
            assert np.max(np.abs(up - hi.value)) <= 1e-9 * scale
            gap = tilde_lambda(tf, l) - tilde_lambda(tf, m)
            down = tilde_ladder_apply(tf, m, "down", hi, x).value
            assert np.max(np.abs(down - gap * lo.value)) <= 1e-9 * scale * max(1.0, abs(gap))


@pytest.mark.parametrize("make", ALL, ids=lambda f: f.__name__)
def test_shape_invariance_on_sample_jets(make):
    tf = make()
    for m in range(min(3, tf.base.max_index(3)) + 1):
        x = tilde_grid(tf, m, m, 12)[1:-1]
        assert shape_invariance_defect(tf, m, x) <= 1e-9


def test_coulomb_orthogonality():
    tf = coulomb()
    for m in (0, 1):
        for l1 in range(m, 4):
            for l2 in range(l1 + 1, 4):
                cross = tilde_inner(tf, l1, l2, m)
                norms = tilde_inner(tf, l1, l1, m) * tilde_inner(tf, l2, l2, m)
                assert abs(cross) / math.sqrt(norms) <= 1e-7


def test_small_shift_is_continuous():
    tf = trig_rm()
    small = TildeFamily(tf.base, tf.k, 1e-6)
    x = tilde_grid(tf, 2, 0, 21)
    base = schrod.eigenfunction_jet(tf.base, 2, 0, x, 0).value
    near = tilde_eigenfunction(small, 2, 0, x, 0).value
    assert np.max(np.abs(near - base)) / np.max(np.abs(base)) <= 1e-4


def test_degenerate_chain():
    tf = make_tilde(build_family("s2-plus-1", -6, 0), Fraction(35, 2))
    with pytest.raises(DegenerateTildeEigenvalue):
        tilde_eigenfunction(tf, 1, 0, 0.3)


def test_normalizability_report():
    assert all(is_normalizable(coulomb(), l, 0) for l in range(4))
    assert all(is_normalizable(trig_rm(), l, 0) for l in range(4))
    # the Eckart-type states behave like sinh(x)**(l + (alpha-1)/2) at x = 0
    assert not any(is_normalizable(eckart(), l, 0) for l in range(4))
    # eps_3 = -1 for the hyperbolic Rosen-Morse instance: no decay at +inf
    assert is_normalizable(hyp_rm(), 2, 0)
    assert not is_normalizable(hyp_rm(), 3, 0)
