import math

import numpy as np
import pytest

from shapeinv.coords import coordinate_map
from shapeinv.errors import InsufficientOrder, OutOfDomain
from shapeinv.family import build_family, eigenvalue
from shapeinv.jets import TaylorJet
from shapeinv.ladder import associated
from shapeinv.quad import inner_product, integrate
from shapeinv.schrod import (chebyshev_grid, closed_form_potential, closed_form_superpotential,
                             eigenfunction_jet, layered_jet, potential, potential_from_s,
                             schrodinger_grid, schrodinger_residual, superpotential,
                             truncation_interval, x_ladder_apply)

from conftest import REPRESENTATIVE

MORSE = ("s2", -6, 2)
POSCHL_TELLER = ("one-minus-s2", -4, 1)


def test_superpotential_examples(hermite):
    assert superpotential(hermite, 3, 1.0) == pytest.approx(1.0, abs=1e-15)
    assert superpotential(build_family(*MORSE), 0, 0.0) == pytest.approx(2.5, abs=1e-14)
    assert superpotential(build_family(*POSCHL_TELLER), 0, math.pi / 2) == pytest.approx(-0.5, abs=1e-14)


def test_potential_examples(hermite):
    assert potential(hermite, 0, 0.0) == pytest.approx(-1.0, abs=1e-15)
    assert potential(build_family(*MORSE), 0, 40.0) == pytest.approx(12.25, rel=1e-12)
    assert potential(build_family(*POSCHL_TELLER), 0, math.pi / 2) == pytest.approx(-1.25, abs=1e-13)


def test_ground_state_jet(hermite):
    jet = eigenfunction_jet(hermite, 0, 0, 0.0, order=2)
    assert jet.c == pytest.approx([1.0, 0.0, -0.5], abs=1e-15)
    pointwise = eigenfunction_jet(hermite, 2, 1, 0.7, order=0).value
    assert eigenfunction_jet(hermite, 2, 1, 0.7, order=3).value == pytest.approx(pointwise)


def test_out_of_domain():
    f = build_family("s", -1, 1)
    with pytest.raises(OutOfDomain):
        potential(f, 0, -1.0)
    with pytest.raises(OutOfDomain):
        schrodinger_residual(f, 1, 0, [0.5, -0.5])


def test_hermite_ground_residual(hermite):
    assert schrodinger_residual(hermite, 0, 0, np.linspace(-5, 5, 101)) <= 1e-10


@pytest.mark.parametrize("row", REPRESENTATIVE, ids=str)
def test_residuals_small(row):
    f = build_family(*row)
    for l in range(f.max_index(6) + 1):
        for m in range(l + 1):
            assert schrodinger_residual(f, l, m, schrodinger_grid(f, l, m)) <= 1e-8


@pytest.mark.parametrize("row", REPRESENTATIVE, ids=str)
def test_closed_forms_match_generic(row):
    f = build_family(*row)
    grid = schrodinger_grid(f, 0, 0, 51)
    for m in range(min(4, f.max_index(4)) + 1):
        v = potential(f, m, grid)
        for other in (closed_form_potential(f, m, grid), potential_from_s(f, m, grid)):
            assert np.max(np.abs(v - other) / (1 + np.abs(v))) <= 1e-10
        w = superpotential(f, m, grid)
        assert np.max(np.abs(w - closed_form_superpotential(f, m, grid)) / (1 + np.abs(w))) <= 1e-10


@pytest.mark.parametrize("row", REPRESENTATIVE, ids=str)
def test_ground_state_log_derivative(row):
    f = build_family(*row)
    sign = coordinate_map(f.case).sign
    for m in range(min(3, f.max_index(3)) + 1):
        grid = schrodinger_grid(f, m, m, 41)[5:-5]
        psi = eigenfunction_jet(f, m, m, grid, order=1)
        w = superpotential(f, m, grid)
        ratio = -sign * psi.derivative_value(1) / psi.value
        assert np.max(np.abs(w - ratio) / (1 + np.abs(w))) <= 1e-9


@pytest.mark.parametrize("row", REPRESENTATIVE, ids=str)
def test_x_ladder_relations(row):
    f = build_family(*row)
    for l in range(f.max_index(4) + 1):
        grid = schrodinger_grid(f, l, 0, 21)[3:-3]
        lam = eigenvalue(f, l)
        top = eigenfunction_jet(f, l, l, grid, order=2)
        scale = np.max(np.abs(top.value))
        assert np.max(np.abs(x_ladder_apply(f, l, "up", top, grid).c)) <= 1e-10 * max(1.0, scale)
        for m in range(l):
            psi = eigenfunction_jet(f, l, m, grid, order=2)
            nxt = eigenfunction_jet(f, l, m + 1, grid, order=1)
            up = x_ladder_apply(f, m, "up", psi, grid)
            ref = max(1.0, np.max(np.abs(nxt.value)))
            assert np.max(np.abs(up.value - nxt.value)) <= 1e-10 * ref
            down = x_ladder_apply(f, m, "down", up, grid)
            target = float(lam - eigenvalue(f, m)) * psi.value
            assert np.max(np.abs(down.value - target)) <= 1e-9 * max(1.0, np.max(np.abs(target)))


def test_ladder_needs_order(hermite):
    with pytest.raises(InsufficientOrder):
        x_ladder_apply(hermite, 0, "up", TaylorJet.constant(1.0, 0), 0.0)


@pytest.mark.parametrize("row", [("one", -2, 0), ("s", -1, 1), ("one-minus-s2", -3, "1/2"),
                                 ("s2", -10, 1)], ids=str)
def test_orthogonality_carries_over_to_x(row):
    f = build_family(*row)
    cmap = coordinate_map(f.case)
    top = f.max_index(4)
    for m in range(2):
        for l in range(m, top + 1):
            for k in range(m, l + 1):
                gl, gk = associated(f, l, m), associated(f, k, m)

                def fn(x, da, db, gl=gl, gk=gk):
                    a, b = cmap.x_domain
                    if math.isfinite(a):
                        x = np.where(da <= db, a + da, b - db)
                        x = np.clip(x, np.nextafter(a, b), np.nextafter(b, a))
                    return layered_jet(f, gl, x, 0).value * layered_jet(f, gk, x, 0).value

                xval = integrate(fn, cmap.x_domain).value
                sval = inner_product(f, gl, gk).value
                assert xval == pytest.approx(sval, rel=1e-8, abs=1e-8)


def test_truncation_window_is_symmetric_for_even_amplitude():
    lo, hi = truncation_interval((-math.inf, math.inf), lambda x: np.exp(-x * x))
    assert lo == -hi
    assert math.exp(-hi * hi) < 1e-13


def test_chebyshev_grid_stays_inside():
    g = chebyshev_grid(0.0, 1.0, 7)
    assert g.min() > 0.0 and g.max() < 1.0
    assert g[3] == pytest.approx(0.5, abs=1e-16)
