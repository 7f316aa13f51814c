from __future__ import annotations

import pytest

from skein_lattice.checks import standard_presentations
from skein_lattice.cyclotomic import zeta
from skein_lattice.factorization import (FactorizationContext, F_unimodular, genus2_F,
                                         kappa_factorization_check, closed_form_kappa,
                                         product_formula_check, u_element, u_element_check,
                                         vacuum_corpus_check)
from skein_lattice.invariants import ChainLinkPresentation as C
from skein_lattice.torus import SkeinVector, core, i_hom, j_hom, omega, theory, twist


def test_ring_maps_on_generators():
    assert i_hom(3)(zeta(8)) == zeta(24, 9)
    assert j_hom(3)(zeta(6)) == zeta(12, 10)
    for r in (3, 5, 7):
        ctx = FactorizationContext(r)
        assert ctx.i(theory(2).A) == theory(2 * r).A ** (r * r)


def test_context_rejects_bad_r():
    for r in (1, 2, 9):
        with pytest.raises(ValueError):
            FactorizationContext(r)


def test_kappa_closed_forms():
    assert closed_form_kappa(6) == zeta(24, 9)
    assert closed_form_kappa(2) == zeta(8)
    assert closed_form_kappa(3) == 1
    for r in (3, 5, 7):
        v = kappa_factorization_check(FactorizationContext(r))
        assert v.ok, v.witnesses


@pytest.mark.parametrize("r", [3, 5])
def test_product_formula_small(r):
    ctx = FactorizationContext(r)
    for L in standard_presentations(lens_max=6, chain_length=2, framing_range=2):
        assert product_formula_check(L, ctx).ok, str(L)


def test_product_formula_named_instances():
    ctx = FactorizationContext(3)
    v = product_formula_check(C.s1s2(), ctx)
    assert v.witnesses["I_p"] == theory(6).D
    assert v.ok
    assert product_formula_check(C.lens(2).connected_sum(C.lens(3)), ctx).ok
    assert product_formula_check(C.lens(7, 3), ctx).ok


@pytest.mark.parametrize("r", [3, 5, 7])
def test_F_is_unimodular_and_tensorial(r):
    ctx = FactorizationContext(r)
    assert F_unimodular(ctx).ok
    assert vacuum_corpus_check(ctx).ok
    assert ctx.F_inverse(ctx.F(omega(ctx.thp))) == omega(ctx.thp)


def test_F_on_cables_not_on_colors():
    """F is multiplicative on banded links, so e_2 = z^2 - 1 is not a pure tensor."""
    ctx = FactorizationContext(5)
    zp, z2, zr = core(ctx.thp), core(ctx.th2), core(ctx.thr)
    one_p = zp ** 0
    assert ctx.F(zp * zp) == ctx.tensor(z2 * z2, zr * zr)
    e2 = zp * zp - one_p
    assert ctx.F(e2) != ctx.tensor((-z2) ** 2 - z2 ** 0, zr * zr - zr ** 0)


@pytest.mark.parametrize("r", [3, 5])
def test_u_element(r):
    ctx = FactorizationContext(r)
    v = u_element_check(ctx)
    assert v.ok, v.witnesses
    th = ctx.thp
    u = u_element(ctx)
    assert u * th.h == SkeinVector.basis(th, r - 3) + SkeinVector.basis(th, 0) * 2


@pytest.mark.parametrize("r", [3, 5])
def test_genus2_isometry(r):
    g2 = genus2_F(FactorizationContext(r))
    assert g2.isometry_check().ok
    assert g2.Mp.rank == g2.M2.rank * g2.Mr.rank


@pytest.mark.parametrize("r", [3, 5])
def test_F_intertwines_twists(r):
    """F(t x) = (t (x) t) F(x), with t acting diagonally on e_a (x) e_k."""
    ctx = FactorizationContext(r)
    x = omega(ctx.thp) + core(ctx.thp) * 3
    Fx, Ftx = ctx.F(x), ctx.F(twist(x, 1))
    mu2, mur = ctx.th2.mus, ctx.thr.mus
    pred = [Fx[a * ctx.dr + k] * ctx.i(mu2[a]) * ctx.j(mur[k])
            for a in range(ctx.th2.d) for k in range(ctx.thr.d)]
    assert Ftx == pred
