from __future__ import annotations

from itertools import permutations

import pytest

from skein_lattice.recoupling import (Genus2Model, InadmissibleError, Multicurve, StandardBasisVector,
                                      admissible, expand_lollipop, eyeglass, fusion_outer_curve, g_r,
                                      ghat, h_divisibility, lollipop_resolution, max_color,
                                      oracle_check, standard_basis, standard_norm_squared, tet, theta,
                                      tripod, u_substitute)
from skein_lattice.torus import e, theory


def test_admissibility():
    assert admissible(1, 1, 2)
    assert not admissible(1, 1, 1)
    assert not admissible(0, 1, 3)
    assert max_color(theory(2)) == 1
    assert max_color(theory(6)) == 1
    assert max_color(theory(7)) == 5


@pytest.mark.parametrize("p", [5, 7, 10])
def test_theta_values_and_symmetry(p):
    th = theory(p)
    assert theta(0, 0, 0, th) == 1
    assert theta(1, 1, 0, th) == th.deltas[1]
    for a, b, c in [(1, 1, 2), (2, 2, 2), (1, 2, 3), (3, 3, 2)]:
        vals = {theta(*perm, th) for perm in permutations((a, b, c))}
        assert len(vals) == 1
    with pytest.raises(InadmissibleError):
        theta(1, 1, 1, th)


@pytest.mark.parametrize("p", [5, 7])
def test_tet_degenerates_to_theta(p):
    th = theory(p)
    for a, b, f in [(1, 1, 2), (2, 1, 1), (2, 2, 2), (1, 1, 0)]:
        assert tet(a, b, 0, b, a, f, th) == theta(a, b, f, th)
    # symmetry a<->c, b<->d preserves the vertex set
    assert tet(2, 1, 2, 1, 2, 1, th) == tet(1, 2, 2, 2, 1, 1, th)
    with pytest.raises(InadmissibleError):
        tet(1, 2, 1, 2, 1, 3, th)


@pytest.mark.parametrize("p", [3, 5, 6, 7, 10])
def test_temperley_lieb_oracle(p):
    rep = oracle_check(p)
    assert rep["ok"], rep["mismatches"]
    assert rep["max_color"] == (2 if p in (3, 6) else 3)


@pytest.mark.parametrize("p,rank", [(2, 4), (3, 1), (5, 5), (6, 4), (7, 14), (10, 20)])
def test_genus2_ranks(p, rank):
    th = theory(p)
    assert Genus2Model(th).rank == rank
    if p != 2:
        assert len(standard_basis(2, th)) == rank


@pytest.mark.parametrize("p", [5, 6, 7])
def test_standard_norms_match_eigen_model(p):
    th = theory(p)
    M = Genus2Model(th)
    for u in standard_basis(1, th):
        assert standard_norm_squared(u, th) == 1
    for i in range(th.d):
        for j in range(th.d):
            v = M.vector_from_handles(e(th, i), e(th, j))
            assert M.hermitian(v, v) == standard_norm_squared(StandardBasisVector(2, (i, j, 0)), th)
    # the trivial genus-2 coloring has norm <#2 S1xS2> = D
    assert standard_norm_squared(StandardBasisVector(2, (0, 0, 0)), th) == th.D


@pytest.mark.parametrize("p", [5, 7])
def test_outer_curve_fusion_is_consistent(p):
    """The outer curve colored x, fused along the stick, has the model norm of e^{12}_x."""
    th = theory(p)
    M = Genus2Model(th)
    for x in range(1, th.d):
        coords = fusion_outer_curve(x, th)
        direct = M.vector_from_multicurve(Multicurve.curve([1, 2], th.one(), 2, x))
        norm = sum((c * c.conjugate() * standard_norm_squared(u, th) for u, c in coords.items()),
                   th.zero())
        assert M.hermitian(direct, direct) == norm


def test_lollipop_resolution_shapes():
    d = theory(5).loop_value(1)
    assert str(lollipop_resolution((0,), (1,), d)) == "(1)*e1"
    eg = lollipop_resolution((1, 1), (0, 0), d)
    assert set(eg.terms) == {(((1,), 1), ((2,), 1)), (((1, 2), 1),)}
    # planar evaluation (every curve bounds a disk) of a tadpole is zero
    assert sum(c * d ** sum(k for _, k in m) for m, c in eg.terms.items()) == 0
    with pytest.raises(ValueError):
        lollipop_resolution((1, 0), (0, 0), d)


def test_eyeglass_first_line_at_six():
    # [2] = 1 at p = 6, so e^{12} - e^1 e^2 / [2] reads e^{12} - e^1 e^2
    assert str(eyeglass(6)) == "(-1)*e1*e2 + (1)*e12"
    assert eyeglass(6).color == 0


def test_h_divisibility():
    th = theory(6)
    assert h_divisibility(eyeglass(th), 1, th)
    assert not h_divisibility(eyeglass(th), 2, th)
    assert h_divisibility(tripod(th), 1, th)
    assert h_divisibility(eyeglass(10), 1, 10)
    empty = ghat((0, 0), (0, 0), th)
    assert h_divisibility(empty, 0, th)
    assert not h_divisibility(empty, 1, th)
    assert u_substitute(empty, th).color == "u"


def test_expansions():
    th = theory(5)
    assert expand_lollipop((0,), (1,), th) == {StandardBasisVector(1, (1,)): th.one()}
    coords = expand_lollipop((1, 1), (0, 0), th)
    assert all(u.genus == 2 and u.is_admissible(th) for u in coords)
    assert g_r((1, 1), (0, 0), th).color == 1


@pytest.mark.parametrize("p", [5, 6, 7])
def test_genus2_norms_match_surgery_oracle(p):
    """The double of u(i, j, 0) is (S1xS2, e_i u e_i) # (S1xS2, e_j u e_j)."""
    from skein_lattice.invariants import OMEGA, ChainLinkPresentation, Component, bracket_invariant
    th = theory(p)

    def doubled(i):
        return ChainLinkPresentation(((Component(0, i), Component(0, OMEGA), Component(0, i)),))

    for i in range(th.d):
        for j in range(th.d):
            closed = bracket_invariant(doubled(i).connected_sum(doubled(j)), th)
            assert closed == standard_norm_squared(StandardBasisVector(2, (i, j, 0)), th)
