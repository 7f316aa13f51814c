from __future__ import annotations

import pytest

from skein_lattice.bases import (BasisFamily, build_family, change_of_basis, coordinates, delta_i,
                                 dual_basis, families_for, generator_sweep, gram, lattice_equal,
                                 lollipop_colorings, lollipop_sharp_index_check,
                                 lollipop_tensor_check, m_choice_report, membership,
                                 u_support_check, verify_families)
from skein_lattice.cyclotomic import zeta
from skein_lattice.factorization import FactorizationContext
from skein_lattice.torus import SkeinVector, e, genus1_pairing, omega, theory, twist


def test_two_theory_gram_matrix():
    rep = gram(build_family("two-theory-genus1", 2))
    s2 = zeta(8) + zeta(8, 7)
    assert rep.matrix == [[s2, zeta(8, -1)], [zeta(8), s2]]
    assert rep.determinant == 1 and rep.is_unit and rep.hermitian


def test_delta_table():
    # delta_i = 1 iff i + p = 0 or 1 mod 4
    # for p = 2 mod 4 this means i = 2, 3 mod 4
    for p in (6, 10, 14):
        assert [delta_i(i, p) for i in range(8)] == [0, 0, 1, 1, 0, 0, 1, 1]
    fam = build_family("delta-twists", 6)
    assert fam.labels == ["t^0(omega)", "t^1(omega)"]


def test_small_families():
    assert build_family("powers-of-v", 3).vectors == [e(3, 0)]
    th = theory(5)
    fam = build_family("powers-of-v", 5)
    v = fam.vectors[1]
    assert coordinates(v, fam) == [0, 1]
    assert (v * (1 + th.A) - SkeinVector.basis(th, 1) - SkeinVector.basis(th, 0) * 2).is_zero()


def test_gram_of_single_vector():
    th = theory(7)
    assert genus1_pairing(e(th, 0), e(th, 0)) == th.D


def test_membership_examples():
    fam = build_family("two-theory-genus1", 2)
    m = membership(e(2, 0), fam)
    assert m.integral
    assert m.coords == [-zeta(8, 2) * zeta(8), zeta(8)]
    for p, fid in [(5, "even-twists"), (6, "delta-twists"), (7, "odd-twists")]:
        assert membership(omega(p), build_family(fid, p)).integral
    # z/2 is not in the lattice
    assert not membership(SkeinVector.basis(theory(5), 1) / 2, build_family("even-twists", 5)).integral


def test_change_of_basis_identity_and_pairs():
    fam = build_family("even-twists", 5)
    cob = change_of_basis(fam, fam)
    assert cob.matrix == [[1 if i == j else 0 for j in range(2)] for i in range(2)]
    assert change_of_basis(build_family("even-twists", 5), build_family("odd-twists", 5)).unimodular
    assert lattice_equal(build_family("u-divided", 6), build_family("delta-twists", 6))


def test_non_basis_is_detected():
    th = theory(5)
    good = build_family("even-twists", 5)
    bad = BasisFamily("doubled", 5, 1, [good.vectors[0] * 2] + good.vectors[1:], good.space)
    assert not gram(bad).is_unit
    cob = change_of_basis(bad, good)
    assert not cob.unimodular
    assert cob.index.norm() == 2 ** 8  # (2) in Z[zeta_20] has norm 2^phi(20)
    assert not generator_sweep(th, bad).ok


@pytest.mark.parametrize("p,genus", [(2, 1), (2, 2), (3, 1), (5, 1), (7, 1), (6, 1), (6, 2)])
def test_verify_families(p, genus):
    v = verify_families(p, genus)
    assert v.ok, v.to_json()


def test_family_availability():
    assert families_for(5) == ("powers-of-v", "even-twists", "odd-twists")
    assert "u-divided" in families_for(6)
    assert families_for(5, 2) == ()
    with pytest.raises(ValueError):
        build_family("even-twists", 6)
    with pytest.raises(NotImplementedError):
        build_family("delta-twists", 6, 1, points=2)


def test_dual_basis():
    fam = build_family("delta-twists", 6)
    dual = dual_basis(fam)
    for i, x in enumerate(fam.vectors):
        for j, y in enumerate(dual.vectors):
            assert genus1_pairing(x, y) == (1 if i == j else 0)


@pytest.mark.parametrize("r", [3, 5])
def test_u_support(r):
    v = u_support_check(FactorizationContext(r))
    assert v.ok
    assert all(k % 4 in (0, 1) for k in v.witnesses["exponents"])


def test_lollipop_colorings_count():
    assert len(lollipop_colorings(1, 3)) == 1
    assert len(lollipop_colorings(1, 5)) == 2
    assert len(lollipop_colorings(2, 5)) == 5


@pytest.mark.parametrize("p,g", [(6, 1), (6, 2), (10, 1)])
def test_lollipop_sharp_and_tensor(p, g):
    assert lollipop_sharp_index_check(g, p).ok
    assert lollipop_tensor_check(p, g).ok


def test_m_choice_resolution():
    rep = m_choice_report(10, 1)
    assert rep["integral_by_variant"]["surgery"]
    assert not any(v for k, v in rep["integral_by_variant"].items() if k.startswith("literal"))
    rep6 = m_choice_report(6, 1)
    assert all(rep6["integral_by_variant"].values())


def test_twists_of_omega_in_lattice():
    fam = build_family("delta-twists", 10)
    for k in range(-4, 5):
        assert membership(twist(omega(10), k), fam).integral
