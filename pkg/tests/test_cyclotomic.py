from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, cyclotomic_poly, symbols, totient

from skein_lattice.cyclotomic import Cyc, IdealHNF, NotDivisible, RingHom, phi, zeta
from skein_lattice.torus import i_hom, j_hom

CONDUCTORS = [1, 3, 4, 5, 8, 12, 20, 24]
X = symbols("X")


@st.composite
def cycs(draw, n=None, integral=True):
    n = n or draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(st.integers(-5, 5), min_size=1, max_size=phi(n) + 3))
    den = 1 if integral else draw(st.integers(1, 4))
    return Cyc(n, coeffs, den)


def approx(x: Cyc) -> complex:
    return x.to_complex()


def test_phi_matches_sympy():
    for n in range(1, 50):
        assert phi(n) == totient(n)


def test_zeta_order():
    for n in (3, 8, 12, 24, 40):
        z = zeta(n)
        assert z ** n == 1
        assert all(z ** k != 1 for k in range(1, n))


def test_minimal_polynomial_vanishes():
    n = 24
    z = zeta(n)
    poly = Poly(cyclotomic_poly(n, X), X).all_coeffs()  # highest degree first
    acc = Cyc.from_int(0, n)
    for c in poly:
        acc = acc * z + int(c)
    assert acc == 0


def test_mixed_conductors_embed_in_lcm():
    x = zeta(8) + zeta(3)
    assert x.n in (24, 24 * 1)
    assert abs(approx(x) - (cmath.exp(2j * cmath.pi / 8) + cmath.exp(2j * cmath.pi / 3))) < 1e-12


def test_sqrt2_and_units():
    s = zeta(8) + zeta(8) ** -1
    assert s * s == 2
    assert not s.is_unit()
    assert (1 + zeta(5)).is_unit()
    assert (1 - zeta(5)).norm_to_z() == 5


def test_exact_division_and_failure():
    x = (1 - zeta(12)) * (2 + zeta(12, 5))
    assert x.exact_divide(1 - zeta(12)) == 2 + zeta(12, 5)
    with pytest.raises(NotDivisible):
        Cyc.from_int(1, 12).exact_divide(1 - zeta(4) + 1)  # 2 - i has norm 5


def test_json_roundtrip_and_str():
    x = Cyc(8, [1, -2, 0, 3], 2)
    assert Cyc.from_json(x.to_json()) == x
    assert "z8" in str(x)


@given(cycs(), cycs(), cycs())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@given(cycs(integral=False), cycs(integral=False))
@settings(max_examples=60, deadline=None)
def test_numeric_embedding_is_a_ring_map(a, b):
    assert abs(approx(a * b) - approx(a) * approx(b)) < 1e-8
    assert abs(approx(a + b) - approx(a) - approx(b)) < 1e-8


@given(cycs(integral=False))
@settings(max_examples=60, deadline=None)
def test_inverse_and_conjugate(a):
    if a == 0:
        return
    assert a * a.inverse() == 1
    assert abs(approx(a.conjugate()) - approx(a).conjugate()) < 1e-8
    assert a.norm() == Fraction(a.norm())
    assert (a * a.conjugate()).conjugate() == a * a.conjugate()


@given(cycs(n=24), cycs(n=24))
@settings(max_examples=40, deadline=None)
def test_norm_is_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()


@given(cycs(n=20), st.sampled_from([1, 3, 7, 9, 11, 13, 17, 19]))
@settings(max_examples=40, deadline=None)
def test_galois_is_a_ring_automorphism(a, k):
    b = a * a + zeta(20, 3)
    assert b.galois(k) == a.galois(k) * a.galois(k) + zeta(20, 3 * k)


@pytest.mark.parametrize("r", [3, 5, 7, 11])
def test_i_and_j_are_ring_maps(r):
    i, j = i_hom(r), j_hom(r)
    for x, y in [(zeta(8) + 2, zeta(8, 3) - 1), (zeta(8, 5), zeta(8, 2) + 3)]:
        assert i(x * y) == i(x) * i(y)
        assert i(x + y) == i(x) + i(y)
    src = j.source
    for x, y in [(zeta(src) + 2, zeta(src, 3) - 1), (zeta(src, 5), zeta(src, 2) + 3)]:
        assert j(x * y) == j(x) * j(y)


def test_ringhom_rejects_bad_exponent():
    with pytest.raises(ValueError):
        RingHom(8, 24, 2)


def test_ideal_basics():
    n = 12
    h = 1 + zeta(n)
    I = IdealHNF.from_generators([2], n)
    assert I.norm() == 2 ** phi(n)
    assert IdealHNF.from_generators([h], n).is_unit_ideal() == h.is_unit()
    J = IdealHNF.from_generators([1 - zeta(3)], n)
    assert J.norm() == 9
    assert (I * J).norm() == I.norm() * J.norm()
    assert I.contains(2 * zeta(n, 5) + 4)
    assert not I.contains(1 + 0 * zeta(n))
    assert (I + J).is_unit_ideal()
    assert IdealHNF.zero(n).is_zero()
    assert IdealHNF.from_generators([], n).is_zero()


@given(cycs(n=8), cycs(n=8))
@settings(max_examples=30, deadline=None)
def test_ideal_product_generated_by_products(a, b):
    if a == 0 or b == 0:
        return
    A = IdealHNF.from_generators([a, 2], 8)
    B = IdealHNF.from_generators([b, 1 - zeta(8)], 8)
    AB = IdealHNF.from_generators([x * y for x in (a, Cyc.from_int(2, 8))
                                   for y in (b, 1 - zeta(8))], 8)
    assert A * B == AB
    assert A.contains_ideal(A * B)
