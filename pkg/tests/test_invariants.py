from __future__ import annotations

import cmath

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from skein_lattice.cyclotomic import Cyc
from skein_lattice.invariants import (OMEGA, ChainLinkPresentation as C, Component, bracket_eval,
                                      bracket_invariant, constants, gauss_sum, invariant_I,
                                      invariant_theta, kappa_ratio, linking_matrix, nullity, signature)
from skein_lattice.torus import theory

LEVELS = [2, 3, 5, 6, 7, 10]
framings = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


def test_linking_data():
    assert linking_matrix(C.chain([0])) == [[0]]
    assert (signature(C.chain([0])), nullity(C.chain([0]))) == (0, 1)
    assert (signature(C.chain([1])), nullity(C.chain([1]))) == (1, 0)
    m = linking_matrix(C.chain([2, -3]))
    assert m == [[2, 1], [1, -3]]
    assert signature(C.chain([2, -3])) == 0


@given(framings)
@settings(max_examples=80, deadline=None)
def test_signature_matches_numpy(fs):
    m = np.array(linking_matrix(C.chain(fs)), dtype=float)
    ev = np.linalg.eigvalsh(m)
    tol = 1e-9
    assert signature(C.chain(fs)) == int((ev > tol).sum() - (ev < -tol).sum())
    assert nullity(C.chain(fs)) == int((abs(ev) <= tol).sum())


def test_banded_components_do_not_enter_the_linking_form():
    L = C((( Component(0, OMEGA), Component(0, 1)),))
    assert nullity(L) == 1 and signature(L) == 0


@pytest.mark.parametrize("p", LEVELS)
def test_basic_values(p):
    th = theory(p)
    assert bracket_eval(C.empty(), th) == 1
    assert bracket_invariant(C.empty(), th) == th.eta
    assert bracket_invariant(C.s1s2(), th) == 1
    assert invariant_I(C.empty(), th) == 1
    assert invariant_I(C.s1s2(), th) == th.D
    assert invariant_theta(C.s1s2(), th) == th.D2
    assert invariant_I(C.lens(1), th) == 1
    assert invariant_I(C.lens(-1), th) == 1


@pytest.mark.parametrize("p", [3, 5, 6, 7])
def test_colored_unknot(p):
    th = theory(p)
    for i in range(th.d):
        assert bracket_eval(C.chain([0], [i]), th) == th.deltas[i]


@pytest.mark.parametrize("p", LEVELS)
@pytest.mark.parametrize("fs", [[2], [3, -2], [1, 2, 2], [-2, 0, 3]])
def test_blow_up_invariance(p, fs):
    """Adding a (+-1)-framed meridian at the end of a chain changes the last framing by -+1."""
    th = theory(p)
    base = invariant_I(C.chain(fs), th)
    for eps in (1, -1):
        blown = C.chain(fs[:-1] + [fs[-1] + eps, eps])
        assert invariant_I(blown, th) == base


@pytest.mark.parametrize("p", [3, 5, 6, 7, 10])
def test_lens_space_homeomorphisms(p):
    th = theory(p)
    # L(n, q) = L(n, q') when q q' = +-1 or q = +-q' (mod n), orientation kept for qq' = 1, q = q'
    for n, q, q2 in [(5, 2, 3), (7, 2, 4), (7, 3, 5), (11, 2, 6), (12, 5, 5)]:
        assert invariant_I(C.lens(n, q), th) == invariant_I(C.lens(n, q2), th)
    assert linking_matrix(C.lens(7, 3)) == [[3, 1, 0], [1, 2, 1], [0, 1, 2]]


@pytest.mark.parametrize("p", LEVELS)
def test_connected_sum_law(p):
    th = theory(p)
    for a, b in [(C.lens(2), C.lens(3)), (C.chain([1, 3]), C.chain([-2])), (C.s1s2(), C.lens(4))]:
        lhs = bracket_invariant(a.connected_sum(b), th)
        assert lhs == th.D * bracket_invariant(a, th) * bracket_invariant(b, th)
        assert invariant_I(a.connected_sum(b), th) == invariant_I(a, th) * invariant_I(b, th)


@pytest.mark.parametrize("p", [3, 5, 7, 10])
def test_lens_against_numeric_gauss_sum(p):
    """I_p(L(n,1)) from floating-point sums over the Kauffman variable."""
    th = theory(p)
    A = cmath.exp(2j * cmath.pi * 2 / th.n)

    def qi(k):
        return (A ** (2 * k) - A ** (-2 * k)) / (A ** 2 - A ** -2)

    def S(m):
        return sum(qi(i + 1) ** 2 * ((-1) ** i * A ** (i * i + 2 * i)) ** m for i in range(th.d))

    for n in range(1, 9):
        want = S(n) / S(1) if n > 0 else None
        got = invariant_I(C.lens(n), th).to_complex()
        assert abs(got - want) < 1e-8


@pytest.mark.parametrize("p", LEVELS)
def test_kappa(p):
    th = theory(p)
    assert kappa_ratio(th) == 1
    assert gauss_sum(th) == th.kappa  # omega is normalized, so <U_{+1}(omega)> = kappa
    c = constants(th)
    assert set(c.to_json()) == {"D", "eta", "kappa", "kappa_ratio"}


def test_json_roundtrip():
    L = C.chain([1, -2, 3]).connected_sum(C.lens(5))
    assert C.from_json(L.to_json()).to_json() == L.to_json()
    assert C.from_json({"lens": [7, 2]}) == C.lens(7, 2)
    with pytest.raises(ValueError):
        C.lens(6, 4)


def test_integrality_of_invariants():
    for p in (5, 6, 7):
        for fs in ([2, 2], [3, -1, 2], [0, 0]):
            assert invariant_I(C.chain(fs), p).is_integral
    assert isinstance(invariant_I(C.lens(3), 5), Cyc)
