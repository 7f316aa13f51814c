"""The 2-theory: a unimodular lattice over Z[zeta_8] at genus one and two.

Run:  python3 demos/two_theory.py
"""
from __future__ import annotations

from skein_lattice import build_family, gram
from skein_lattice.invariants import ChainLinkPresentation as C, invariant_I
from skein_lattice.linalg import kron
from skein_lattice.torus import theory

th = theory(2)
print(f"2-theory: A = {th.A}, D = {th.D}, kappa = {th.kappa}")

g1 = gram(build_family("two-theory-genus1", 2))
print("\nGram matrix of {omega, t(omega)}:")
for row in g1.matrix:
    print("   ", "   ".join(str(c) for c in row))
print("determinant:", g1.determinant, "(unit)" if g1.is_unit else "(NOT a unit)")

g2 = gram(build_family("two-theory-Σg2n", 2, 2))
print("\ngenus two: Gram == B (x) B ?", g2.matrix == kron(g1.matrix, g1.matrix))

print("\nA few closed invariants I_2:")
for L in (C.empty(), C.s1s2(), C.lens(2), C.lens(4), C.chain([1, -2, 3])):
    print(f"   {str(L):28s} {invariant_I(L, th)}")
