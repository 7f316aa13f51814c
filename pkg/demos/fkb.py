"""Ideal invariants of manifolds with torus boundary.

Each bounded manifold N gives the ideal J_p(N) generated by the pairings of its
vacuum state with a lattice basis.  Run:  python3 demos/fkb.py
"""
from __future__ import annotations

from skein_lattice import FactorizationContext, fkb_ideal, fkb_product_check
from skein_lattice.fkb import corpus, monotonicity_check, monotonicity_pairs

ctx = FactorizationContext(3)
print(f"{'manifold':36s} {'N(J_6)':>7s} {'N(J_2 J_3)':>11s}  product theorem")
for N in corpus():
    v = fkb_product_check(N, ctx)
    print(f"{str(N):36s} {v.witnesses['norm_J_p']:7d} {v.witnesses['norm_product']:11d}  {v.ok}")

print("\nmonotonicity (N inside N' => J(N') inside J(N)), p = 10:")
for a, b in monotonicity_pairs():
    print(f"   {str(a):30s} in {str(b):40s} {monotonicity_check(a, b, 10).ok}")

print("\nat r = 5 an even Jones-Wenzl color on the core is the exception:")
bad = [N for N in corpus() if not fkb_product_check(N, FactorizationContext(5)).ok]
for N in bad:
    print(f"   {N}: J_10 = (1) but the 2-theory vacuum is zero")
print("\nJ_10(two 0-framed omega curves) has norm", fkb_ideal(corpus()[7], 10).norm())
