"""How the level-2r theory splits as a tensor product of the 2- and r-theories.

Run:  python3 demos/factorization.py [r]
"""
from __future__ import annotations

import sys

from skein_lattice import FactorizationContext, kappa_factorization_check, product_formula_check
from skein_lattice.factorization import F_unimodular, u_element_check
from skein_lattice.invariants import ChainLinkPresentation as C

r = int(sys.argv[1]) if len(sys.argv) > 1 else 3
ctx = FactorizationContext(r)
print(ctx)

k = kappa_factorization_check(ctx)
print(f"\nkappa_{2 * r} = {k.witnesses['kappa_p']}")
print(f"i(kappa_2) j(kappa_{r}) = {k.witnesses['product']}  ->  equal: {k.ok}")

print(f"\nI_{2 * r}(M) versus i(I'_2(M)) j(I_{r}(M)):")
for L in [C.empty(), C.s1s2(), *(C.lens(n) for n in range(2, 7)), C.lens(2).connected_sum(C.lens(3)),
          C.chain([2, -1, 3])]:
    v = product_formula_check(L, ctx)
    print(f"   {str(L):28s} {'ok' if v.ok else 'MISMATCH'}   I = {v.witnesses['I_p']}")

F = F_unimodular(ctx)
print(f"\nF on the genus-one lattice: det = {F.witnesses['det']}, unimodular: {F.ok}")

u = u_element_check(ctx)
print(f"u = (e_{r - 3} + 2)/(1 + zeta_{2 * r}) lies in the lattice: {u.witnesses['u_in_lattice']}")
print("F(u) = 1 (x) (z + 2)/(1 + zeta):", u.witnesses["F(u) = 1(x)(z+2)/(1+zeta_p)"])
print("  literal 1 + A_r differs by the unit eps =", u.witnesses["eps"])
