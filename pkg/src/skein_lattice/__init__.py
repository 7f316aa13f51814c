"""Exact integral TQFT lattices, quantum invariants and ideal invariants."""
from __future__ import annotations

from .cyclotomic import (Cyc, IdealHNF, NotDivisible, RingHom, apply_hom, conjugate, cyc,
                         embed, exact_divide, ideal_contains, ideal_eq, ideal_from_generators,
                         ideal_mul, is_unit, norm_to_z, zeta)
from .torus import SkeinVector, Theory, core, genus1_pairing, i_hom, j_hom, omega, theory, twist
from .invariants import (ChainLinkPresentation, Component, bracket_invariant, constants,
                         invariant_I, invariant_theta)
from .recoupling import (Genus2Model, InadmissibleError, eyeglass, ghat, h_divisibility,
                         oracle_check, standard_basis, tet, theta, tripod)
from .factorization import FactorizationContext, Verdict, kappa_factorization_check, product_formula_check
from .bases import (FAMILY_IDS, BasisFamily, NotInLattice, build_family, change_of_basis, gram,
                    generator_sweep, membership)
from .fkb import BoundedManifold, fkb_generators, fkb_ideal, fkb_product_check

__version__ = "0.1.0"

__all__ = [
    "Cyc", "IdealHNF", "NotDivisible", "RingHom", "apply_hom", "conjugate", "cyc", "embed",
    "exact_divide", "ideal_contains", "ideal_eq", "ideal_from_generators", "ideal_mul",
    "is_unit", "norm_to_z", "zeta",
    "SkeinVector", "Theory", "core", "genus1_pairing", "i_hom", "j_hom", "omega", "theory", "twist",
    "ChainLinkPresentation", "Component", "bracket_invariant", "constants", "invariant_I",
    "invariant_theta",
    "Genus2Model", "InadmissibleError", "eyeglass", "ghat", "h_divisibility", "oracle_check",
    "standard_basis", "tet", "theta", "tripod",
    "FactorizationContext", "Verdict", "kappa_factorization_check", "product_formula_check",
    "FAMILY_IDS", "BasisFamily", "NotInLattice", "build_family", "change_of_basis", "gram",
    "generator_sweep", "membership",
    "BoundedManifold", "fkb_generators", "fkb_ideal", "fkb_product_check",
]
