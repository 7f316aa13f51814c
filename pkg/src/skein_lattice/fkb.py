"""The FKB ideal of a manifold with torus boundary.

A bounded manifold is described by a recipe that makes sense in every theory:
a solid torus containing ``cable`` parallel copies of the core (a banded link),
optionally one more core decorated by the Jones–Wenzl idempotent ``core_color``,
and in a collar, parallel surgery curves with framings ``omega_twists``; the
whole is finally reparametrized by ``twist`` Dehn twists.  Its vacuum state is
``t^twist( z^cable * e_color * prod_k t^k(omega) )`` computed natively at each level.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .bases import BasisFamily, build_family
from .cyclotomic import Cyc, IdealHNF
from .factorization import FactorizationContext, Verdict
from .invariants import Component, ChainLinkPresentation, OMEGA, invariant_I
from .torus import ODD, TWICE_ODD, TWO, SkeinVector, Theory, core, genus1_pairing, omega, theory, twist


@dataclass(frozen=True)
class BoundedManifold:
    cable: int = 0
    core_color: int = 0
    omega_twists: tuple[int, ...] = ()
    twist: int = 0
    label: str = ""

    def vacuum(self, th: Theory | int) -> SkeinVector:
        th = theory(th) if isinstance(th, int) else th
        z = core(th)
        if th.kind == TWO:
            z = -z  # a banded component carries the (-2)^-1 normalization
        x = z ** self.cable
        if self.core_color:
            prev, cur = SkeinVector.basis(th, 0), z
            for _ in range(self.core_color - 1):
                prev, cur = cur, z * cur - prev
            x = x * cur
        for k in self.omega_twists:
            x = x * twist(omega(th), k)
        return twist(x, self.twist) if self.twist else x

    def then(self, cable: int = 0, omega_twists: Sequence[int] = ()) -> BoundedManifold:
        """A larger manifold containing this one (more structure in the collar)."""
        if self.twist:
            raise ValueError("add collar structure before reparametrizing")
        return BoundedManifold(self.cable + cable, self.core_color,
                               self.omega_twists + tuple(omega_twists), 0, f"{self.label}+collar")

    def __str__(self) -> str:
        return self.label or (f"N(cable={self.cable}, color={self.core_color}, "
                              f"omega={list(self.omega_twists)}, t={self.twist})")

    def to_json(self) -> dict:
        return {"cable": self.cable, "core_color": self.core_color, "omega_twists": list(self.omega_twists), "twist": self.twist,
                "label": str(self)}


SOLID_TORUS = BoundedManifold(label="solid torus")


def default_family(th: Theory) -> BasisFamily:
    if th.kind == TWO:
        return build_family("two-theory-genus1", 2)
    if th.kind == ODD:
        return build_family("even-twists", th.p)
    return build_family("delta-twists", th.p)


def fkb_generators(N: BoundedManifold, th: Theory | int,
                   fam: BasisFamily | None = None) -> list[Cyc]:
    th = theory(th) if isinstance(th, int) else th
    fam = fam or default_family(th)
    x = N.vacuum(th)
    gens = [genus1_pairing(x, b) for b in fam.vectors]
    bad = [g for g in gens if not g.is_integral]
    if bad:
        raise ArithmeticError(f"non-integral pairing {bad[0]} for {N}")
    return gens


def fkb_ideal(N: BoundedManifold, th: Theory | int, fam: BasisFamily | None = None) -> IdealHNF:
    th = theory(th) if isinstance(th, int) else th
    return IdealHNF.from_generators(fkb_generators(N, th, fam), th.n)


def fkb_product_check(N: BoundedManifold, ctx: FactorizationContext) -> Verdict:
    Jp = fkb_ideal(N, ctx.thp)
    g2 = [ctx.i(g) for g in fkb_generators(N, ctx.th2)]
    gr = [ctx.j(g) for g in fkb_generators(N, ctx.thr)]
    J2 = IdealHNF.from_generators(g2, ctx.n)
    Jr = IdealHNF.from_generators(gr, ctx.n)
    prod = J2 * Jr
    return Verdict("fkb-product", Jp == prod,
                   {"N": N, "J_p": Jp, "i(J_2)": J2, "j(J_r)": Jr, "product": prod,
                    "norm_J_p": Jp.norm(), "norm_product": prod.norm()})


def monotonicity_check(N1: BoundedManifold, N2: BoundedManifold, th: Theory | int) -> Verdict:
    """N1 embeds in N2 => J(N2) is contained in J(N1)."""
    th = theory(th) if isinstance(th, int) else th
    J1, J2 = fkb_ideal(N1, th), fkb_ideal(N2, th)
    return Verdict("fkb-monotonicity", J1.contains_ideal(J2),
                   {"N1": N1, "N2": N2, "J1": J1, "J2": J2, "p": th.p})


def basis_independence_check(N: BoundedManifold, th: Theory | int) -> Verdict:
    th = theory(th) if isinstance(th, int) else th
    if th.kind == ODD:
        ids = ("even-twists", "odd-twists", "powers-of-v")
    elif th.kind == TWICE_ODD:
        ids = ("delta-twists", "u-divided")
    else:
        ids = ("two-theory-genus1",)
    ideals = [fkb_ideal(N, th, build_family(f, th.p)) for f in ids]
    return Verdict("fkb-basis-independence", all(I == ideals[0] for I in ideals),
                   {"families": list(ids), "ideals": ideals})


def gluing_presentation(N: BoundedManifold, k: int) -> ChainLinkPresentation:
    """The closed manifold N (glued to) the solid torus with omega core twisted k times.

    Both solid-torus cores become meridians of the 0-framed surgery circle of
    S^1 x S^2, so the result is the chain [omega(-k), omega(0), banded(0)] for
    cable 0 or 1 and no collar surgeries.  The pairing is sesquilinear, so a
    twist of N enters with the opposite sign to a twist of the glued-in torus.
    """
    if N.omega_twists or N.cable > 1 or N.core_color:
        raise ValueError("only bare cables of at most one strand have a chain presentation")
    comps = [Component(N.twist - k, OMEGA), Component(0, OMEGA)]
    if N.cable:
        comps.append(Component(0, 1))
    return ChainLinkPresentation((tuple(comps),))


def closed_crosscheck(N: BoundedManifold, th: Theory | int, twists: Sequence[int]) -> Verdict:
    """Each pairing (N, t^k omega) equals I_p of the glued closed manifold."""
    th = theory(th) if isinstance(th, int) else th
    x = N.vacuum(th)
    rows = []
    ok = True
    for k in twists:
        lhs = genus1_pairing(x, twist(omega(th), k))
        rhs = invariant_I(gluing_presentation(N, k), th)
        rows.append({"k": k, "pairing": lhs, "I": rhs, "equal": lhs == rhs})
        ok &= lhs == rhs
    return Verdict("fkb-closed-crosscheck", ok, {"N": N, "p": th.p, "rows": rows})


def corpus() -> list[BoundedManifold]:
    return [
        SOLID_TORUS,
        BoundedManifold(cable=1, label="core colored 1"),
        BoundedManifold(cable=2, label="two parallel cores"),
        BoundedManifold(cable=2, omega_twists=(1,), label="two cores, omega twist 1"),
        BoundedManifold(cable=1, omega_twists=(1,), twist=1, label="core, omega twist, t"),
        BoundedManifold(omega_twists=(2,), label="omega twist 2"),
        BoundedManifold(core_color=2, omega_twists=(1,), label="core colored 2, omega twist 1"),
        BoundedManifold(omega_twists=(0, 0), label="two 0-framed omega curves"),
        BoundedManifold(cable=1, omega_twists=(2, 2), label="core, two 2-framed omega curves"),
    ]


def monotonicity_pairs() -> list[tuple[BoundedManifold, BoundedManifold]]:
    base = BoundedManifold(omega_twists=(0, 0), label="two 0-framed omega curves")
    return [
        (SOLID_TORUS, base),
        (base, base.then(cable=1, omega_twists=(1,))),
        (BoundedManifold(cable=1, label="core colored 1"),
         BoundedManifold(cable=1, label="core colored 1").then(omega_twists=(2, 2))),
    ]
