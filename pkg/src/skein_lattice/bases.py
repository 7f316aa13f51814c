"""Basis families for the integral lattices, Gram matrices and lattice checks.

Genus-one vectors are :class:`SkeinVector` instances.  Genus-two vectors are
lists of values on admissible triples (see :class:`recoupling.Genus2Model`);
tensor vectors (level 2 (x) level r) are plain coordinate lists.  A
:class:`Space` knows how to pair and compare vectors of its kind.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import ceil, floor
from typing import Any, Sequence

from .cyclotomic import Cyc, IdealHNF
from .factorization import FactorizationContext, Genus2Factorization, Verdict
from .linalg import SingularMatrixError, bareiss_det, det, inverse, solve_consistent
from .recoupling import Genus2Model, Multicurve, g_r, ghat
from .torus import (ODD, TWICE_ODD, TWO, SkeinVector, Theory, chebyshev_e,
                    core, genus1_pairing, omega, reduce_at_level, theory, twist)

FAMILY_IDS = ("two-theory-genus1", "two-theory-Σg2n", "powers-of-v", "even-twists",
              "odd-twists", "delta-twists", "u-divided", "lollipop", "lollipop-sharp")


class NotInLattice(Exception):
    pass


# ---------------------------------------------------------------------------
# spaces
# ---------------------------------------------------------------------------

class Space:
    genus: int
    n: int

    def coords(self, v) -> list[Cyc]:
        raise NotImplementedError

    def pairing(self, x, y) -> Cyc:
        raise NotImplementedError

    def key(self) -> tuple:
        raise NotImplementedError


class Genus1Space(Space):
    genus = 1

    def __init__(self, th: Theory) -> None:
        self.theory, self.n = th, th.n

    def coords(self, v: SkeinVector) -> list[Cyc]:
        return list(v.coords)

    def pairing(self, x: SkeinVector, y: SkeinVector) -> Cyc:
        return genus1_pairing(x, y)

    def key(self) -> tuple:
        return ("genus1", self.theory.p)


class Genus2Space(Space):
    genus = 2

    def __init__(self, th: Theory) -> None:
        self.theory, self.n = th, th.n
        self.model = Genus2Model(th)

    def coords(self, v: Sequence[Cyc]) -> list[Cyc]:
        return list(v)

    def pairing(self, x, y) -> Cyc:
        return self.model.pairing(x, y)

    def key(self) -> tuple:
        return ("genus2", self.theory.p)


class TensorSpace(Space):
    """Level-2 (x) level-r vectors over k_p (genus 1: e (x) e coordinates)."""

    def __init__(self, ctx: FactorizationContext, genus: int) -> None:
        self.ctx, self.genus, self.n = ctx, genus, ctx.n
        self.g2 = Genus2Factorization(ctx) if genus == 2 else None

    def coords(self, v) -> list[Cyc]:
        return list(v)

    def pairing(self, x, y) -> Cyc:
        ctx = self.ctx
        if self.genus == 1:
            acc = Cyc.from_int(0, ctx.n)
            for a, b in zip(x, y):
                acc = acc + a * b.conjugate()
            return acc * ctx.i(ctx.th2.D) * ctx.j(ctx.thr.D)
        return self.g2.tensor_pairing(x, y)

    def key(self) -> tuple:
        return ("tensor", self.ctx.r, self.genus)


@lru_cache(maxsize=None)
def _space(kind: str, p: int, genus: int) -> Space:
    if kind == "tensor":
        return TensorSpace(FactorizationContext(p // 2), genus)
    return Genus1Space(theory(p)) if genus == 1 else Genus2Space(theory(p))


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

@dataclass
class BasisFamily:
    family_id: str
    p: int
    genus: int
    vectors: list[Any]
    space: Space
    labels: list[Any] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.vectors)

    @property
    def theory(self) -> Theory:
        return theory(self.p)

    def matrix(self) -> list[list[Cyc]]:
        """Columns are the basis vectors."""
        cols = [self.space.coords(v) for v in self.vectors]
        return [list(r) for r in zip(*cols)]

    def to_json(self) -> dict:
        return {"family": self.family_id, "p": self.p, "genus": self.genus,
                "labels": [str(l) for l in self.labels],
                "vectors": [[c.to_json() for c in self.space.coords(v)] for v in self.vectors],
                **({"notes": self.notes} if self.notes else {})}


def delta_i(i: int, p: int) -> int:
    """1 if i + p = 0 or 1 (mod 4), else 0."""
    return 1 if (i + p) % 4 in (0, 1) else 0


def _v_element(th: Theory, base: str = "even-twists") -> SkeinVector:
    """v = (z + 2)/(1 + A) by exact division of lattice coordinates."""
    fam = build_family(base, th.p)
    x = core(th) + SkeinVector.basis(th, 0) * 2
    coords = coordinates(x, fam)
    den = th.one() + th.A
    q = [c.exact_divide(den) for c in coords]  # NotDivisible is a hard error
    out = SkeinVector.zero(th)
    for c, b in zip(q, fam.vectors):
        out = out + b * c
    return out


def tensor_basis(ctx: FactorizationContext) -> list[list[Cyc]]:
    """t^i(omega_2) (x) v_r^j over k_p; the target lattice of F at genus one."""
    thr = ctx.thr
    vr = _v_element(thr)
    out = []
    for i in (0, 1):
        for j in range(thr.d):
            out.append(ctx.tensor(twist(omega(ctx.th2), i), vr ** j))
    return out


def build_family(family_id: str, p: int, genus: int = 1, points: int = 0) -> BasisFamily:
    return _build(family_id, p, genus, points)


@lru_cache(maxsize=None)
def _build(family_id: str, p: int, genus: int, points: int) -> BasisFamily:
    if family_id not in FAMILY_IDS:
        raise ValueError(f"unknown family {family_id!r}")
    th = theory(p)
    if points:
        raise NotImplementedError("surfaces with colored points are not implemented")
    if family_id.startswith("two-theory"):
        if th.kind != TWO:
            raise ValueError(f"{family_id} needs p = 2")
        if family_id == "two-theory-genus1" and genus != 1:
            raise ValueError("two-theory-genus1 is the genus-one family")
        return _two_theory(genus, family_id)
    if family_id in ("powers-of-v", "even-twists", "odd-twists"):
        if th.kind != ODD:
            raise ValueError(f"{family_id} needs an odd prime p")
        if genus != 1:
            raise ValueError(f"{family_id} is a genus-one family")
        if family_id == "even-twists":
            vecs = [twist(omega(th), 2 * i) for i in range(th.d)]
            return BasisFamily(family_id, p, 1, vecs, _space("native", p, 1),
                               [f"t^{2 * i}(omega)" for i in range(th.d)])
        if family_id == "odd-twists":
            vecs = [twist(omega(th), 2 * i + 1) for i in range(th.d)]
            return BasisFamily(family_id, p, 1, vecs, _space("native", p, 1),
                               [f"t^{2 * i + 1}(omega)" for i in range(th.d)])
        v = _v_element(th)
        return BasisFamily(family_id, p, 1, [v ** k for k in range(th.d)],
                           _space("native", p, 1), [f"v^{k}" for k in range(th.d)])
    if th.kind != TWICE_ODD:
        raise ValueError(f"{family_id} needs p twice an odd prime")
    if family_id == "delta-twists":
        if genus != 1:
            raise ValueError("delta-twists is a genus-one family")
        ks = [i + delta_i(i, p) * p for i in range(th.d)]
        return BasisFamily(family_id, p, 1, [twist(omega(th), k) for k in ks],
                           _space("native", p, 1), [f"t^{k}(omega)" for k in ks])
    if family_id == "u-divided":
        if genus != 1:
            raise ValueError("u-divided is a genus-one family")
        return _u_divided(p)
    return _lollipop(p, genus, sharp=family_id == "lollipop-sharp")


def families_for(p: int, genus: int = 1) -> tuple[str, ...]:
    """The implemented family ids at level p and the given genus."""
    th = theory(p)
    if th.kind == TWO:
        return ("two-theory-genus1",) if genus == 1 else ("two-theory-Σg2n",) if genus == 2 else ()
    if th.kind == ODD:
        return ("powers-of-v", "even-twists", "odd-twists") if genus == 1 else ()
    lolli = ("lollipop", "lollipop-sharp") if p // 2 in (3, 5) and genus in (1, 2) else ()
    return (("delta-twists", "u-divided") if genus == 1 else ()) + lolli


def verify_families(p: int, genus: int = 1) -> Verdict:
    """Every family is unimodular, pairwise related unimodularly, and (genus one)
    spans the same lattice as the finite generator family."""
    th = theory(p)
    fams = [build_family(f, p, genus) for f in families_for(p, genus)]
    if not fams:
        raise ValueError(f"no families implemented for p = {p}, genus {genus}")
    grams = {f.family_id: gram(f) for f in fams}
    pairs = {}
    for a, b in combinations(fams, 2):
        pairs[f"{a.family_id} -> {b.family_id}"] = change_of_basis(a, b)
    sweeps = {f.family_id: generator_sweep(th, f) for f in fams} if genus == 1 else {}
    ok = (all(g.is_unit and g.integral for g in grams.values())
          and all(c.unimodular for c in pairs.values()) and all(sweeps.values()))
    return Verdict("bases-verify", ok,
                   {"p": p, "genus": genus, "families": [f.family_id for f in fams],
                    "gram_determinants": {k: g.determinant for k, g in grams.items()},
                    "gram_unimodular": {k: g.is_unit and g.integral for k, g in grams.items()},
                    "pairwise_unimodular": {k: c.unimodular for k, c in pairs.items()},
                    "pairwise_determinants": {k: c.determinant for k, c in pairs.items()},
                    "generator_sweeps": {k: v.to_json() for k, v in sweeps.items()}})


def _two_theory(genus: int, family_id: str) -> BasisFamily:
    th = theory(2)
    w = [omega(th), twist(omega(th), 1)]
    if genus == 1:
        return BasisFamily(family_id, 2, 1, w, _space("native", 2, 1), ["omega", "t(omega)"])
    if genus == 2:
        sp = _space("native", 2, 2)
        vecs, labels = [], []
        for i1, i2 in product((0, 1), repeat=2):
            vecs.append(sp.model.vector_from_handles(w[i1], w[i2]))
            labels.append(f"H_{i1}{i2}")
        return BasisFamily(family_id, 2, 2, vecs, sp, labels)
    raise NotImplementedError("genus > 2 is not implemented for the 2-theory")


def u_ij(ctx: FactorizationContext, i: int, j: int) -> SkeinVector:
    """The element with F(u^ij) = t^i(omega_2) (x) (z + 2)^j."""
    zr = core(ctx.thr) + SkeinVector.basis(ctx.thr, 0) * 2
    return ctx.F_inverse(ctx.tensor(twist(omega(ctx.th2), i), zr ** j))


def u_support_check(ctx: FactorizationContext) -> Verdict:
    """u^{0j} (resp. u^{1j}) only involves t^k(omega) with k = 0 (resp. 1) mod 4."""
    fam = build_family("delta-twists", ctx.p)
    ks = [i + delta_i(i, ctx.p) * ctx.p for i in range(ctx.thp.d)]
    bad = []
    for i in (0, 1):
        for j in range(ctx.thr.d):
            c = coordinates(u_ij(ctx, i, j), fam)
            for k, x in zip(ks, c):
                if not x.is_zero() and k % 4 != i:
                    bad.append([i, j, k])
    return Verdict("u-support", not bad, {"violations": bad, "exponents": ks})


def _u_divided(p: int) -> BasisFamily:
    ctx = FactorizationContext(p // 2)
    h = ctx.thp.h
    fam = build_family("delta-twists", p)
    vecs, labels = [], []
    for i in (0, 1):
        for j in range(ctx.thr.d):
            u = u_ij(ctx, i, j)
            c = coordinates(u, fam)
            hj = h ** j
            q = [x.exact_divide(hj) for x in c]  # NotDivisible is a hard error
            out = SkeinVector.zero(ctx.thp)
            for a, b in zip(q, fam.vectors):
                out = out + b * a
            vecs.append(out)
            labels.append(f"u^{i}{j}/h^{j}")
    return BasisFamily("u-divided", p, 1, vecs, _space("native", p, 1), labels)


# ---------------------------------------------------------------------------
# lollipop vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LollipopColoring:
    g: int
    a: tuple[int, ...]
    b: tuple[int, ...]
    c: tuple[int, ...] = ()
    s: int = 0
    e: int = 0
    m: tuple[int, ...] = ()

    def validate(self, r: int) -> None:
        dr = (r - 1) // 2
        if len(self.a) != self.g or len(self.b) != self.g:
            raise ValueError("a and b need g entries")
        for ai, bi in zip(self.a, self.b):
            if not 0 <= ai <= dr - 1:
                raise ValueError(f"a_i = {ai} outside [0, d_r - 1]")
            if not 0 <= bi <= dr - 1 - ai:
                raise ValueError(f"b_i = {bi} outside [0, d_r - 1 - a_i]")
        if self.s == 0 and self.g == 2 and self.a[0] != self.a[1]:
            raise ValueError("genus 2 without points needs a_1 = a_2 (the stick is counted twice)")

    @property
    def x(self):
        from fractions import Fraction
        return Fraction(-self.e + sum(self.a), 2)

    def floor_x(self) -> int:
        return floor(self.x)

    def ceil_x(self) -> int:
        return ceil(self.x)


def lollipop_colorings(g: int, r: int) -> list[LollipopColoring]:
    dr = (r - 1) // 2
    out = []
    if g == 1:
        for b in range(dr):
            out.append(LollipopColoring(1, (0,), (b,)))
        return out
    if g == 2:
        for a in range(dr):
            for b1 in range(dr - a):
                for b2 in range(dr - a):
                    out.append(LollipopColoring(2, (a, a), (b1, b2), (2 * a,)))
        return out
    raise NotImplementedError("lollipop colorings are enumerated for genus <= 2")


def _r_vector(ctx: FactorizationContext, col: LollipopColoring, sharp: bool) -> list[Cyc]:
    """b_r(a, b, c) (or b_r^sharp) over k_p, r-theory coordinates.

    b_r = h^(-floor x) prod v_i^(b_i) g_r(a, 0, c) with v = (z + 2)/(1 + zeta_p)
    expressed through j_r, i.e. the r-theory lollipop vectors with the
    uniformizer taken to be h = 1 + zeta_p.
    """
    thr, h = ctx.thr, ctx.thp.h
    k = col.ceil_x() if sharp else col.floor_x()
    if col.g == 1:
        zr = core(thr) + SkeinVector.basis(thr, 0) * 2
        base = [ctx.j(c) for c in (zr ** col.b[0]).coords]
        scale = (h ** (col.b[0] + k)).inverse()
        return [c * scale for c in base]
    model = Genus2Model(thr)
    gr = model.vector_from_multicurve(g_r(col.a, (0,) * col.g, thr))
    vals = [ctx.j(c) for c in gr]
    for hole, bi in enumerate(col.b):
        if not bi:
            continue
        for idx, t in enumerate(model.triples):
            lam = thr.hopf(t[hole], 1) / thr.loop_value(t[hole])
            vals[idx] = vals[idx] * ctx.j(lam + 2) ** bi
    scale = (h ** (sum(col.b) + k)).inverse()
    return [c * scale for c in vals]


def _two_basis(g: int) -> list[Any]:
    return _two_theory(g, "two-theory-Σg2n").vectors


def lollipop_tensor_family(r: int, genus: int, sharp: bool = False) -> BasisFamily:
    """H_i (x) b_r(a,b,c) (the lattice G) or H_i (x) b_r^sharp (the lattice W)."""
    return _lollipop_tensor(r, genus, sharp)


@lru_cache(maxsize=None)
def _lollipop_tensor(r: int, genus: int, sharp: bool) -> BasisFamily:
    ctx = FactorizationContext(r)
    sp = _space("tensor", 2 * r, genus)
    cols = lollipop_colorings(genus, r)
    Hs = _two_basis(genus)
    vecs, labels = [], []
    for hi, H in enumerate(Hs):
        h2 = list(H.coords) if genus == 1 else H
        for col in cols:
            br = _r_vector(ctx, col, sharp)
            vecs.append([ctx.i(a) * b for a in h2 for b in br])
            labels.append((hi, col.a, col.b))
    fid = "lollipop-sharp" if sharp else "lollipop"
    return BasisFamily(fid + "-tensor", 2 * r, genus, vecs, sp, labels)


def _lollipop(p: int, genus: int, sharp: bool) -> BasisFamily:
    """F^-1 of the tensor lollipop family (the level-p basis, 2^g labels per coloring)."""
    r = p // 2
    if r not in (3, 5):
        raise ValueError("lollipop families are implemented for r in {3, 5}")
    tf = lollipop_tensor_family(r, genus, sharp)
    ctx = FactorizationContext(r)
    fid = "lollipop-sharp" if sharp else "lollipop"
    if genus == 1:
        vecs = [ctx.F_inverse(v) for v in tf.vectors]
        return BasisFamily(fid, p, 1, vecs, _space("native", p, 1), tf.labels)
    if genus == 2:
        g2 = tf.space.g2
        rr = g2.Mr.rank
        vecs = []
        for v in tf.vectors:
            vecs.append([v[a * rr + b] for a, b in g2.matching])
        return BasisFamily(fid, p, 2, vecs, _space("native", p, 2), tf.labels,
                           ["genus 2 without colored points: stick counted twice, a_1 = a_2"])
    raise NotImplementedError("lollipop families are implemented for genus <= 2")


def native_lollipop(col: LollipopColoring, p: int, m: Sequence[int] | None = None,
                    reading: str = "literal") -> Any:
    """The level-p vector h^(-sum b - floor x) u^(m b) ghat(a, b, c).

    ``reading="literal"`` colors loops a_i + b_i in ghat; ``reading="surgery"``
    uses ghat(a, 0, c) times u_i^(b_i) with no h^(-b) factor (loops colored b_i
    realized by surgery along the loops).
    """
    th = theory(p)
    r = p // 2
    col.validate(r)
    m = tuple(m) if m is not None else (1,) * col.g
    h = th.h
    k = col.floor_x()
    if reading == "surgery":
        mc = ghat(col.a, (0,) * col.g, th)
        pw = [bi for bi in col.b]
        scale = (h ** k).inverse()
    else:
        mc = ghat(col.a, col.b, th)
        pw = [mi * bi for mi, bi in zip(m, col.b)]
        scale = (h ** (sum(col.b) + k)).inverse()
    if col.g == 1:
        # ghat is a polynomial in the (r-3)-colored core
        x = _multicurve_genus1(mc, th)
        u = (SkeinVector.basis(th, r - 3) + SkeinVector.basis(th, 0) * 2) / h
        return x * (u ** pw[0]) * scale
    model = Genus2Model(th)
    vals = model.vector_from_multicurve(mc)
    for hole, e in enumerate(pw):
        if not e:
            continue
        uc = Multicurve.curve([hole + 1], th.one(), 2, "u")
        uv = model.vector_from_multicurve(uc)
        vals = [a * b ** e for a, b in zip(vals, uv)]
    return [c * scale for c in vals]


def _multicurve_genus1(mc: Multicurve, th: Theory) -> SkeinVector:
    out = SkeinVector.zero(th)
    base = SkeinVector.basis(th, mc.color)
    for mono, c in mc.terms.items():
        term = SkeinVector.basis(th, 0)
        for _, k in mono:
            term = term * base ** k
        out = out + term * c
    return out


def m_choice_report(p: int, genus: int) -> dict:
    """Which choices of m_i make the displayed b(a,b,c) integral.

    Integrality is tested by membership in the lollipop lattice F^-1(H (x) b_r).
    """
    r = p // 2
    fam = build_family("lollipop", p, genus)
    rows = []
    summary = {}
    variants = [("literal", m) for m in product((0, 1), repeat=genus)] + [("surgery", None)]
    for reading, m in variants:
        key = f"{reading}" + (f" m={''.join(map(str, m))}" if m is not None else "")
        ok_all = True
        for col in lollipop_colorings(genus, r):
            v = native_lollipop(col, p, m, reading)
            res = membership(v, fam)
            rows.append({"variant": key, "a": list(col.a), "b": list(col.b),
                         "integral": res.integral})
            ok_all &= res.integral
        summary[key] = ok_all
    return {"p": p, "genus": genus, "integral_by_variant": summary, "rows": rows}


# ---------------------------------------------------------------------------
# Gram matrices and lattice operations
# ---------------------------------------------------------------------------

@dataclass
class GramReport:
    matrix: list[list[Cyc]]
    determinant: Cyc
    is_unit: bool
    integrality: list[list[bool]]
    hermitian: bool

    @property
    def integral(self) -> bool:
        return all(all(r) for r in self.integrality)

    def to_json(self) -> dict:
        return {"matrix": [[c.to_json() for c in r] for r in self.matrix],
                "determinant": self.determinant.to_json(), "isUnit": self.is_unit,
                "integral": self.integral, "hermitian": self.hermitian}


def gram(fam: BasisFamily) -> GramReport:
    sp = fam.space
    G = [[sp.pairing(x, y) for y in fam.vectors] for x in fam.vectors]
    integ = [[c.is_integral for c in r] for r in G]
    if all(all(r) for r in integ):
        d = bareiss_det(G)
    else:
        d = det(G)
    d = Cyc.coerce(d, sp.n)
    herm = all(G[i][j] == G[j][i].conjugate() for i in range(len(G)) for j in range(len(G)))
    return GramReport(G, d, d.is_unit(), integ, herm)


def coordinates(v, fam: BasisFamily) -> list[Cyc]:
    """Exact coordinates of v in the family (raises if v is outside its span)."""
    sol = solve_consistent(fam.matrix(), fam.space.coords(v))
    if sol is None:
        raise NotInLattice("vector is not in the span of the family")
    return sol


@dataclass
class Membership:
    coords: list[Cyc]
    flags: list[bool]

    @property
    def integral(self) -> bool:
        return all(self.flags)

    def __bool__(self) -> bool:
        return self.integral

    def __iter__(self):
        return iter(self.coords)

    def to_json(self) -> dict:
        return {"coords": [c.to_json() for c in self.coords], "integral": self.integral}


def membership(v, fam: BasisFamily) -> Membership:
    c = coordinates(v, fam)
    return Membership(c, [x.is_integral for x in c])


@dataclass
class ChangeOfBasis:
    matrix: list[list[Cyc]]   # row i: coordinates of from[i] in the target family
    determinant: Cyc
    unimodular: bool
    index: IdealHNF | None

    def to_json(self) -> dict:
        return {"matrix": [[c.to_json() for c in r] for r in self.matrix],
                "determinant": self.determinant.to_json(), "unimodular": self.unimodular,
                "index": self.index.to_json() if self.index is not None else None}


def change_of_basis(src: BasisFamily, dst: BasisFamily) -> ChangeOfBasis:
    if len(src) != len(dst) or src.space.key() != dst.space.key():
        raise ValueError("families must live in the same space with equal cardinality")
    rows = []
    for v in src.vectors:
        try:
            rows.append(coordinates(v, dst))
        except NotInLattice as exc:
            raise SingularMatrixError("families do not span the same space") from exc
    d = Cyc.coerce(det(rows), src.space.n)
    integral = all(c.is_integral for r in rows for c in r)
    uni = integral and d.is_integral and d.is_unit()
    idx = IdealHNF.from_generators([d], d.n) if d.is_integral else None
    return ChangeOfBasis(rows, d, uni, idx)


def generator_family(th: Theory) -> list[tuple[str, SkeinVector]]:
    """{t^k(omega) e_j : 0 <= k < order(t), 0 <= j <= p - 2}."""
    out = []
    colors = range(0, 2) if th.kind == TWO else range(0, th.p - 1)
    es = []
    for j in colors:
        if th.kind == TWO:
            es.append(SkeinVector.basis(th, j))
        else:
            es.append(reduce_at_level(chebyshev_e(j), th) if j >= th.d else SkeinVector.basis(th, j))
    for k in range(th.twist_order):
        tw = twist(omega(th), k)
        for j, ej in zip(colors, es):
            out.append((f"t^{k}(omega)*e_{j}", tw * ej))
    return out


def generator_sweep(th: Theory | int, fam: BasisFamily) -> Verdict:
    th = theory(th) if isinstance(th, int) else th
    if fam.genus != 1:
        raise ValueError("the generator sweep is defined at genus one")
    gens = generator_family(th)
    bad = []
    for name, g in gens:
        if not membership(g, fam).integral:
            bad.append(name)
    # the family itself lies in the span of the generators (two-sided inclusion)
    back = _family_in_generator_span(fam, [g for _, g in gens])
    return Verdict("generator-sweep", not bad and back,
                   {"family": fam.family_id, "p": th.p, "generators": len(gens),
                    "twist_order": th.twist_order, "color_range": [0, th.p - 2],
                    "non_integral": bad, "family_in_generator_span": back})


def _family_in_generator_span(fam: BasisFamily, gens: Sequence[SkeinVector]) -> bool:
    """Every family vector is an O_p-combination of the generators (Z-lattice HNF test)."""
    from .linalg import HNFBuilder
    th = fam.theory
    n = th.n
    phi = len(_flat(th.one()))
    dim = th.d * phi
    # scale by a common denominator so every generator is integral
    den = 1
    for g in list(gens) + list(fam.vectors):
        for c in g.coords:
            den = _lcm(den, c.den)
    builder = HNFBuilder(dim)
    for g in gens:
        for k in range(phi):
            zk = Cyc.zeta(n, k)
            builder.add(_flat_vec([c * zk * den for c in g.coords]))
    for v in fam.vectors:
        if not builder.contains(_flat_vec([c * den for c in v.coords])):
            return False
    return True


def _lcm(a: int, b: int) -> int:
    from math import gcd
    return a * b // gcd(a, b)


def _flat(c: Cyc) -> list[int]:
    if c.den != 1:
        raise ValueError("expected an integral element")
    return list(c.coeffs)


def _flat_vec(v: Sequence[Cyc]) -> list[int]:
    out: list[int] = []
    for c in v:
        out.extend(_flat(c))
    return out


def lattice_equal(f1: BasisFamily, f2: BasisFamily) -> bool:
    return change_of_basis(f1, f2).unimodular


def dual_basis(fam: BasisFamily) -> BasisFamily:
    """y_i with (x_j, y_i) = delta_ij."""
    G = gram(fam).matrix
    Ginv = inverse(G)
    n = len(G)
    # (x_j, sum_k c_ik x_k) = sum_k conj(c_ik) G_jk = delta_ij  =>  conj(C) = (G^-1)^T
    C = [[Ginv[k][i].conjugate() for k in range(n)] for i in range(n)]
    vecs = []
    for i in range(n):
        vecs.append(_combine(fam, C[i]))
    return BasisFamily(fam.family_id + "#", fam.p, fam.genus, vecs, fam.space,
                       [f"{l}#" for l in fam.labels])


def _combine(fam: BasisFamily, coeffs: Sequence[Cyc]):
    if fam.genus == 1 and isinstance(fam.vectors[0], SkeinVector):
        out = SkeinVector.zero(fam.vectors[0].theory)
        for c, v in zip(coeffs, fam.vectors):
            out = out + v * c
        return out
    n = len(fam.space.coords(fam.vectors[0]))
    out = [Cyc.from_int(0, fam.space.n)] * n
    for c, v in zip(coeffs, fam.vectors):
        out = [a + c * b for a, b in zip(out, fam.space.coords(v))]
    return out


def h_valuation_ideal(d: Cyc) -> IdealHNF:
    return IdealHNF.from_generators([d], d.n)


def lollipop_sharp_index_check(g: int, th: Theory | int) -> Verdict:
    """[G# : G] = [W : G] with G = H (x) b and W = H (x) b#."""
    th = theory(th) if isinstance(th, int) else th
    if th.kind != TWICE_ODD or th.p // 2 not in (3, 5):
        raise ValueError("index check needs p = 2r with r in {3, 5}")
    if g > 2:
        raise ValueError("genus <= 2")
    r = th.p // 2
    G = lollipop_tensor_family(r, g, False)
    W = lollipop_tensor_family(r, g, True)
    diag = []
    for col in lollipop_colorings(g, r):
        diag.append(col.floor_x() - col.ceil_x())
    diag_ok = all(e in (0, -1) for e in diag)
    # b = h^(ceil - floor) b#: the matrix of G in terms of W is diagonal
    cob = change_of_basis(G, W)
    diag_matrix = all((i == j) == (not c.is_zero()) for i, r_ in enumerate(cob.matrix)
                      for j, c in enumerate(r_))
    gw = cob.determinant
    gram_det = gram(G).determinant
    lhs = IdealHNF.from_generators([gram_det], th.n)
    rhs = IdealHNF.from_generators([gw], th.n) if gw.is_integral else None
    ok = diag_ok and diag_matrix and rhs is not None and lhs == rhs
    return Verdict("lollipop-sharp-index", ok,
                   {"genus": g, "p": th.p, "exponents_floor_minus_ceil": diag,
                    "diagonal": diag_matrix, "[G#:G]": lhs, "[W:G]": rhs,
                    "gram_det": gram_det, "W_to_G_det": gw})


def lollipop_tensor_check(p: int, genus: int, reading: str = "surgery") -> Verdict:
    """F(b(a,b,c)) = 1 (x) b_r(a,b,c) for the level-p lollipop vectors.

    ``1`` is the empty skein at level 2; it is the O_2-combination
    -i zeta_8 omega_2 + zeta_8 t(omega_2) per handle, so the image lies in
    the tensor lattice but the level-p family indexed by (a, b, c) alone has
    rank 2^-g times the full rank.
    """
    r = p // 2
    ctx = FactorizationContext(r)
    rows = []
    ok = True
    for col in lollipop_colorings(genus, r):
        v = native_lollipop(col, p, None, reading)
        br = _r_vector(ctx, col, False)
        if genus == 1:
            lhs = ctx.F(v)
            one = [ctx.i(c) for c in SkeinVector.basis(ctx.th2, 0).coords]
        else:
            g2 = _space("tensor", p, 2).g2
            lhs = g2.F(v)
            one = [ctx.i(1)] * g2.M2.rank
        rhs = [a * b for a in one for b in br]
        same = lhs == rhs
        ratio = None
        if not same:
            nz = next((k for k, x in enumerate(rhs) if not x.is_zero()), None)
            if nz is not None and not lhs[nz].is_zero():
                q = lhs[nz] / rhs[nz]
                if [x * q for x in rhs] == lhs:
                    ratio = q
        rows.append({"a": list(col.a), "b": list(col.b), "equal": same,
                     "unit_multiple": ratio.to_json() if ratio is not None else None})
        ok &= same
    return Verdict("lollipop-tensor", ok, {"p": p, "genus": genus, "reading": reading,
                                            "rows": rows})
