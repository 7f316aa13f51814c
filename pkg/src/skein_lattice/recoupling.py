"""Recoupling coefficients, standard-basis norms and lollipop expansions.

Closed formulas (quantum factorials) give theta and tetrahedron coefficients;
:mod:`skein_lattice.tl` re-derives small cases from diagrams.  For surfaces of
genus two the module is modelled by *eigen-triples*: a multicurve polynomial in
the curves ``x`` (around hole 1), ``y`` (around hole 2) and ``w`` (around both)
is recorded by its values at ``(lambda_i, lambda_j, lambda_k)`` for every
admissible triple ``(i, j, k)``, and the Hermitian form is the weighted sum with
weights ``eta * omega_i * omega_j * Delta_k`` (fusion of the two surgery
circles followed by the killing property of omega).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, Mapping, Sequence, Tuple

from .cyclotomic import Cyc
from .torus import TWO, TWICE_ODD, SkeinVector, Theory, omega, theory


class InadmissibleError(ValueError):
    pass


# ---------------------------------------------------------------------------
# admissibility and closed formulas
# ---------------------------------------------------------------------------

def max_color(th: Theory) -> int:
    """Largest color with nonzero loop value."""
    if th.kind == TWO:
        return 1
    if th.kind == TWICE_ODD:
        return th.p // 2 - 2
    return th.p - 2


def admissible(a: int, b: int, c: int, th: Theory | None = None) -> bool:
    if min(a, b, c) < 0 or (a + b + c) % 2:
        return False
    if a > b + c or b > a + c or c > a + b:
        return False
    if th is None:
        return True
    m = max_color(th)
    if th.kind == TWO:
        return max(a, b, c) <= 1
    return max(a, b, c) <= m and a + b + c <= 2 * m


@dataclass(frozen=True)
class AdmissibleTriple:
    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        if not admissible(self.a, self.b, self.c):
            raise InadmissibleError(f"({self.a}, {self.b}, {self.c}) is not admissible")

    def internal(self) -> tuple[int, int, int]:
        a, b, c = self.a, self.b, self.c
        return (a + b - c) // 2, (a + c - b) // 2, (b + c - a) // 2


def _qfact(th: Theory, n: int) -> Cyc:
    out = th.one()
    for k in range(1, n + 1):
        out = out * th.quantum_int(k)
    return out


def theta(a: int, b: int, c: int, th: Theory | int) -> Cyc:
    """Bracket of the theta graph (normalization <empty> = 1).

    (-1)^(i+j+k) [i+j+k+1]! [i]! [j]! [k]! / ([i+j]! [j+k]! [i+k]!)
    """
    th = theory(th) if isinstance(th, int) else th
    if not admissible(a, b, c):
        raise InadmissibleError(f"({a}, {b}, {c}) is not admissible")
    if th.kind == TWO:
        if max(a, b, c) > 1:
            raise InadmissibleError("2-theory colors are 0 and 1")
        return th.one()
    i, j, k = AdmissibleTriple(a, b, c).internal()
    num = _qfact(th, i + j + k + 1) * _qfact(th, i) * _qfact(th, j) * _qfact(th, k)
    den = _qfact(th, i + j) * _qfact(th, j + k) * _qfact(th, i + k)
    val = num / den
    return -val if (i + j + k) % 2 else val


def tet(a: int, b: int, e: int, c: int, d: int, f: int, th: Theory | int) -> Cyc:
    """Tetrahedron coefficient Tet[a b e; c d f].

    Vertices are the triples (a,d,e), (b,c,e), (a,b,f), (c,d,f).
    """
    th = theory(th) if isinstance(th, int) else th
    for t in ((a, d, e), (b, c, e), (a, b, f), (c, d, f)):
        if not admissible(*t):
            raise InadmissibleError(f"{t} is not admissible")
    if th.kind == TWO:
        return th.one()
    ai = [(a + d + e) // 2, (b + c + e) // 2, (a + b + f) // 2, (c + d + f) // 2]
    bj = [(b + d + e + f) // 2, (a + c + e + f) // 2, (a + b + c + d) // 2]
    num = th.one()
    for x in ai:
        for y in bj:
            num = num * _qfact(th, y - x)
    den = th.one()
    for x in (a, b, c, d, e, f):
        den = den * _qfact(th, x)
    lo, hi = max(ai), min(bj)
    acc = th.zero()
    for s in range(lo, hi + 1):
        term = _qfact(th, s + 1)
        div = th.one()
        for x in ai:
            div = div * _qfact(th, s - x)
        for y in bj:
            div = div * _qfact(th, y - s)
        term = term / div
        acc = acc + (-term if s % 2 else term)
    return num / den * acc


def loop(c: int, th: Theory) -> Cyc:
    return th.deltas[c] if c < th.d else th.loop_value(c)


# ---------------------------------------------------------------------------
# standard basis vectors of handlebodies (lollipop trees, no colored points)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StandardBasisVector:
    """A colored lollipop spine.

    genus 1: coloring (l,)                         -- a single loop
    genus 2: coloring (l1, l2, c)                  -- two loops joined by a stick
    genus 3: coloring (l1, l2, l3, c1, c2, c3)     -- three sticks meet at a center
    """

    genus: int
    coloring: tuple[int, ...]

    def vertices(self) -> list[tuple[int, int, int]]:
        g, col = self.genus, self.coloring
        if g == 1:
            return [(col[0], col[0], 0)]
        if g == 2:
            l1, l2, c = col
            return [(l1, l1, c), (l2, l2, c)]
        if g == 3:
            l1, l2, l3, c1, c2, c3 = col
            return [(l1, l1, c1), (l2, l2, c2), (l3, l3, c3), (c1, c2, c3)]
        raise ValueError("genus > 3 is not supported")

    def edges(self) -> list[int]:
        g, col = self.genus, self.coloring
        if g == 1:
            return [col[0], 0]
        if g == 2:
            return list(col)
        return list(col)

    def is_admissible(self, th: Theory) -> bool:
        return all(admissible(*v, th) for v in self.vertices())


def standard_norm_squared(u: StandardBasisVector, th: Theory | int) -> Cyc:
    """<u, u> under the identity-gluing double: eta^(1-g) prod theta / prod Delta.

    Loop edges are split by a 0-colored stick at genus one so the vertex
    product applies uniformly.
    """
    th = theory(th) if isinstance(th, int) else th
    if not u.is_admissible(th):
        raise InadmissibleError(f"{u} is not admissible at level {th.p}")
    num = th.eta ** (1 - u.genus) if u.genus > 1 else th.one()
    for v in u.vertices():
        num = num * theta(*v, th)
    for e in u.edges():
        num = num / loop(e, th)
    return num


def standard_basis(genus: int, th: Theory | int) -> list[StandardBasisVector]:
    """Lollipop colorings with loop colors below d and admissible sticks."""
    th = theory(th) if isinstance(th, int) else th
    loops = range(th.d)
    sticks = range(max_color(th) + 1)
    out = []
    if genus == 1:
        return [StandardBasisVector(1, (l,)) for l in loops]
    if genus == 2:
        for l1, l2, c in product(loops, loops, sticks):
            u = StandardBasisVector(2, (l1, l2, c))
            if u.is_admissible(th):
                out.append(u)
        return out
    if genus == 3:
        for l1, l2, l3, c1, c2, c3 in product(loops, loops, loops, sticks, sticks, sticks):
            u = StandardBasisVector(3, (l1, l2, l3, c1, c2, c3))
            if u.is_admissible(th):
                out.append(u)
        return out
    raise ValueError("genus > 3 is not supported")


# ---------------------------------------------------------------------------
# multicurves on a planar surface with g holes
# ---------------------------------------------------------------------------

Curve = Tuple[int, ...]                  # sorted tuple of enclosed holes
Monomial = Tuple[Tuple[Curve, int], ...]  # sorted (curve, exponent) pairs


def _mono(curves: Iterable[Curve]) -> Monomial:
    counts: Dict[Curve, int] = {}
    for c in curves:
        counts[c] = counts.get(c, 0) + 1
    return tuple(sorted(counts.items()))


class Multicurve:
    """Polynomial in curve classes e^S (S a set of holes) with scalar coefficients.

    ``color`` records which colored core each curve variable denotes (1 for the
    plain core, r-3 after the hat substitution, or "u" for u-curves).
    """

    def __init__(self, terms: Mapping[Monomial, Cyc], genus: int, color: int | str = 1) -> None:
        self.terms = {m: c for m, c in terms.items() if not c.is_zero()}
        self.genus = genus
        self.color = color

    @classmethod
    def const(cls, c: Cyc, genus: int, color: int | str = 1) -> Multicurve:
        return cls({(): c}, genus, color)

    @classmethod
    def curve(cls, holes: Iterable[int], one: Cyc, genus: int, color: int | str = 1) -> Multicurve:
        return cls({_mono([tuple(sorted(holes))]): one}, genus, color)

    def __add__(self, other: Multicurve) -> Multicurve:
        t = dict(self.terms)
        for m, c in other.terms.items():
            t[m] = t[m] + c if m in t else c
        return Multicurve(t, self.genus, self.color)

    def __sub__(self, other: Multicurve) -> Multicurve:
        return self + other.scale(-1)

    def scale(self, s) -> Multicurve:
        return Multicurve({m: c * s for m, c in self.terms.items()}, self.genus, self.color)

    def __mul__(self, other) -> Multicurve:
        if not isinstance(other, Multicurve):
            return self.scale(other)
        t: Dict[Monomial, Cyc] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                curves = [cv for cv, k in m1 for _ in range(k)] + [cv for cv, k in m2 for _ in range(k)]
                m = _mono(curves)
                v = c1 * c2
                t[m] = t[m] + v if m in t else v
        return Multicurve(t, self.genus, self.color)

    __rmul__ = scale

    def substitute(self, images: Mapping[Curve, Multicurve], color: int | str) -> Multicurve:
        """Replace every curve variable by a polynomial in new variables."""
        out = None
        for m, c in self.terms.items():
            term = Multicurve.const(c, self.genus, color)
            for cv, k in m:
                for _ in range(k):
                    term = term * images[cv]
            out = term if out is None else out + term
        return out if out is not None else Multicurve({}, self.genus, color)

    def map_coeffs(self, f) -> Multicurve:
        return Multicurve({m: f(c) for m, c in self.terms.items()}, self.genus, self.color)

    def curves(self) -> set[Curve]:
        return {cv for m in self.terms for cv, _ in m}

    def __repr__(self) -> str:
        parts = []
        for m, c in sorted(self.terms.items()):
            mon = "*".join(f"e{''.join(map(str, cv))}" + (f"^{k}" if k > 1 else "") for cv, k in m)
            parts.append(f"({c})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts) or "0"


def lollipop_resolution(a: Sequence[int], b: Sequence[int], delta: Cyc) -> Multicurve:
    """Expand the colored lollipop graph with loop colors a_i + b_i and sticks 2a_i.

    Only a_i, a_i + b_i in {0, 1} are supported (sticks colored 0 or 2, loops 0 or 1),
    which covers every lollipop coloring for r <= 5.  Each 2-colored stick carries
    f_2 = 1 - U/delta; the identity term routes the loop strands through the tree,
    the U term closes the loop on itself.  ``delta`` is the value of a trivial
    circle.  At genus 2 without colored points the single stick is counted for
    both loops (a_1 = a_2 is required).
    """
    g = len(a)
    if len(b) != g:
        raise ValueError("a and b must have the same length")
    if any(x not in (0, 1) for x in a) or any(x + y > 1 for x, y in zip(a, b)):
        raise ValueError("only loop colors 0/1 with sticks 0/2 are supported")
    one = delta * 0 + 1
    t = -delta.inverse()  # coefficient of U in f_2
    free = [i for i in range(g) if b[i] == 1]
    stuck = [i for i in range(g) if a[i] == 1]
    base = Multicurve.const(one, g)
    for i in free:
        base = base * Multicurve.curve([i + 1], one, g)
    if not stuck:
        return base
    if g == 2:
        if a[0] != a[1]:
            raise ValueError("genus 2 without colored points needs a_1 = a_2")
    elif g == 3 and len(stuck) == 1:
        raise ValueError("a single 2-colored stick at the center is inadmissible")
    if g == 1:
        raise ValueError("a genus-1 lollipop has no stick to color")
    out = None
    # genus 2: one physical stick; genus 3: one stick per loop meeting at the center
    nsticks = 1 if g == 2 else len(stuck)
    for mode in product((0, 1), repeat=nsticks):  # 1 = identity, 0 = U
        coef = one
        if g == 2:
            through = stuck if mode[0] else []
            coef = one if mode[0] else t
        else:
            through = [i for i, m in zip(stuck, mode) if m]
            for m in mode:
                if not m:
                    coef = coef * t
        term = Multicurve.const(coef, g)
        for i in stuck:
            if i not in through:
                term = term * Multicurve.curve([i + 1], one, g)
        if through:
            term = term * Multicurve.curve([i + 1 for i in through], one, g)
        elif g != 2:
            term = term.scale(delta)  # the center curve bounds a disk
        out = term if out is None else out + term
    return base * out


def hat(m: Multicurve, th: Theory) -> Multicurve:
    """The hat substitution for p = 2r: [i] -> (-1)^(i+1)[i] and color 1 -> r-3.

    Resolutions only involve delta = -[2]; under the substitution it becomes
    +[2]_p, which is also the loop value of color r-3 at level p.
    """
    if th.kind != TWICE_ODD:
        raise ValueError("the hat substitution is defined for p = 2r")
    return Multicurve(m.terms, m.genus, th.p // 2 - 3)


def ghat(a: Sequence[int], b: Sequence[int], th: Theory | int) -> Multicurve:
    """ghat(a, b) at level p = 2r as a polynomial in (r-3)-colored curves."""
    th = theory(th) if isinstance(th, int) else th
    delta_hat = th.quantum_int(2)
    return hat(lollipop_resolution(a, b, delta_hat), th)


def g_r(a: Sequence[int], b: Sequence[int], th: Theory | int) -> Multicurve:
    """The lollipop graph in its own (odd) theory as a polynomial in cores."""
    th = theory(th) if isinstance(th, int) else th
    return lollipop_resolution(a, b, th.loop_value(1))


def u_substitute(m: Multicurve, th: Theory) -> Multicurve:
    """Rewrite e^S_{r-3} = h u^S - 2 and expand over u-curves."""
    h = th.h
    one = th.one()
    images = {}
    for cv in m.curves():
        images[cv] = Multicurve.curve(cv, h, m.genus, "u") - Multicurve.const(2 * one, m.genus, "u")
    return m.substitute(images, "u")


def h_divisibility(m: Multicurve, k: int, th: Theory | int) -> bool:
    """Every u-graph coefficient of ``m`` is divisible by h^k in O_p."""
    th = theory(th) if isinstance(th, int) else th
    if k < 0:
        raise ValueError("k must be nonnegative")
    um = u_substitute(m, th) if m.color != "u" else m
    hk = th.h ** k
    for c in um.terms.values():
        if not c.is_integral:
            return False
        if k and not hk.divides(c):
            return False
    return True


def eyeglass(th: Theory | int) -> Multicurve:
    return ghat((1, 1), (0, 0), th)


def tripod(th: Theory | int) -> Multicurve:
    return ghat((1, 1, 1), (0, 0, 0), th)


# ---------------------------------------------------------------------------
# genus two: eigen-triple model
# ---------------------------------------------------------------------------

CURVE_INDEX = {(1,): 0, (2,): 1, (1, 2): 2}


class Genus2Model:
    """The level-p module of the genus-2 surface as functions on admissible triples."""

    def __init__(self, th: Theory | int) -> None:
        th = theory(th) if isinstance(th, int) else th
        self.theory = th
        m = max_color(th)
        self.triples = [(i, j, k) for i in range(th.d) for j in range(th.d) for k in range(m + 1)
                        if admissible(i, j, k, th)]
        w = omega(th).coords
        self.weights = [th.eta * w[i] * w[j] * loop(k, th) for i, j, k in self.triples]

    @property
    def rank(self) -> int:
        return len(self.triples)

    def core_value(self, color: int, edge_color: int) -> Cyc:
        """Value of the colored core e_color encircling an edge of color edge_color."""
        th = self.theory
        return th.hopf(edge_color, color) / th.loop_value(edge_color)

    def vector_from_multicurve(self, mc: Multicurve) -> list[Cyc]:
        th = self.theory
        cache: Dict[Tuple[Curve, int], Cyc] = {}
        out = []
        for t in self.triples:
            acc = th.zero()
            for mono, c in mc.terms.items():
                val = c
                for cv, k in mono:
                    key = (cv, t[CURVE_INDEX[cv]])
                    if key not in cache:
                        cache[key] = self._curve_value(mc.color, key[1])
                    val = val * cache[key] ** k
                acc = acc + val
            out.append(acc)
        return out

    def _curve_value(self, color, edge_color: int) -> Cyc:
        th = self.theory
        if color == "u":
            e = self.core_value(th.p // 2 - 3, edge_color)
            return (e + 2) / th.h
        return self.core_value(color, edge_color)

    def vector_from_handles(self, x: SkeinVector, y: SkeinVector) -> list[Cyc]:
        """Genus-one vectors placed in the two handles (stick colored 0)."""
        px = self._phi_all(x)
        py = self._phi_all(y)
        return [px[i] * py[j] for i, j, _ in self.triples]

    def vector_on_curve(self, s: SkeinVector, curve: Curve) -> list[Cyc]:
        vals = self._phi_all(s, extended=True)
        idx = CURVE_INDEX[curve]
        return [vals[t[idx]] for t in self.triples]

    def _phi_all(self, s: SkeinVector, extended: bool = False) -> list[Cyc]:
        th = self.theory
        n = max_color(th) + 1 if extended else th.d
        out = []
        for m in range(n):
            acc = th.zero()
            for c, coef in enumerate(s.coords):
                if not coef.is_zero():
                    acc = acc + coef * self.core_value(c, m)
            out.append(acc)
        return out

    def hermitian(self, x: Sequence[Cyc], y: Sequence[Cyc]) -> Cyc:
        th = self.theory
        acc = th.zero()
        for w, a, b in zip(self.weights, x, y):
            if a.is_zero() or b.is_zero():
                continue
            acc = acc + w * a * b.conjugate()
        return acc

    def pairing(self, x: Sequence[Cyc], y: Sequence[Cyc]) -> Cyc:
        """(x, y) = D <x, y>."""
        return self.theory.D * self.hermitian(x, y)

    def gram(self, vecs: Sequence[Sequence[Cyc]]) -> list[list[Cyc]]:
        return [[self.pairing(a, b) for b in vecs] for a in vecs]


def fusion_outer_curve(x: int, th: Theory | int) -> Dict[StandardBasisVector, Cyc]:
    """The curve around both holes colored x in the genus-2 standard basis.

    Fusing its two parallel arcs along the stick gives
    sum_c Delta_c / theta(x, x, c) u(x, x, c).
    """
    th = theory(th) if isinstance(th, int) else th
    out = {}
    for c in range(0, max_color(th) + 1, 2):
        if admissible(x, x, c, th):
            out[StandardBasisVector(2, (x, x, c))] = loop(c, th) / theta(x, x, c, th)
    return out


def expand_lollipop(a: Sequence[int], b: Sequence[int], th: Theory | int,
                    hatted: bool | None = None) -> Dict[StandardBasisVector, Cyc]:
    """Standard-basis coordinates of g(a, b) (or ghat at p = 2r), genus <= 2."""
    th = theory(th) if isinstance(th, int) else th
    g = len(a)
    if g > 3:
        raise ValueError("genus > 3 is unsupported")
    hatted = th.kind == TWICE_ODD if hatted is None else hatted
    mc = ghat(a, b, th) if hatted else g_r(a, b, th)
    color = mc.color
    if g == 1:
        return _expand_g1(mc, th, color)
    if g == 2:
        return _expand_g2(mc, th, color)
    if all(len(cv) == 1 for cv in mc.curves()):
        return _expand_g3_split(mc, th, color)
    raise NotImplementedError("genus-3 expansions with multi-hole curves use the u-graph form")


def _expand_g1(mc: Multicurve, th: Theory, color: int) -> Dict[StandardBasisVector, Cyc]:
    out: Dict[StandardBasisVector, Cyc] = {}
    for mono, c in mc.terms.items():
        if not mono:
            out[StandardBasisVector(1, (0,))] = out.get(StandardBasisVector(1, (0,)), th.zero()) + c
            continue
        ((cv, k),) = mono
        vec = SkeinVector.basis(th, color) ** k if color < th.d else None
        for i, v in enumerate(vec.coords):
            key = StandardBasisVector(1, (i,))
            out[key] = out.get(key, th.zero()) + c * v
    return {k: v for k, v in out.items() if not v.is_zero()}


def _expand_g2(mc: Multicurve, th: Theory, color: int) -> Dict[StandardBasisVector, Cyc]:
    out: Dict[StandardBasisVector, Cyc] = {}

    def add(u, v):
        out[u] = out.get(u, th.zero()) + v

    for mono, c in mc.terms.items():
        d = dict(mono)
        if d.get((1, 2), 0) > 1 or (d.get((1, 2)) and (d.get((1,)) or d.get((2,)))):
            raise NotImplementedError("products involving the outer curve need 6j moves")
        if d.get((1, 2)):
            for u, coef in fusion_outer_curve(color, th).items():
                add(u, c * coef)
            continue
        v1 = SkeinVector.basis(th, color) ** d.get((1,), 0)
        v2 = SkeinVector.basis(th, color) ** d.get((2,), 0)
        for i, x in enumerate(v1.coords):
            for j, y in enumerate(v2.coords):
                if not (x.is_zero() or y.is_zero()):
                    add(StandardBasisVector(2, (i, j, 0)), c * x * y)
    return {k: v for k, v in out.items() if not v.is_zero()}


def _expand_g3_split(mc: Multicurve, th: Theory, color: int) -> Dict[StandardBasisVector, Cyc]:
    out: Dict[StandardBasisVector, Cyc] = {}
    for mono, c in mc.terms.items():
        d = dict(mono)
        vs = [SkeinVector.basis(th, color) ** d.get((h,), 0) for h in (1, 2, 3)]
        for i, x in enumerate(vs[0].coords):
            for j, y in enumerate(vs[1].coords):
                for k, z in enumerate(vs[2].coords):
                    v = c * x * y * z
                    if not v.is_zero():
                        key = StandardBasisVector(3, (i, j, k, 0, 0, 0))
                        out[key] = out.get(key, th.zero()) + v
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# cross-check against brute-force diagram evaluation
# ---------------------------------------------------------------------------

def oracle_check(th: Theory | int, max_c: int = 3) -> dict:
    """Compare loops, Hopf entries and thetas with Temperley–Lieb evaluation."""
    from .tl import oracle

    th = theory(th) if isinstance(th, int) else th
    if th.kind == TWO:
        raise ValueError("the 2-theory is not a Kauffman-bracket specialization")
    # f_c only exists while [1], ..., [c] are invertible
    cap = 0
    while cap < max_c and th.quantum_int(cap + 1) != 0:
        cap += 1
    max_c = cap
    R = oracle(th.A, th.one())
    rows = []
    for i in range(max_c + 1):
        rows.append(("loop", (i,), R.loop(i), th.loop_value(i)))
    for i, j in product(range(max_c + 1), repeat=2):
        rows.append(("hopf", (i, j), R.hopf(i, j), th.hopf(i, j)))
    for a, b, c in product(range(max_c + 1), repeat=3):
        if admissible(a, b, c) and a <= b <= c:
            rows.append(("theta", (a, b, c), R.theta(a, b, c), theta(a, b, c, th)))
    bad = [(kind, idx) for kind, idx, x, y in rows if x != y]
    return {"p": th.p, "max_color": max_c, "compared": len(rows), "mismatches": bad,
            "ok": not bad}
