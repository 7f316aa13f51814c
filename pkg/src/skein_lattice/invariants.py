"""Quantum invariants of closed 3-manifolds given by chain-link surgery.

A presentation is a split union of *chains*: in each chain consecutive
components form Hopf clasps and all other pairs are unlinked.  Components are
either surgered (decorated by the surgery element omega) or carry a fixed color
and are left alone.  Surgery on a split union of chains gives the connected sum
of the manifolds obtained from each chain, so lens spaces L(n, 1),
continued-fraction lens spaces, S^3, S^1 x S^2 and connected sums of these are
all in reach.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .cyclotomic import Cyc
from .torus import TWO, Theory, omega, theory

OMEGA = "omega"
Label = Union[int, str]


@dataclass(frozen=True)
class Component:
    framing: int = 0
    label: Label = OMEGA

    @property
    def surgered(self) -> bool:
        return self.label == OMEGA

    def to_json(self) -> dict:
        key = "omega" if self.surgered else "color"
        return {"f": self.framing, key: True if self.surgered else self.label}


@dataclass(frozen=True)
class ChainLinkPresentation:
    """Split union of framed chains, a weight, and optional disjoint parts."""

    chains: tuple[tuple[Component, ...], ...] = ()
    weight: int = 0
    disjoint: tuple["ChainLinkPresentation", ...] = field(default=())

    # -- construction --------------------------------------------------------
    @classmethod
    def chain(cls, framings: Sequence[int], labels: Sequence[Label] | None = None,
              weight: int = 0) -> ChainLinkPresentation:
        labels = labels or [OMEGA] * len(framings)
        comps = tuple(Component(int(f), lab) for f, lab in zip(framings, labels))
        return cls((comps,) if comps else (), weight)

    @classmethod
    def empty(cls) -> ChainLinkPresentation:
        return cls()

    s3 = empty

    @classmethod
    def lens(cls, n: int, q: int = 1) -> ChainLinkPresentation:
        """L(n, q) as surgery on a chain; L(n, 1) is the n-framed unknot (n = 0: S^1 x S^2).

        The framings are the terms of the continued fraction n/q = a_1 - 1/(a_2 - ...).
        """
        if q == 1 or n == 0:
            return cls.chain([n])
        if q <= 0 or n <= 0 or gcd(n, q) != 1:
            raise ValueError("lens space L(n, q) needs n > 0 and 0 < q coprime to n")
        framings = []
        num, den = n, q
        while den:
            a = -(-num // den)
            framings.append(a)
            num, den = den, a * den - num
        return cls.chain(framings)

    @classmethod
    def s1s2(cls) -> ChainLinkPresentation:
        return cls.chain([0])

    def connected_sum(self, other: ChainLinkPresentation) -> ChainLinkPresentation:
        if self.disjoint or other.disjoint:
            raise ValueError("connected sum of disconnected presentations is ambiguous")
        return ChainLinkPresentation(self.chains + other.chains, self.weight + other.weight)

    __matmul__ = connected_sum

    def disjoint_union(self, other: ChainLinkPresentation) -> ChainLinkPresentation:
        parts = (self.disjoint or (self,)) + (other.disjoint or (other,))
        return ChainLinkPresentation((), 0, parts)

    def with_weight(self, w: int) -> ChainLinkPresentation:
        return ChainLinkPresentation(self.chains, w, self.disjoint)

    def flat(self) -> ChainLinkPresentation:
        """M_flat: the same manifold with weight reassigned to zero."""
        if self.disjoint:
            return ChainLinkPresentation((), 0, tuple(d.flat() for d in self.disjoint))
        return self.with_weight(0)

    # -- data ---------------------------------------------------------------
    def surgery_components(self) -> list[tuple[int, int]]:
        return [(ci, k) for ci, ch in enumerate(self.chains)
                for k, comp in enumerate(ch) if comp.surgered]

    def n_banded(self) -> int:
        return sum(1 for ch in self.chains for c in ch if not c.surgered and c.label != 0)

    def to_json(self) -> dict:
        if self.disjoint:
            return {"disjoint": [d.to_json() for d in self.disjoint]}
        return {"chains": [[c.to_json() for c in ch] for ch in self.chains],
                "weight": self.weight}

    @classmethod
    def from_json(cls, d: dict) -> ChainLinkPresentation:
        if "disjoint" in d:
            return cls((), 0, tuple(cls.from_json(x) for x in d["disjoint"]))
        if "lens" in d:
            lens = d["lens"]
            base = cls.lens(*map(int, lens)) if isinstance(lens, list) else cls.lens(int(lens))
            return base.with_weight(int(d.get("weight", 0)))
        chains = []
        for ch in d.get("chains", []):
            comps = []
            for c in ch:
                f = int(c.get("f", c.get("framing", 0)))
                if "color" in c and c["color"] is not None and c["color"] != "omega":
                    comps.append(Component(f, int(c["color"])))
                else:
                    comps.append(Component(f, OMEGA))
            chains.append(tuple(comps))
        pres = cls(tuple(chains), int(d.get("weight", 0)))
        for s in d.get("sums", []):
            pres = pres.connected_sum(cls.from_json(s))
        return pres

    def __str__(self) -> str:
        if self.disjoint:
            return " | ".join(str(x) for x in self.disjoint)
        if not self.chains:
            return "S3"
        parts = []
        for ch in self.chains:
            parts.append("-".join(f"{'w' if c.surgered else 'c' + str(c.label)}{c.framing:+d}"
                                  for c in ch))
        s = " # ".join(parts)
        return s + (f" [w={self.weight}]" if self.weight else "")


# ---------------------------------------------------------------------------
# linking data
# ---------------------------------------------------------------------------

def linking_matrix(L: ChainLinkPresentation) -> list[list[int]]:
    """Linking matrix of the surgered components (framings on the diagonal)."""
    comps = L.surgery_components()
    idx = {c: i for i, c in enumerate(comps)}
    m = [[0] * len(comps) for _ in comps]
    for (ci, k), i in idx.items():
        m[i][i] = L.chains[ci][k].framing
        j = idx.get((ci, k + 1))
        if j is not None:
            m[i][j] = m[j][i] = 1
    for part in L.disjoint:
        sub = linking_matrix(part)
        off = len(m)
        m = [row + [0] * len(sub) for row in m]
        m += [[0] * off + row for row in sub]
    return m


def _inertia(m: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts by symmetric congruence elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    pos = neg = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # row/col i += row/col j makes the diagonal 2 a_ij + a_jj != 0 (a_jj = 0)
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            piv = i
        d = a[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(piv)
        for i in active:
            f = a[i][piv] / d
            if f:
                for k in range(n):
                    a[i][k] -= f * a[piv][k]
                for k in range(n):
                    a[k][i] -= f * a[k][piv]
    return pos, neg, n - pos - neg


def signature(L: ChainLinkPresentation) -> int:
    p, q, _ = _inertia(linking_matrix(L))
    return p - q


def nullity(L: ChainLinkPresentation) -> int:
    """First Betti number of the surgered manifold (for connected presentations)."""
    return _inertia(linking_matrix(L))[2]


beta1 = nullity


# ---------------------------------------------------------------------------
# bracket evaluation
# ---------------------------------------------------------------------------

def _colors(th: Theory, comp: Component) -> list[tuple[int, Cyc]]:
    """(color, weight) pairs for one component, twist factor included."""
    f = comp.framing
    if comp.surgered:
        w = omega(th).coords
        return [(c, w[c] * _mu_power(th, c, f)) for c in range(th.d) if not w[c].is_zero()]
    c = int(comp.label)
    sign = -1 if (th.kind == TWO and c == 1) else 1
    return [(c, _mu_power(th, c, f) * sign)]


def _mu_power(th: Theory, c: int, f: int) -> Cyc:
    m = th.mus[c] if c < th.d else th.twist_eigenvalue(c)
    return m ** f if f >= 0 else m.conjugate() ** (-f)


def _delta(th: Theory, c: int) -> Cyc:
    return th.deltas[c] if c < th.d else th.loop_value(c)


def _hopf(th: Theory, a: int, b: int) -> Cyc:
    if a < th.d and b < th.d:
        return th.hopf_matrix[a][b]
    return th.hopf(a, b)


def chain_bracket(th: Theory, chain: Sequence[Component]) -> Cyc:
    """Colored bracket of one chain by transfer-matrix folding."""
    if not chain:
        return th.one()
    state = {c: w for c, w in _colors(th, chain[0])}
    if len(chain) == 1:
        return _sum(th, (w * _delta(th, c) for c, w in state.items()))
    for k, comp in enumerate(chain[1:], start=1):
        nxt: dict[int, Cyc] = {}
        interior = k >= 2
        for c2, w2 in _colors(th, comp):
            acc = th.zero()
            for c1, v in state.items():
                term = v * _hopf(th, c1, c2)
                if interior:
                    term = term / _delta(th, c1)
                acc = acc + term
            nxt[c2] = acc * w2
        state = nxt
    return _sum(th, state.values())


def _sum(th: Theory, vals: Iterable[Cyc]) -> Cyc:
    acc = th.zero()
    for v in vals:
        acc = acc + v
    return acc


def bracket_eval(L: ChainLinkPresentation, th: Theory | int) -> Cyc:
    """<L(omega)>: bracket of the decorated split link, <empty> = 1."""
    th = theory(th) if isinstance(th, int) else th
    out = th.one()
    for ch in L.chains:
        out = out * chain_bracket(th, ch)
    return out


def bracket_invariant(L: ChainLinkPresentation, th: Theory | int) -> Cyc:
    """<M> = eta * kappa^(-sigma) * <L(omega)> * kappa^weight.

    At level 2 this is the normalized 2-theory invariant <M>'_2 (banded
    components colored 1 carry the sign from the (-2)^(-n) factor).
    """
    th = theory(th) if isinstance(th, int) else th
    if L.disjoint:
        out = th.one()
        for part in L.disjoint:
            out = out * bracket_invariant(part, th)
        return out
    s = signature(L)
    k = th.kappa
    val = th.eta * bracket_eval(L, th) * _kpow(k, L.weight - s)
    return val


def _kpow(k: Cyc, e: int) -> Cyc:
    return k ** e if e >= 0 else k.conjugate() ** (-e)


def invariant_I(L: ChainLinkPresentation, th: Theory | int) -> Cyc:
    """I_p(M) = D_p <M_flat>."""
    th = theory(th) if isinstance(th, int) else th
    return th.D * bracket_invariant(L.flat(), th)


def invariant_theta(L: ChainLinkPresentation, th: Theory | int) -> Cyc:
    """theta_p(M) = D_p^beta_1 I_p(M)."""
    th = theory(th) if isinstance(th, int) else th
    return th.D ** nullity(L) * invariant_I(L, th)


def kappa_ratio(th: Theory | int) -> Cyc:
    """Gauss-sum kappa divided by the closed form; 1 when conventions agree."""
    th = theory(th) if isinstance(th, int) else th
    return th.kappa / th.closed_form_kappa()


def gauss_sum(th: Theory | int) -> Cyc:
    """<U_{+1}(omega)>, the bracket of a +1-framed omega-unknot."""
    th = theory(th) if isinstance(th, int) else th
    return bracket_eval(ChainLinkPresentation.lens(1), th)


@dataclass
class TheoryConstants:
    D: Cyc
    eta: Cyc
    kappa: Cyc
    kappa_ratio: Cyc

    def to_json(self) -> dict:
        return {k: v.to_json() for k, v in self.__dict__.items()}


def constants(th: Theory | int) -> TheoryConstants:
    th = theory(th) if isinstance(th, int) else th
    return TheoryConstants(th.D, th.eta, th.kappa, kappa_ratio(th))
