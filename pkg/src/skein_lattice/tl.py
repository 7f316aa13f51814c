"""Brute-force Temperley–Lieb evaluation, used as an independent oracle.

Diagrams are non-crossing matchings between ``m`` bottom and ``n`` top points;
morphisms are linear combinations of diagrams.  Composition glues diagrams and
counts closed loops, each worth ``delta = -A^2 - A^-2``.  Jones–Wenzl
idempotents come from Wenzl's recursion with coefficients obtained from traces
computed here, so nothing is borrowed from the closed formulas being tested.
"""
from __future__ import annotations

from typing import Any, Dict, Tuple

Diagram = Tuple[int, int, Tuple[int, ...]]  # (m bottom, n top, partner table)


def _identity_diagram(n: int) -> Diagram:
    return (n, n, tuple(list(range(n, 2 * n)) + list(range(n))))


def _compose_diagrams(f: Diagram, g: Diagram) -> tuple[Diagram, int]:
    """g after f (f: m -> k, g: k -> n); returns the diagram and the loop count."""
    m, k, fm = f
    k2, n, gm = g
    assert k == k2
    # global labels: f points 0..m+k-1, g points offset by m+k
    off = m + k

    def partner(x: int) -> int:
        return fm[x] if x < off else gm[x - off] + off

    def glue(x: int) -> int | None:
        # f top point m+i is glued to g bottom point i
        if m <= x < off:
            return off + (x - m)
        if off <= x < off + k:
            return m + (x - off)
        return None

    def outer(x: int) -> int | None:
        if x < m:
            return x
        if x >= off + k:
            return m + (x - off - k)
        return None

    result = [0] * (m + n)
    seen = set()
    for start in list(range(m)) + list(range(off + k, off + k + n)):
        if start in seen:
            continue
        x = start
        seen.add(x)
        while True:
            y = partner(x)
            seen.add(y)
            o = outer(y)
            if o is not None:
                a, b = outer(start), o
                result[a] = b
                result[b] = a
                break
            x = glue(y)
            seen.add(x)
    loops = 0
    for x in range(m, off + k):
        if x in seen:
            continue
        loops += 1
        cur = x
        while cur not in seen:
            seen.add(cur)
            y = partner(cur)
            seen.add(y)
            cur = glue(y)
    return (m, n, tuple(result)), loops


def _tensor_diagrams(f: Diagram, g: Diagram) -> Diagram:
    m1, n1, a = f
    m2, n2, b = g
    m, n = m1 + m2, n1 + n2

    def relabel_f(x: int) -> int:
        return x if x < m1 else m + (x - m1)

    def relabel_g(x: int) -> int:
        return m1 + x if x < m2 else m + n1 + (x - m2)

    out = [0] * (m + n)
    for x in range(m1 + n1):
        out[relabel_f(x)] = relabel_f(a[x])
    for x in range(m2 + n2):
        out[relabel_g(x)] = relabel_g(b[x])
    return (m, n, tuple(out))


class TL:
    """Linear combination of Temperley–Lieb diagrams with ring coefficients."""

    def __init__(self, m: int, n: int, terms: Dict[Diagram, Any], ring: "TLRing") -> None:
        self.m, self.n, self.ring = m, n, ring
        self.terms = {d: c for d, c in terms.items() if not ring.is_zero(c)}

    def __add__(self, other: TL) -> TL:
        t = dict(self.terms)
        for d, c in other.terms.items():
            t[d] = t[d] + c if d in t else c
        return TL(self.m, self.n, t, self.ring)

    def __sub__(self, other: TL) -> TL:
        return self + other.scale(self.ring.from_int(-1))

    def scale(self, s: Any) -> TL:
        return TL(self.m, self.n, {d: c * s for d, c in self.terms.items()}, self.ring)

    def __matmul__(self, other: TL) -> TL:
        """self after other (other: m -> k, self: k -> n)."""
        if other.n != self.m:
            raise ValueError("boundary mismatch")
        t: Dict[Diagram, Any] = {}
        delta_pows: Dict[int, Any] = {}
        for d1, c1 in other.terms.items():
            for d2, c2 in self.terms.items():
                d, loops = _compose_diagrams(d1, d2)
                if loops not in delta_pows:
                    delta_pows[loops] = self.ring.delta ** loops if loops else self.ring.one
                c = c1 * c2 * delta_pows[loops]
                t[d] = t[d] + c if d in t else c
        return TL(other.m, self.n, t, self.ring)

    def tensor(self, other: TL) -> TL:
        t: Dict[Diagram, Any] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                d = _tensor_diagrams(d1, d2)
                c = c1 * c2
                t[d] = t[d] + c if d in t else c
        return TL(self.m + other.m, self.n + other.n, t, self.ring)

    def closure(self) -> Any:
        """Planar (Markov) closure of an endomorphism: connect top i to bottom i."""
        if self.m != self.n:
            raise ValueError("closure needs an endomorphism")
        n = self.n
        total = self.ring.zero
        for (m, _, match), c in self.terms.items():
            loops = 0
            seen = set()
            for s in range(2 * n):
                if s in seen:
                    continue
                loops += 1
                x = s
                while x not in seen:
                    seen.add(x)
                    y = match[x]
                    seen.add(y)
                    x = y + n if y < n else y - n
            total = total + c * (self.ring.delta ** loops)
        return total

    def __len__(self) -> int:
        return len(self.terms)


class TLRing:
    """Coefficient ring data: a Kauffman variable A and its arithmetic."""

    def __init__(self, A: Any, one: Any) -> None:
        self.A = A
        self.one = one
        self.zero = one - one
        self.Ainv = one / A
        self.delta = -(A * A) - self.Ainv * self.Ainv

    def from_int(self, k: int) -> Any:
        return self.one * k

    def is_zero(self, x: Any) -> bool:
        return x == 0

    # -- building blocks ----------------------------------------------------
    def identity(self, n: int) -> TL:
        return TL(n, n, {_identity_diagram(n): self.one}, self)

    def cup(self, k: int) -> TL:
        """0 -> 2k: k nested arcs."""
        match = [0] * (2 * k)
        for i in range(k):
            match[i], match[2 * k - 1 - i] = 2 * k - 1 - i, i
        return TL(0, 2 * k, {(0, 2 * k, tuple(match)): self.one}, self)

    def cap(self, k: int) -> TL:
        match = [0] * (2 * k)
        for i in range(k):
            match[i], match[2 * k - 1 - i] = 2 * k - 1 - i, i
        return TL(2 * k, 0, {(2 * k, 0, tuple(match)): self.one}, self)

    def hook(self, n: int, i: int) -> TL:
        """The generator U_i on n strands (joins strands i, i+1 top and bottom)."""
        match = list(range(n, 2 * n)) + list(range(n))
        match[i], match[i + 1] = i + 1, i
        match[n + i], match[n + i + 1] = n + i + 1, n + i
        return TL(n, n, {(n, n, tuple(match)): self.one}, self)

    def crossing(self, n: int, i: int) -> TL:
        """Kauffman expansion of the crossing of strands i, i+1: A*1 + A^-1*U_i."""
        return self.identity(n).scale(self.A) + self.hook(n, i).scale(self.Ainv)

    # -- Jones–Wenzl ------------------------------------------------------------
    def jones_wenzl(self, n: int) -> TL:
        cache = self.__dict__.setdefault("_jw", {})
        if n in cache:
            return cache[n]
        if n == 0:
            out = TL(0, 0, {(0, 0, ()): self.one}, self)
        elif n == 1:
            out = self.identity(1)
        else:
            prev = self.jones_wenzl(n - 1).tensor(self.identity(1))
            tr_prev = self.jones_wenzl(n - 1).closure()
            tr_prev2 = self.jones_wenzl(n - 2).closure()
            coef = tr_prev2 / tr_prev
            out = prev - (prev @ self.hook(n, n - 2) @ prev).scale(coef)
        cache[n] = out
        return out

    # -- closed evaluations -----------------------------------------------------
    def loop(self, i: int) -> Any:
        return self.jones_wenzl(i).closure()

    def bundle_crossing(self, i: int, j: int) -> TL:
        """i strands crossing over j strands, as an element of TL_{i+j}."""
        n = i + j
        out = self.identity(n)
        # move each of the i left strands across the j right strands
        for s in reversed(range(i)):
            for t in range(j):
                out = self.crossing(n, s + t) @ out
        return out

    def hopf(self, i: int, j: int) -> Any:
        """Bracket of the Hopf link with components cabled by f_i and f_j."""
        if i == 0:
            return self.loop(j)
        if j == 0:
            return self.loop(i)
        proj = self.jones_wenzl(i).tensor(self.jones_wenzl(j))
        x1 = self.bundle_crossing(i, j)
        x2 = self.bundle_crossing(j, i)
        return (x2 @ x1 @ proj).closure()

    def theta(self, a: int, b: int, c: int) -> Any:
        """Theta graph with edges decorated by f_a, f_b, f_c."""
        if (a + b + c) % 2 or a > b + c or b > a + c or c > a + b:
            raise ValueError("inadmissible triple")
        i = (a + b - c) // 2
        j = (a + c - b) // 2
        k = (b + c - a) // 2
        # V: a -> b (x) c with a = i + j, b = i + k, c = k + j
        v = self.identity(i).tensor(self.cup(k)).tensor(self.identity(j))
        vdag = self.identity(i).tensor(self.cap(k)).tensor(self.identity(j))
        fa = self.jones_wenzl(a)
        fbc = self.jones_wenzl(b).tensor(self.jones_wenzl(c))
        return (vdag @ fbc @ v @ fa).closure()


def oracle(A: Any, one: Any) -> TLRing:
    return TLRing(A, one)
