"""The skein algebra of the solid torus and the genus-one TQFT module.

At level ``p`` the module is the quotient of Q(zeta)[z] by the minimal
polynomial of the core ``z``, whose roots are the eigenvalues
``lambda_j = -A^(2j+2) - A^-(2j+2)`` for ``0 <= j < d``.  Vectors are stored in
the Jones–Wenzl basis ``e_0, ..., e_{d-1}``; products are computed in the
eigen-coordinates ``phi_j(x) = x(lambda_j)`` where the algebra is diagonal.

Level 2 is the "2-theory": ``A = i``, two colors, and the core is rescaled by
``1/2`` so that every structure constant is a unit (``z^2 = 1``).
"""
from __future__ import annotations

from functools import cached_property, lru_cache
from typing import Sequence

from sympy import isprime

from .cyclotomic import Cyc, Number, RingHom, zeta

TWO = "two-theory"
ODD = "odd"
TWICE_ODD = "twice-odd"


def classify(p: int) -> str:
    if p == 2:
        return TWO
    if p % 2 and isprime(p):
        return ODD
    if p % 2 == 0 and p // 2 > 2 and isprime(p // 2):
        return TWICE_ODD
    raise ValueError(f"level {p} is neither 2, an odd prime, nor twice an odd prime")


def i_hom(r: int) -> RingHom:
    """i_r : Q(zeta_8) -> Q(zeta_{8r}),  zeta_8 -> zeta_{8r}^(r^2)."""
    return RingHom(8, 8 * r, r * r, name=f"i_{r}")


def j_hom(r: int) -> RingHom:
    """j_r : O_r -> O_{2r} inside Q(zeta_{8r}).

    For r = 1 mod 4 it acts on Q(zeta_{4r}) by alpha_r -> alpha_p^(1+r^2);
    for r = 3 mod 4 on Q(zeta_{2r}) by A_r -> A_p^(1+r^2), landing in
    conductor 4r (= 2p); callers embed into 8r as needed.
    """
    if r % 4 == 1:
        return RingHom(4 * r, 8 * r, 1 + r * r, name=f"j_{r}")
    return RingHom(2 * r, 4 * r, 1 + r * r, name=f"j_{r}")


@lru_cache(maxsize=None)
def theory(p: int) -> "Theory":
    return Theory(p)


class Theory:
    """Constants of the level-p theory (the ``TheoryParams`` record)."""

    def __init__(self, p: int) -> None:
        self.p = p
        self.kind = classify(p)
        if self.kind == TWO:
            self.n = 8
            self.d = 2
            self.A = zeta(8, 2)
            self.r = None
        else:
            self.n = 4 * p
            self.d = (p - 1) // 2
            self.A = zeta(4 * p, 2)
            self.r = p // 2 if self.kind == TWICE_ODD else None
        self.q = self.A * self.A
        # zeta_p: A^2 for p >= 3, alpha_2^4 = -1 at level 2
        self.zeta_p = self.q if p > 2 else zeta(8, 4)
        self.h = 1 + self.zeta_p

    def __repr__(self) -> str:
        return f"Theory(p={self.p}, {self.kind}, d={self.d}, conductor={self.n})"

    def __reduce__(self):
        return (theory, (self.p,))

    # -- scalars ------------------------------------------------------------
    def one(self) -> Cyc:
        return Cyc.from_int(1, self.n)

    def zero(self) -> Cyc:
        return Cyc.from_int(0, self.n)

    def scalar(self, x: Number) -> Cyc:
        x = Cyc.coerce(x, self.n)
        return x if x.n == self.n else x.embed(self.n) if self.n % x.n == 0 else x

    def A_pow(self, k: int) -> Cyc:
        # A = zeta_n^2 in every theory
        return zeta(self.n, 2 * k)

    def quantum_int(self, k: int) -> Cyc:
        """[k] as the Laurent sum of q^(k-1-2j); valid even where q = q^-1."""
        if k < 0:
            return -self.quantum_int(-k)
        terms: dict[int, int] = {}
        for j in range(k):
            e = 4 * (k - 1 - 2 * j)  # q = A^2 = zeta_n^4
            terms[e % self.n] = terms.get(e % self.n, 0) + 1
        return Cyc.from_exponents(self.n, terms)

    # -- genus one structure constants ------------------------------------
    @cached_property
    def _two_norm(self) -> bool:
        return self.kind == TWO

    def loop_value(self, i: int) -> Cyc:
        """Delta_i = (-1)^i [i+1] (level 2: normalized to 1 for both colors)."""
        if self._two_norm:
            if i not in (0, 1):
                raise ValueError("the 2-theory has colors 0 and 1 only")
            return self.one()
        v = self.quantum_int(i + 1)
        return -v if i % 2 else v

    def twist_eigenvalue(self, i: int) -> Cyc:
        """mu_i = (-1)^i A^(i^2+2i)."""
        v = self.A_pow(i * i + 2 * i)
        return -v if i % 2 else v

    def hopf(self, i: int, j: int) -> Cyc:
        """Bracket of the Hopf link colored (i, j): (-1)^(i+j) [(i+1)(j+1)]."""
        if self._two_norm:
            return Cyc.from_int(-1 if i == j == 1 else 1, self.n)
        v = self.quantum_int((i + 1) * (j + 1))
        return -v if (i + j) % 2 else v

    def core_eigenvalue(self, j: int) -> Cyc:
        """Value of the core z on the j-th eigenline."""
        if self._two_norm:
            return Cyc.from_int(1 if j == 0 else -1, self.n)
        return -(self.A_pow(2 * j + 2) + self.A_pow(-2 * j - 2))

    @cached_property
    def deltas(self) -> tuple[Cyc, ...]:
        return tuple(self.loop_value(i) for i in range(self.d))

    @cached_property
    def mus(self) -> tuple[Cyc, ...]:
        return tuple(self.twist_eigenvalue(i) for i in range(self.d))

    @cached_property
    def hopf_matrix(self) -> tuple[tuple[Cyc, ...], ...]:
        return tuple(tuple(self.hopf(i, j) for j in range(self.d)) for i in range(self.d))

    @cached_property
    def lambdas(self) -> tuple[Cyc, ...]:
        return tuple(self.core_eigenvalue(j) for j in range(self.d))

    @cached_property
    def D2(self) -> Cyc:
        """Sum of squared loop values; equals D^2."""
        acc = self.zero()
        for dl in self.deltas:
            acc = acc + dl * dl
        return acc

    @cached_property
    def D(self) -> Cyc:
        """The normalizing constant D_p with D_p^2 = sum Delta_i^2.

        Odd p: the positive real square root, written via a quadratic Gauss sum.
        p = 2r: the product i_r(D_2) j_r(D_r), whose sign is forced by the
        factorization of invariants.
        """
        if self.kind == TWO:
            return zeta(8) + zeta(8, -1)
        if self.kind == ODD:
            p = self.p
            g = Cyc.from_exponents(self.n, _gauss_terms(p, self.n))
            base = g / (self.q - self.q.inverse())
            for cand in (base, base * zeta(self.n, self.n // 4)):
                if cand * cand == self.D2:
                    val = cand.to_complex()
                    if abs(val.imag) > 1e-9:
                        continue
                    return cand if val.real > 0 else -cand
            raise ArithmeticError("no real square root of sum Delta^2 found")
        r = self.r
        d = i_hom(r)(theory(2).D) * j_image(r, theory(r).D)
        if d * d != self.D2:
            raise ArithmeticError("product D does not square to sum Delta^2")
        return d

    @cached_property
    def eta(self) -> Cyc:
        return self.D.inverse()

    @cached_property
    def kappa(self) -> Cyc:
        """Gauss sum <U_{+1}(omega)> = D^-1 sum mu_i Delta_i^2."""
        acc = self.zero()
        for m, dl in zip(self.mus, self.deltas):
            acc = acc + m * dl * dl
        return acc * self.eta

    @cached_property
    def twist_order(self) -> int:
        for k in sorted(k for k in range(1, self.n + 1) if self.n % k == 0):
            if all(m ** k == 1 for m in self.mus):
                return k
        return self.n

    # -- basis change between e- and eigen-coordinates ------------------------
    @cached_property
    def to_phi_matrix(self) -> tuple[tuple[Cyc, ...], ...]:
        """Row j: phi_j(e_i) = H_ij / H_0j."""
        H = self.hopf_matrix
        return tuple(tuple(H[i][j] / H[0][j] for i in range(self.d)) for j in range(self.d))

    @cached_property
    def from_phi_matrix(self) -> tuple[tuple[Cyc, ...], ...]:
        """Row i: x_i = sum_j H_ij Delta_j phi_j / D^2."""
        H = self.hopf_matrix
        inv = self.D2.inverse()
        return tuple(tuple(H[i][j] * self.deltas[j] * inv for j in range(self.d))
                     for i in range(self.d))

    def closed_form_kappa(self) -> Cyc:
        """Closed form +-alpha_{4p}^(-6 - p(p+1)/2) (minus sign for p = 2r); p = 2 gives zeta_8."""
        if self.kind == TWO:
            return zeta(8)
        v = zeta(self.n, -6 - self.p * (self.p + 1) // 2)
        return -v if self.kind == TWICE_ODD else v


def _gauss_terms(p: int, n: int) -> dict[int, int]:
    # zeta_p = zeta_n^(n/p); quadratic Gauss sum sum_k zeta_p^(k^2)
    s = n // p
    out: dict[int, int] = {}
    for k in range(p):
        e = (s * k * k) % n
        out[e] = out.get(e, 0) + 1
    return out


def j_image(r: int, x: Cyc) -> Cyc:
    """Apply j_r to an element of the level-r ambient field, landing in conductor 8r."""
    h = j_hom(r)
    if h.source != x.n:
        if x.n % h.source == 0:
            x = x.restrict(h.source)
        else:
            x = x.embed(h.source)
    return h(x).embed(8 * r)


def i_image(r: int, x: Cyc) -> Cyc:
    return i_hom(r)(x)


# ---------------------------------------------------------------------------
# generic skein of the solid torus
# ---------------------------------------------------------------------------

class GenericSkein:
    """Polynomial in the core z with Laurent-polynomial-in-A integer coefficients.

    Stored as ``{(k, a): c}`` meaning ``c * A^a * z^k``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], int] | None = None) -> None:
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def z(cls, k: int = 1) -> GenericSkein:
        return cls({(k, 0): 1})

    @classmethod
    def const(cls, c: int, a: int = 0) -> GenericSkein:
        return cls({(0, a): c})

    def __add__(self, other: GenericSkein | int) -> GenericSkein:
        if isinstance(other, int):
            other = GenericSkein.const(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return GenericSkein(t)

    __radd__ = __add__

    def __neg__(self) -> GenericSkein:
        return GenericSkein({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: GenericSkein | int) -> GenericSkein:
        if isinstance(other, int):
            other = GenericSkein.const(other)
        return self + (-other)

    def __rsub__(self, other: int) -> GenericSkein:
        return GenericSkein.const(other) - self

    def __mul__(self, other: GenericSkein | int) -> GenericSkein:
        if isinstance(other, int):
            return GenericSkein({k: v * other for k, v in self.terms.items()})
        t: dict[tuple[int, int], int] = {}
        for (k1, a1), v1 in self.terms.items():
            for (k2, a2), v2 in other.terms.items():
                key = (k1 + k2, a1 + a2)
                t[key] = t.get(key, 0) + v1 * v2
        return GenericSkein(t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> GenericSkein:
        out = GenericSkein.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = GenericSkein.const(other)
        if not isinstance(other, GenericSkein):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def degree(self) -> int:
        return max((k for k, _ in self.terms), default=0)

    def z_coefficients(self, th: Theory) -> list[Cyc]:
        """Specialize A and return the coefficient list in powers of z."""
        out = [th.zero() for _ in range(self.degree() + 1)]
        for (k, a), v in self.terms.items():
            out[k] = out[k] + th.A_pow(a) * v
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (k, a), v in sorted(self.terms.items(), reverse=True):
            mon = "*".join(x for x in (f"A^{a}" if a else "", f"z^{k}" if k > 1 else "z" if k else "") if x)
            parts.append(f"{v}" + (f"*{mon}" if mon else ""))
        return " + ".join(parts).replace("+ -", "- ")


@lru_cache(maxsize=None)
def chebyshev_e(i: int) -> GenericSkein:
    """Jones–Wenzl colored core: e_0 = 1, e_1 = z, e_{k+1} = z e_k - e_{k-1}."""
    if i < 0:
        raise ValueError("color must be nonnegative")
    if i == 0:
        return GenericSkein.const(1)
    if i == 1:
        return GenericSkein.z()
    return GenericSkein.z() * chebyshev_e(i - 1) - chebyshev_e(i - 2)


# ---------------------------------------------------------------------------
# the TQFT module of the torus
# ---------------------------------------------------------------------------

class SkeinVector:
    """Element of the level-p torus module in the basis e_0..e_{d-1}."""

    __slots__ = ("theory", "coords")

    def __init__(self, th: Theory, coords: Sequence[Number]) -> None:
        if len(coords) != th.d:
            raise ValueError(f"expected {th.d} coordinates, got {len(coords)}")
        self.theory = th
        self.coords = tuple(th.scalar(c) for c in coords)

    # constructors
    @classmethod
    def basis(cls, th: Theory, i: int) -> SkeinVector:
        return cls(th, [1 if k == i else 0 for k in range(th.d)])

    @classmethod
    def zero(cls, th: Theory) -> SkeinVector:
        return cls(th, [0] * th.d)

    @classmethod
    def from_phi(cls, th: Theory, phis: Sequence[Cyc]) -> SkeinVector:
        M = th.from_phi_matrix
        return cls(th, [_dot(M[i], phis) for i in range(th.d)])

    def phi(self) -> list[Cyc]:
        M = self.theory.to_phi_matrix
        return [_dot(M[j], self.coords) for j in range(self.theory.d)]

    def _same(self, other: SkeinVector) -> None:
        if other.theory.p != self.theory.p:
            raise ValueError("vectors belong to different theories")

    def __add__(self, other: SkeinVector) -> SkeinVector:
        self._same(other)
        return SkeinVector(self.theory, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: SkeinVector) -> SkeinVector:
        self._same(other)
        return SkeinVector(self.theory, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> SkeinVector:
        return SkeinVector(self.theory, [-a for a in self.coords])

    def __mul__(self, other: SkeinVector | Number) -> SkeinVector:
        if isinstance(other, SkeinVector):
            self._same(other)
            prod = [a * b for a, b in zip(self.phi(), other.phi())]
            return SkeinVector.from_phi(self.theory, prod)
        s = self.theory.scalar(other)
        return SkeinVector(self.theory, [a * s for a in self.coords])

    def __rmul__(self, other: Number) -> SkeinVector:
        return self * other

    def __truediv__(self, other: Number) -> SkeinVector:
        s = self.theory.scalar(other)
        inv = s.inverse()
        return SkeinVector(self.theory, [a * inv for a in self.coords])

    def __pow__(self, k: int) -> SkeinVector:
        out = SkeinVector.basis(self.theory, 0)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SkeinVector):
            return NotImplemented
        return self.theory.p == other.theory.p and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.theory.p, self.coords))

    def twist(self, k: int = 1) -> SkeinVector:
        return twist(self, k)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def map_coeffs(self, f) -> list[Cyc]:
        return [f(c) for c in self.coords]

    def __repr__(self) -> str:
        return f"SkeinVector(p={self.theory.p}, [{', '.join(str(c) for c in self.coords)}])"

    def to_json(self) -> dict:
        return {"p": self.theory.p, "coords": [c.to_json() for c in self.coords]}


def _dot(row: Sequence[Cyc], vec: Sequence[Cyc]) -> Cyc:
    acc = None
    for a, b in zip(row, vec):
        if a.is_zero() or b.is_zero():
            continue
        t = a * b
        acc = t if acc is None else acc + t
    if acc is None:
        return Cyc.from_int(0, row[0].n if row else 1)
    return acc


def quantum_int(k: int, th: Theory | int) -> Cyc:
    return _th(th).quantum_int(k)


def loop_value(i: int, th: Theory | int) -> Cyc:
    return _th(th).loop_value(i)


def _th(th: Theory | int) -> Theory:
    return theory(th) if isinstance(th, int) else th


def e(th: Theory | int, i: int) -> SkeinVector:
    return SkeinVector.basis(_th(th), i)


def core(th: Theory | int) -> SkeinVector:
    """The (normalized, at level 2) core z as a module element."""
    th = _th(th)
    return SkeinVector.from_phi(th, list(th.lambdas))


def twist(x: SkeinVector, k: int = 1) -> SkeinVector:
    th = x.theory
    out = []
    for c, m in zip(x.coords, th.mus):
        out.append(c * (m ** k) if k >= 0 else c * (m.conjugate() ** (-k)))
    return SkeinVector(th, out)


def omega(th: Theory | int) -> SkeinVector:
    """Surgery element D^-1 sum_i Delta_i e_i (level 2: (1 + z)/sqrt 2)."""
    th = _th(th)
    eta = th.eta
    return SkeinVector(th, [dl * eta for dl in th.deltas])


def reduce_at_level(x: GenericSkein, th: Theory | int) -> SkeinVector:
    """Project a generic solid-torus skein onto the level-p module."""
    th = _th(th)
    coeffs = x.z_coefficients(th)
    phis = []
    for lam in th.lambdas:
        acc = th.zero()
        power = th.one()
        for c in coeffs:
            acc = acc + c * power
            power = power * lam
        phis.append(acc)
    return SkeinVector.from_phi(th, phis)


def genus1_pairing(x: SkeinVector, y: SkeinVector) -> Cyc:
    """(x, y) = D * sum x_i conj(y_i): the D-scaled identity-gluing pairing."""
    if x.theory.p != y.theory.p:
        raise ValueError("pairing across different theories")
    th = x.theory
    acc = th.zero()
    for a, b in zip(x.coords, y.coords):
        acc = acc + a * b.conjugate()
    return acc * th.D


def hermitian_pairing(x: SkeinVector, y: SkeinVector) -> Cyc:
    """<x, y> without the D factor."""
    return genus1_pairing(x, y) * x.theory.eta


def lies_in_O(x: Cyc, th: Theory | int) -> bool:
    """Membership in the ring of integers O_p of the theory's coefficient field."""
    th = _th(th)
    if not x.is_integral:
        return False
    if th.kind == ODD and th.p % 4 == 3:
        return x.lies_in(2 * th.p)
    return True
