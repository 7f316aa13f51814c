"""Exact arithmetic in cyclotomic fields Q(zeta_n) and their integer rings.

An element is stored as an integer coefficient vector on the power basis
``1, z, ..., z^(phi(n)-1)`` of ``Z[zeta_n]`` together with a positive integer
denominator.  Elements with denominator 1 are cyclotomic integers; everything
else is an element of a localization.  Values of different conductors are
combined by embedding both into the least common multiple.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from sympy import cyclotomic_poly, totient

from .linalg import HNFBuilder, solve_consistent

Number = Union[int, Fraction, "Cyc"]


class NotDivisible(ArithmeticError):
    """Raised when an exact division has no solution in Z[zeta_n]."""


class ConductorError(ValueError):
    pass


# ---------------------------------------------------------------------------
# per-conductor tables
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def phi(n: int) -> int:
    return int(totient(n))


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds zeta_n^k on the power basis, for 0 <= k < n."""
    f = phi(n)
    poly = [int(c) for c in cyclotomic_poly(n, polys=True).all_coeffs()]
    low = list(reversed(poly))[:f]  # z^f = -sum low[i] z^i
    rows = []
    cur = [0] * f
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * l for c, l in zip(cur, low)]
    return tuple(rows)


@lru_cache(maxsize=None)
def _units(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)


def _reduce(acc: Sequence[int], n: int) -> tuple[int, ...]:
    """Reduce an exponent-indexed vector (length n, index = power of zeta)."""
    f = phi(n)
    out = list(acc[:f]) if len(acc) >= f else list(acc) + [0] * (f - len(acc))
    table = _power_table(n)
    for k in range(f, len(acc)):
        a = acc[k]
        if a:
            row = table[k]
            for j in range(f):
                if row[j]:
                    out[j] += a * row[j]
    return tuple(out)


def _gcd_all(vals: Iterable[int]) -> int:
    g = 0
    for v in vals:
        g = math.gcd(g, v)
        if g == 1:
            return 1
    return g


# ---------------------------------------------------------------------------
# the element type
# ---------------------------------------------------------------------------

class Cyc:
    """An element ``(sum c_i zeta_n^i) / den`` of Q(zeta_n)."""

    __slots__ = ("n", "c", "den", "_key")

    def __init__(self, n: int, coeffs: Sequence[int], den: int = 1) -> None:
        if n < 1:
            raise ConductorError("conductor must be positive")
        f = phi(n)
        coeffs = tuple(int(x) for x in coeffs)
        if len(coeffs) > f:
            coeffs = _reduce(_fold(coeffs, n), n)
        elif len(coeffs) < f:
            coeffs = coeffs + (0,) * (f - len(coeffs))
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den, coeffs = -den, tuple(-x for x in coeffs)
        if den != 1:
            g = math.gcd(_gcd_all(coeffs), den)
            if g > 1:
                den //= g
                coeffs = tuple(x // g for x in coeffs)
            if not any(coeffs):
                den = 1
        self.n = n
        self.c = coeffs
        self.den = den
        self._key = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_int(cls, a: int, n: int = 1) -> Cyc:
        f = phi(n)
        return cls(n, (a,) + (0,) * (f - 1))

    @classmethod
    def from_rational(cls, a: Fraction | int, n: int = 1) -> Cyc:
        a = Fraction(a)
        f = phi(n)
        return cls(n, (a.numerator,) + (0,) * (f - 1), a.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> Cyc:
        acc = [0] * n
        acc[k % n] = 1
        return cls(n, _reduce(acc, n))

    @classmethod
    def from_exponents(cls, n: int, terms: dict[int, int] | Iterable[tuple[int, int]], den: int = 1) -> Cyc:
        """Build sum a * zeta_n^k from (k, a) pairs (exponents taken mod n)."""
        acc = [0] * n
        items = terms.items() if isinstance(terms, dict) else terms
        for k, a in items:
            acc[k % n] += a
        return cls(n, _reduce(acc, n), den)

    @classmethod
    def coerce(cls, x: Number, n: int = 1) -> Cyc:
        if isinstance(x, Cyc):
            return x
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return cls.from_int(x, n)
        if isinstance(x, Fraction):
            return cls.from_rational(x, n)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyc")

    # -- structure ---------------------------------------------------------
    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.c

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return Fraction(self.c[0], self.den)

    def embed(self, n: int) -> Cyc:
        if n % self.n:
            raise ConductorError(f"conductor {self.n} does not divide {n}")
        if n == self.n:
            return self
        s = n // self.n
        acc = [0] * n
        for i, a in enumerate(self.c):
            if a:
                acc[i * s] += a
        return Cyc(n, _reduce(acc, n), self.den)

    def _lift(self, other: Number) -> tuple[Cyc, Cyc]:
        o = Cyc.coerce(other, self.n) if not isinstance(other, Cyc) else other
        if o.n == self.n:
            return self, o
        m = self.n * o.n // math.gcd(self.n, o.n)
        return self.embed(m), o.embed(m)

    def galois(self, k: int) -> Cyc:
        """The automorphism zeta -> zeta^k (k a unit mod n)."""
        n = self.n
        if math.gcd(k, n) != 1:
            raise ValueError(f"{k} is not a unit modulo {n}")
        acc = [0] * n
        for i, a in enumerate(self.c):
            if a:
                acc[(i * k) % n] += a
        return Cyc(n, _reduce(acc, n), self.den)

    def conjugate(self) -> Cyc:
        return self.galois(-1 % self.n if self.n > 1 else 1)

    conj = conjugate

    def norm(self) -> Fraction:
        """Absolute norm N_{Q(zeta_n)/Q}; an integer for integral elements."""
        prod = Cyc.from_int(1, self.n)
        for k in _units(self.n):
            prod = prod * self.galois(k)
        return prod.to_rational()

    def norm_to_z(self) -> int:
        if not self.is_integral:
            raise ValueError("norm_to_z needs an integral element")
        v = self.norm()
        return int(v)

    def is_unit(self) -> bool:
        """Unit test in Z[zeta_n] (false for non-integral elements)."""
        if not self.is_integral or self.is_zero():
            return False
        return abs(self.norm_to_z()) == 1

    def adjugate(self) -> Cyc:
        """Product of the nontrivial Galois conjugates; x * adj(x) = N(x)."""
        prod = Cyc.from_int(1, self.n)
        for k in _units(self.n):
            if k % self.n != 1 % self.n:
                prod = prod * self.galois(k)
        return prod

    def inverse(self) -> Cyc:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        adj = self.adjugate()
        nrm = (self * adj).to_rational()
        # x^{-1} = adj / N(x)
        scaled = adj * Cyc.from_rational(1 / nrm, self.n)
        return scaled

    def exact_divide(self, y: Number) -> Cyc:
        """Quotient in Z[zeta] (or in the field if either side is non-integral).

        For integral arguments raises :class:`NotDivisible` when no integral
        quotient exists.
        """
        y = Cyc.coerce(y, self.n)
        if y.is_zero():
            raise ZeroDivisionError("exact division by zero")
        q = self * y.inverse()
        if self.is_integral and y.is_integral and not q.is_integral:
            raise NotDivisible(f"{self} is not divisible by {y}")
        return q

    def divides(self, x: Number) -> bool:
        try:
            Cyc.coerce(x, self.n).exact_divide(self)
        except NotDivisible:
            return False
        return True

    # -- subfields -----------------------------------------------------------
    def lies_in(self, m: int) -> bool:
        """True iff the element lies in Q(zeta_m) (m need not divide n)."""
        # Q(zeta_n) meets Q(zeta_m) in Q(zeta_g), the fixed field of k = 1 mod g
        g = math.gcd(m, self.n)
        n = self.n
        for k in _units(n):
            if k % g == 1 % g and self.galois(k) != self:
                return False
        return True

    def restrict(self, m: int) -> Cyc:
        """Rewrite the element with conductor m (requires m | n and membership)."""
        if self.n % m:
            raise ConductorError(f"{m} does not divide {self.n}")
        if m == self.n:
            return self
        if not self.lies_in(m):
            raise ValueError(f"element does not lie in Q(zeta_{m})")
        f = phi(m)
        cols = [Cyc.zeta(m, i).embed(self.n).c for i in range(f)]
        mat = [[Fraction(cols[j][i]) for j in range(f)] for i in range(phi(self.n))]
        rhs = [Fraction(x, self.den) for x in self.c]
        sol = solve_consistent(mat, rhs)
        if sol is None:
            raise ValueError(f"element does not lie in Q(zeta_{m})")
        den = 1
        for s in sol:
            den = den * s.denominator // math.gcd(den, s.denominator)
        return Cyc(m, [int(s * den) for s in sol], den)

    def minimal_conductor(self) -> int:
        cands = sorted(d for d in range(1, self.n + 1) if self.n % d == 0 and d % 4 != 2)
        for d in cands:
            if self.lies_in(d):
                return d
        return self.n

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other: Number) -> Cyc:
        if not isinstance(other, (Cyc, int, Fraction)):
            return NotImplemented
        a, b = self._lift(other)
        if a.den == b.den:
            return Cyc(a.n, [x + y for x, y in zip(a.c, b.c)], a.den)
        return Cyc(a.n, [x * b.den + y * a.den for x, y in zip(a.c, b.c)], a.den * b.den)

    __radd__ = __add__

    def __neg__(self) -> Cyc:
        return Cyc(self.n, [-x for x in self.c], self.den)

    def __pos__(self) -> Cyc:
        return self

    def __sub__(self, other: Number) -> Cyc:
        if not isinstance(other, (Cyc, int, Fraction)):
            return NotImplemented
        return self + (-Cyc.coerce(other, self.n))

    def __rsub__(self, other: Number) -> Cyc:
        return Cyc.coerce(other, self.n) - self

    def __mul__(self, other: Number) -> Cyc:
        if isinstance(other, int):
            return Cyc(self.n, [x * other for x in self.c], self.den)
        if isinstance(other, Fraction):
            return Cyc(self.n, [x * other.numerator for x in self.c], self.den * other.denominator)
        if not isinstance(other, Cyc):
            return NotImplemented
        a, b = self._lift(other)
        n = a.n
        acc = [0] * (2 * len(a.c))
        for i, x in enumerate(a.c):
            if x:
                for j, y in enumerate(b.c):
                    if y:
                        acc[i + j] += x * y
        return Cyc(n, _reduce(_fold(acc, n), n), a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> Cyc:
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError
            return Cyc(self.n, self.c, self.den * other)
        if isinstance(other, Fraction):
            return self * (1 / other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Number) -> Cyc:
        return Cyc.coerce(other, self.n) * self.inverse()

    def __pow__(self, k: int) -> Cyc:
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyc.from_int(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            if not self.is_rational():
                return False
            return Fraction(self.c[0], self.den) == other
        if not isinstance(other, Cyc):
            return NotImplemented
        a, b = self._lift(other)
        return a.den == b.den and a.c == b.c

    def __hash__(self) -> int:
        if self._key is None:
            m = self.minimal_conductor()
            r = self.restrict(m)
            self._key = hash((m, r.c, r.den)) if m > 1 else hash(Fraction(r.c[0], r.den))
        return self._key

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- display -------------------------------------------------------------
    def __repr__(self) -> str:
        return f"Cyc({self.n}, {list(self.c)}" + (f", den={self.den})" if self.den != 1 else ")")

    def __str__(self) -> str:
        terms = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            if i == 0:
                terms.append(str(a))
            else:
                mon = f"z{self.n}" + (f"^{i}" if i > 1 else "")
                terms.append(mon if a == 1 else f"-{mon}" if a == -1 else f"{a}*{mon}")
        s = " + ".join(terms).replace("+ -", "- ") or "0"
        if self.den != 1:
            s = f"({s})/{self.den}"
        return s

    def to_json(self) -> dict:
        d = {"conductor": self.n, "coeffs": list(self.c)}
        if self.den != 1:
            d["den"] = self.den
        return d

    @classmethod
    def from_json(cls, d: dict) -> Cyc:
        return cls(int(d["conductor"]), d["coeffs"], int(d.get("den", 1)))

    def to_complex(self) -> complex:
        n = self.n
        w = complex(math.cos(2 * math.pi / n), math.sin(2 * math.pi / n))
        return sum(a * w ** i for i, a in enumerate(self.c)) / self.den

    def denominator_exponent(self, m: int) -> int:
        """Smallest k with m^k * self integral (None-free: raises if impossible)."""
        k = 0
        x = self
        while not x.is_integral:
            x = x * m
            k += 1
            if k > 64:
                raise ValueError(f"denominator {self.den} is not a divisor of a power of {m}")
        return k


def _fold(acc: Sequence[int], n: int) -> list[int]:
    if len(acc) <= n:
        return list(acc)
    out = [0] * n
    for i, a in enumerate(acc):
        out[i % n] += a
    return out


def zeta(n: int, k: int = 1) -> Cyc:
    return Cyc.zeta(n, k)


def cyc(x: Number, n: int = 1) -> Cyc:
    return Cyc.coerce(x, n)


def norm_to_z(x: Cyc) -> int:
    return x.norm_to_z()


def is_unit(x: Cyc) -> bool:
    return x.is_unit()


def exact_divide(x: Number, y: Number) -> Cyc:
    x = Cyc.coerce(x, y.n if isinstance(y, Cyc) else 1)
    return x.exact_divide(y)


def conjugate(x: Cyc) -> Cyc:
    return x.conjugate()


def embed(x: Cyc, n: int) -> Cyc:
    return x.embed(n)


# ---------------------------------------------------------------------------
# ring homomorphisms
# ---------------------------------------------------------------------------

class RingHom:
    """The ring map Q(zeta_m) -> Q(zeta_n) sending zeta_m to zeta_n^k."""

    __slots__ = ("source", "target", "k", "name")

    def __init__(self, source: int, target: int, k: int, name: str = "") -> None:
        k %= target
        order = target // math.gcd(target, k)
        if order != source:
            raise ValueError(
                f"zeta_{target}^{k} has order {order}, not a primitive {source}-th root")
        self.source, self.target, self.k, self.name = source, target, k, name

    def __call__(self, x: Number) -> Cyc:
        x = Cyc.coerce(x, self.source)
        if x.n != self.source:
            if self.source % x.n == 0:
                x = x.embed(self.source)
            else:
                x = x.restrict(self.source) if x.n % self.source == 0 else x
                if x.n != self.source:
                    raise ConductorError(
                        f"element of conductor {x.n} is outside the domain Q(zeta_{self.source})")
        acc = [0] * self.target
        for i, a in enumerate(x.c):
            if a:
                acc[(i * self.k) % self.target] += a
        return Cyc(self.target, _reduce(acc, self.target), x.den)

    def then_embed(self, n: int) -> RingHom:
        if n % self.target:
            raise ConductorError("target does not divide n")
        return RingHom(self.source, n, self.k * (n // self.target), self.name)

    def __repr__(self) -> str:
        label = f"{self.name}: " if self.name else ""
        return f"RingHom({label}zeta_{self.source} -> zeta_{self.target}^{self.k})"

    def to_json(self) -> dict:
        return {"source": self.source, "target": self.target, "exponent": self.k}


def apply_hom(h: RingHom, x: Number) -> Cyc:
    return h(x)


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

class IdealHNF:
    """An ideal of Z[zeta_n] as a Z-lattice in row Hermite normal form."""

    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Sequence[Sequence[int]]) -> None:
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def from_generators(cls, gens: Sequence[Number], n: int | None = None) -> IdealHNF:
        elems = [g for g in gens if isinstance(g, Cyc)]
        conds = {g.n for g in elems}
        if n is None:
            if len(conds) > 1:
                raise ConductorError(f"mixed conductors {sorted(conds)}")
            n = conds.pop() if conds else 1
        elif any(n % c for c in conds):
            raise ConductorError(f"generators have conductor {conds}, not dividing {n}")
        gens = [g.embed(n) if isinstance(g, Cyc) and g.n != n else g for g in gens]
        f = phi(n)
        b = HNFBuilder(f)
        zeta_n = Cyc.zeta(n)
        for g in gens:
            g = Cyc.coerce(g, n)
            if not g.is_integral:
                raise ValueError(f"generator {g} is not integral")
            if g.is_zero():
                continue
            x = g
            for _ in range(f):
                b.add(x.c)
                if b.is_identity():
                    break
                x = x * zeta_n
            if b.is_identity():
                break
        return cls(n, b.rows())

    @classmethod
    def unit(cls, n: int) -> IdealHNF:
        f = phi(n)
        return cls(n, [tuple(int(i == j) for j in range(f)) for i in range(f)])

    @classmethod
    def zero(cls, n: int) -> IdealHNF:
        return cls(n, [])

    def is_zero(self) -> bool:
        return not self.rows

    def is_unit_ideal(self) -> bool:
        return self == IdealHNF.unit(self.n)

    def generators(self) -> list[Cyc]:
        return [Cyc(self.n, r) for r in self.rows]

    def matrix(self) -> list[list[int]]:
        f = phi(self.n)
        if not self.rows:
            return [[0] * f for _ in range(f)]
        return [list(r) for r in self.rows]

    def norm(self) -> int:
        if len(self.rows) < phi(self.n):
            return 0
        out = 1
        for i, r in enumerate(self.rows):
            out *= r[i]
        return out

    def _check(self, other: IdealHNF) -> None:
        if self.n != other.n:
            raise ConductorError(f"conductor mismatch {self.n} vs {other.n}")

    def __mul__(self, other: IdealHNF) -> IdealHNF:
        self._check(other)
        if self.is_zero() or other.is_zero():
            return IdealHNF.zero(self.n)
        gens = [a * b for a in self.generators() for b in other.generators()]
        return IdealHNF.from_generators(gens, self.n)

    def __add__(self, other: IdealHNF) -> IdealHNF:
        self._check(other)
        return IdealHNF.from_generators(self.generators() + other.generators(), self.n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IdealHNF):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def contains(self, x: Number) -> bool:
        x = Cyc.coerce(x, self.n)
        if x.n != self.n:
            raise ConductorError(f"conductor mismatch {x.n} vs {self.n}")
        if not x.is_integral:
            return False
        b = HNFBuilder(phi(self.n))
        for r in self.rows:
            b.add(r)
        return b.contains(x.c)

    __contains__ = contains

    def contains_ideal(self, other: IdealHNF) -> bool:
        return all(self.contains(g) for g in other.generators())

    def is_zeta_stable(self) -> bool:
        z = Cyc.zeta(self.n)
        return all(self.contains(g * z) for g in self.generators())

    def map(self, h: RingHom, n: int | None = None) -> IdealHNF:
        """Ideal generated by the images of the generators (pushforward)."""
        n = n or h.target
        return IdealHNF.from_generators([h(g).embed(n) for g in self.generators()], n)

    def __repr__(self) -> str:
        if self.is_zero():
            return f"IdealHNF(n={self.n}, zero)"
        return f"IdealHNF(n={self.n}, norm={self.norm()})"

    def to_json(self) -> dict:
        return {"conductor": self.n, "hnf": [list(r) for r in self.rows]}


def ideal_from_generators(gens: Sequence[Number], n: int | None = None) -> IdealHNF:
    return IdealHNF.from_generators(gens, n)


def ideal_mul(a: IdealHNF, b: IdealHNF) -> IdealHNF:
    return a * b


def ideal_eq(a: IdealHNF, b: IdealHNF) -> bool:
    a._check(b)
    return a == b


def ideal_contains(a: IdealHNF, x: Cyc) -> bool:
    return a.contains(x)
