"""Exact linear algebra helpers.

Two flavours live here: integer routines (Hermite normal form, Bareiss
determinant) used for Z-lattices and ideals, and generic Gaussian
elimination over any exact field whose elements support ``+ - * /`` and
comparison with ``0`` (``Fraction`` and :class:`~skein_lattice.cyclotomic.Cyc`
both qualify).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence


class SingularMatrixError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# integer lattices
# ---------------------------------------------------------------------------

def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with g = s*a + t*b = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


class HNFBuilder:
    """Incremental row-style Hermite normal form over Z.

    Rows are kept in echelon form keyed by pivot column.  Vectors are added
    one at a time with :meth:`add`; :meth:`rows` returns the reduced HNF.
    When a modulus ``mod`` is known to lie in the lattice as ``mod * e_i``
    for every ``i`` (full-rank case) entries may be reduced modulo it.
    """

    def __init__(self, ncols: int) -> None:
        self.ncols = ncols
        self._piv: dict[int, list[int]] = {}

    def __len__(self) -> int:
        return len(self._piv)

    @property
    def is_full(self) -> bool:
        return len(self._piv) == self.ncols

    def is_identity(self) -> bool:
        return self.is_full and all(r[c] == 1 for c, r in self._piv.items())

    def add(self, vec: Sequence[int]) -> bool:
        """Insert ``vec``; return True if the lattice grew."""
        v = list(vec)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        grew = False
        for c in range(self.ncols):
            if v[c] == 0:
                continue
            row = self._piv.get(c)
            if row is None:
                if v[c] < 0:
                    v = [-x for x in v]
                self._piv[c] = v
                self._reduce_above(c)
                return True
            a, b = row[c], v[c]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
                continue
            g, s, t = _xgcd(a, b)
            new = [s * x + t * y for x, y in zip(row, v)]
            v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
            self._piv[c] = new
            self._reduce_above(c)
            grew = True
        return grew

    def _reduce_above(self, c: int) -> None:
        # keep entries of the new pivot row small against later pivots
        row = self._piv[c]
        for c2 in range(c + 1, self.ncols):
            r2 = self._piv.get(c2)
            if r2 is None or row[c2] == 0:
                continue
            q = row[c2] // r2[c2]
            if q:
                row = [x - q * y for x, y in zip(row, r2)]
        self._piv[c] = row

    def contains(self, vec: Sequence[int]) -> bool:
        v = list(vec)
        for c in range(self.ncols):
            if v[c] == 0:
                continue
            row = self._piv.get(c)
            if row is None or v[c] % row[c]:
                return False
            q = v[c] // row[c]
            v = [x - q * y for x, y in zip(v, row)]
        return True

    def rows(self) -> list[tuple[int, ...]]:
        cols = sorted(self._piv)
        rows = {c: list(self._piv[c]) for c in cols}
        for i in reversed(range(len(cols))):
            c = cols[i]
            r = rows[c]
            for c2 in cols[i + 1:]:
                r2 = rows[c2]
                q = r[c2] // r2[c2]
                if q:
                    r = [x - q * y for x, y in zip(r, r2)]
            rows[c] = r
        return [tuple(rows[c]) for c in cols]


def hnf(vectors: Iterable[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    b = HNFBuilder(ncols)
    for v in vectors:
        b.add(v)
    return b.rows()


def bareiss_det(m: Sequence[Sequence[Any]]) -> Any:
    """Fraction-free determinant for matrices over an exact integral domain.

    Works for integers and for integral cyclotomic elements; the divisions are
    exact by Sylvester's identity.
    """
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev: Any = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0 * a[0][0]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = _exact_div(num, prev)
        prev = a[k][k]
    return a[-1][-1] if sign > 0 else -a[-1][-1]


def _exact_div(x: Any, y: Any) -> Any:
    if isinstance(x, int) and isinstance(y, int):
        q, r = divmod(x, y)
        assert r == 0
        return q
    if hasattr(x, "exact_divide"):
        return x.exact_divide(y)
    return x / y


# ---------------------------------------------------------------------------
# field elimination
# ---------------------------------------------------------------------------

def _is_zero(x: Any) -> bool:
    return x == 0


def _recip(x: Any) -> Any:
    """1/x, staying exact for plain integers."""
    return Fraction(1, x) if isinstance(x, int) else 1 / x


def rref(m: Sequence[Sequence[Any]]) -> tuple[list[list[Any]], list[int]]:
    """Reduced row echelon form over a field; returns (matrix, pivot columns)."""
    a = [list(r) for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = next((i for i in range(r, rows) if not _is_zero(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = _recip(a[r][c])
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and not _is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def solve(m: Sequence[Sequence[Any]], rhs: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """Solve ``m @ X = rhs`` for square nonsingular ``m`` (rhs given as columns-matrix)."""
    n = len(m)
    k = len(rhs[0]) if rhs else 0
    aug = [list(m[i]) + list(rhs[i]) for i in range(n)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [red[i][n:n + k] for i in range(n)]


def solve_consistent(m: Sequence[Sequence[Any]], rhs: Sequence[Any]) -> list[Any] | None:
    """Solve an (over)determined system ``m x = rhs``; None if inconsistent.

    The solution must be unique (full column rank).
    """
    rows = len(m)
    cols = len(m[0])
    aug = [list(m[i]) + [rhs[i]] for i in range(rows)]
    red, piv = rref(aug)
    if cols in piv:
        return None
    if piv != list(range(cols)):
        raise SingularMatrixError("system does not determine a unique solution")
    return [red[i][cols] for i in range(cols)]


def inverse(m: Sequence[Sequence[Any]], one: Any = 1, zero: Any = 0) -> list[list[Any]]:
    n = len(m)
    ident = [[one if i == j else zero for j in range(n)] for i in range(n)]
    return solve(m, ident)


def det(m: Sequence[Sequence[Any]]) -> Any:
    """Determinant over a field by elimination."""
    a = [list(r) for r in m]
    n = len(a)
    result: Any = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if not _is_zero(a[i][c])), None)
        if piv is None:
            return 0 * a[0][0] if n else 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result = result * a[c][c]
        inv = _recip(a[c][c])
        for i in range(c + 1, n):
            if not _is_zero(a[i][c]):
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> list[list[Any]]:
    bt = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc: Any = 0
            for x, y in zip(row, col):
                acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def transpose(a: Sequence[Sequence[Any]]) -> list[list[Any]]:
    return [list(r) for r in zip(*a)]


def kron(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]],
         mul: Callable[[Any, Any], Any] | None = None) -> list[list[Any]]:
    mul = mul or (lambda x, y: x * y)
    return [[mul(a[i][j], b[k][l]) for j in range(len(a[0])) for l in range(len(b[0]))]
            for i in range(len(a)) for k in range(len(b))]
