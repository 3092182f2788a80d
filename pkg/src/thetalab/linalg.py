"""Exact linear algebra over Q.

Public functions take a :class:`RatMatrix`.  Internally vectors are sparse
dicts ``{index: coefficient}`` and elimination is fraction-free on integer
rows, with each row divided by its content after every update so entries
stay small.  Pivots are always the first nonzero index, so results are
deterministic.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

SparseVec = Dict[int, int]


class RatMatrix:
    """Dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [Fraction(0)] * (rows * cols)
        entries = [Fraction(x) for x in entries]
        if len(entries) != rows * cols:
            raise ValueError("expected %d entries, got %d" % (rows * cols, len(entries)))
        self.entries = entries

    @classmethod
    def from_rows(cls, rows):
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def identity(cls, n):
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def column(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def transpose(self):
        return RatMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def apply(self, v):
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum((self[i, j] * v[j] for j in range(self.cols)), Fraction(0)) for i in range(self.rows)]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        out = []
        for i in range(self.rows):
            for j in range(other.cols):
                out.append(sum((self[i, k] * other[k, j] for k in range(self.cols)), Fraction(0)))
        return RatMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        return isinstance(other, RatMatrix) and (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self):
        return "RatMatrix(%r)" % [[str(x) for x in r] for r in self.to_rows()]

    def sparse_rows(self):
        return [{j: x for j, x in enumerate(self.row(i)) if x} for i in range(self.rows)]

    def sparse_columns(self):
        return [{i: x for i, x in enumerate(self.column(j)) if x} for j in range(self.cols)]


# ------------------------------------------------------------ sparse core

def integerize(vec) -> SparseVec:
    """Scale a sparse rational vector to a primitive integer vector (same span)."""
    den = 1
    for c in vec.values():
        if isinstance(c, Fraction) and c.denominator != 1:
            den = den * c.denominator // gcd(den, c.denominator)
    if den == 1:
        out = {k: int(c) for k, c in vec.items() if c}
    else:
        out = {k: int(c * den) for k, c in vec.items() if c}
    return _primitive(out)


def _primitive(vec: SparseVec) -> SparseVec:
    g = 0
    for c in vec.values():
        g = gcd(g, c)
        if g == 1:
            return vec
    if g > 1:
        return {k: c // g for k, c in vec.items()}
    return vec


def _eliminate(v: SparseVec, p: SparseVec, col: int) -> SparseVec:
    """Return a primitive multiple of ``a*v - b*p`` with the entry at ``col`` cleared."""
    a = p[col]
    b = v[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {k: a * c for k, c in v.items()} if a != 1 else dict(v)
    for k, c in p.items():
        s = out.get(k, 0) - b * c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return _primitive(out)


class EchelonSpan:
    """Incrementally maintained row-echelon basis of a subspace of Q^N."""

    __slots__ = ("pivots",)

    def __init__(self):
        self.pivots: Dict[int, SparseVec] = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vec) -> SparseVec:
        v = integerize(vec)
        pivots = self.pivots
        while v:
            c = min(v)
            p = pivots.get(c)
            if p is None:
                return v
            v = _eliminate(v, p, c)
        return v

    def add(self, vec) -> bool:
        """Add a vector; returns True when it increased the rank."""
        v = self.reduce(vec)
        if not v:
            return False
        c = min(v)
        if v[c] < 0:
            v = {k: -x for k, x in v.items()}
        self.pivots[c] = v
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)


def sparse_rank(vectors: Iterable, stop_at: Optional[int] = None) -> int:
    span = EchelonSpan()
    for v in vectors:
        span.add(v)
        if stop_at is not None and span.rank >= stop_at:
            break
    return span.rank


def sparse_rref(rows: Sequence) -> Tuple[List[int], Dict[int, SparseVec]]:
    """Fraction-free reduced row echelon form.

    Returns (pivot columns in increasing order, {pivot column: integer row}).
    Each row is zero in every other pivot column.
    """
    span = EchelonSpan()
    for r in rows:
        span.add(r)
    piv = sorted(span.pivots)
    red = dict(span.pivots)
    # back substitution, last pivot first
    for idx in range(len(piv) - 1, -1, -1):
        c = piv[idx]
        p = red[c]
        for c2 in piv[:idx]:
            r = red[c2]
            if c in r:
                red[c2] = _eliminate(r, p, c)
    for c in piv:
        r = red[c]
        if r[c] < 0:
            red[c] = {k: -x for k, x in r.items()}
    return piv, red


def sparse_kernel(rows: Sequence, ncols: int) -> List[SparseVec]:
    """Integer basis of {x : A x = 0} where ``rows`` are the rows of A.

    One vector per free column f, supported on f and the pivot columns,
    in increasing order of f.
    """
    piv, red = sparse_rref(rows)
    pivset = set(piv)
    free_cols = [j for j in range(ncols) if j not in pivset]
    # entries of pivot rows in each free column
    by_free: Dict[int, List[Tuple[int, int]]] = {}
    for c in piv:
        r = red[c]
        for k, x in r.items():
            if k != c:
                by_free.setdefault(k, []).append((c, x))
    out = []
    for f in free_cols:
        hits = by_free.get(f, [])
        vec = {f: Fraction(1)}
        for c, x in hits:
            vec[c] = Fraction(-x, red[c][c])
        out.append(integerize(vec))
    return out


def columns_to_rows(columns: Sequence[Dict[int, object]]) -> Dict[int, Dict[int, object]]:
    rows: Dict[int, Dict[int, object]] = {}
    for j, col in enumerate(columns):
        for i, x in col.items():
            rows.setdefault(i, {})[j] = x
    return rows


# ----------------------------------------------------------- public API

def rank(m: RatMatrix) -> int:
    return sparse_rank(m.sparse_rows())


def kernel_basis(m: RatMatrix) -> List[List[Fraction]]:
    """Basis of the right kernel, normalised to 1 at each free variable."""
    piv, red = sparse_rref(m.sparse_rows())
    pivset = set(piv)
    out = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for c in piv:
            r = red[c]
            if f in r:
                v[c] = Fraction(-r[f], r[c])
        out.append(v)
    return out


def in_column_space(m: RatMatrix, v) -> Tuple[bool, Optional[List[Fraction]]]:
    """Decide v in image(m); returns (True, x) with m x = v, or (False, None)."""
    if len(v) != m.rows:
        raise ValueError("dimension mismatch")
    aug = []
    for i, r in enumerate(m.sparse_rows()):
        if v[i]:
            r[m.cols] = Fraction(v[i])
        aug.append(r)
    piv, red = sparse_rref(aug)
    if m.cols in piv:
        return False, None
    x = [Fraction(0)] * m.cols
    for c in piv:
        r = red[c]
        x[c] = Fraction(r.get(m.cols, 0), r[c])
    return True, x


def determinant(m: RatMatrix) -> Fraction:
    """Exact determinant by Bareiss elimination (Fractions cleared first)."""
    n = m.rows
    if n != m.cols:
        raise ValueError("square matrix required")
    if n == 0:
        return Fraction(1)
    den = 1
    for x in m.entries:
        den = den * x.denominator // gcd(den, x.denominator)
    a = [[int(m[i, j] * den) for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], den ** n)
