"""Degree-truncated graded free resolutions over a hypersurface ring."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .linalg import (EchelonSpan, RatMatrix, columns_to_rows, determinant,
                     kernel_basis, sparse_kernel, sparse_rank)
from .multigrade import Multigrading, Pieces, index_of
from .poly import Polynomial, divide, parse_polynomial
from .ring import GradedFreeModule, ModulePresentation


class DegreeBudgetExhausted(RuntimeError):
    pass


@dataclass
class FreeMap:
    """A graded map ``F_src -> F_tgt`` with fine-grading lifts on both sides."""

    target_degrees: Tuple[int, ...]
    source_degrees: Tuple[int, ...]
    columns: List[Dict[int, Polynomial]]
    target_lifts: Tuple[tuple, ...]
    source_lifts: Tuple[tuple, ...]

    @property
    def shape(self):
        return (len(self.target_degrees), len(self.source_degrees))

    def matrix(self, ring) -> List[List[Polynomial]]:
        zero = Polynomial.zero(ring.variables, ring.grading)
        return [[c.get(i, zero) for c in self.columns] for i in range(len(self.target_degrees))]

    def has_unit_entry(self):
        return any(p.weighted_degree() == 0 for c in self.columns for p in c.values())


def _vector_to_column(vec, basis, variables, grading):
    col: Dict[int, dict] = {}
    for k, c in vec.items():
        j, exp = basis[k]
        col.setdefault(j, {})[exp] = c
    return {j: Polynomial(t, variables, grading) for j, t in col.items()}


def first_ranks(M: ModulePresentation, pieces: Pieces, tl, sl, lo, hi):
    """Rank of the presentation map on every (degree, class) piece; also checks minimality."""
    ranks = {}
    minimal = True
    degs0, degs1 = M.F0.generator_degrees, M.F1.generator_degrees
    order = sorted(range(len(degs1)), key=lambda j: degs1[j])
    for ell in range(lo, hi + 1):
        for cls in pieces.classes(degs0, tl, ell):
            tgt = pieces.basis(degs0, tl, ell, cls)
            src = pieces.basis(degs1, sl, ell, cls)
            if not src:
                continue
            idx = index_of(tgt)
            # lower-degree generators first, so redundant same-degree relations show up
            src.sort(key=lambda b: (degs1[b[0]] == ell, order.index(b[0])))
            span = EchelonSpan()
            for b, v in zip(src, pieces.image_columns(M.columns, src, idx)):
                grew = span.add(v)
                if degs1[b[0]] == ell and not grew:
                    minimal = False
            if span.rank:
                ranks[(ell, cls)] = span.rank
    return ranks, minimal


def syzygy_step(pieces: Pieces, dmap: FreeMap, ranks: Dict, lo: int, hi: int,
                previous: Optional[FreeMap] = None) -> Tuple[FreeMap, Dict]:
    """Minimal generators of ``ker dmap`` in degrees ``lo..hi``.

    ``ranks`` gives the rank of ``dmap`` on each (degree, class) piece.
    ``previous`` holds syzygy generators already found below ``lo``.
    Returns the map onto the kernel and its ranks per piece.
    """
    ring = pieces.ring
    tdeg = dmap.source_degrees
    tlift = dmap.source_lifts
    if previous is None:
        new_deg: List[int] = []
        new_lift: List[tuple] = []
        new_cols: List[Dict[int, Polynomial]] = []
    else:
        new_deg, new_lift, new_cols = list(previous.source_degrees), list(previous.source_lifts), list(previous.columns)
    out_ranks = {}
    for ell in range(lo, hi + 1):
        for cls in sorted(pieces.classes(tdeg, tlift, ell)):
            m = pieces.dim(tdeg, tlift, ell, cls)
            k = m - ranks.get((ell, cls), 0)
            if k <= 0:
                continue
            tgt = pieces.basis(tdeg, tlift, ell, cls)
            idx = index_of(tgt)
            span = EchelonSpan()
            src = pieces.basis(new_deg, new_lift, ell, cls)
            if src:
                for v in pieces.image_columns(new_cols, src, idx):
                    span.add(v)
                    if span.rank >= k:
                        break
            if span.rank < k:
                below = pieces.basis(dmap.target_degrees, dmap.target_lifts, ell, cls)
                imgs = pieces.image_columns(dmap.columns, tgt, index_of(below))
                for v in sparse_kernel(list(columns_to_rows(imgs).values()), m):
                    if span.add(v):
                        new_cols.append(_vector_to_column(v, tgt, ring.variables, ring.grading))
                        new_deg.append(ell)
                        new_lift.append(cls)
                        if span.rank >= k:
                            break
                if span.rank != k:
                    raise ArithmeticError("kernel dimension mismatch at degree %d" % ell)
            out_ranks[(ell, cls)] = k
    return FreeMap(tdeg, tuple(new_deg), new_cols, tlift, tuple(new_lift)), out_ranks


class TruncatedResolution:
    """``F_E -> ... -> F_1 -> F_0 -> M``, exact in internal degrees ``<= degree_bound``.

    ``maps[i]`` is ``d_{i+1}: F_{i+1} -> F_i``; ``maps[0]`` is the presentation.
    ``bounds[i]`` is the internal degree through which the generators of
    ``F_{i+1}`` (the source of ``maps[i]``) are complete; bounds never increase
    along the resolution.
    """

    def __init__(self, module: ModulePresentation, homological_bound: int, degree_bound: int,
                 grading: Optional[Multigrading] = None):
        if homological_bound < 1:
            raise ValueError("homological bound must be >= 1")
        self.module = module
        self.ring = module.ring
        g, tl, sl = module.lifts(grading)
        self.grading = g
        self.pieces = Pieces(self.ring, g)
        self.maps: List[FreeMap] = [FreeMap(module.F0.generator_degrees, module.F1.generator_degrees,
                                            [dict(c) for c in module.columns], tl, sl)]
        self.ranks: List[Dict] = [{}]
        self.minimal: List[bool] = [True]
        self.bounds: List[int] = [self.lowest_degree - 1]
        self.ensure(homological_bound, degree_bound)

    @property
    def homological_bound(self):
        return len(self.maps)

    @property
    def degree_bound(self):
        """Degree through which every computed step is exact."""
        return min(self.bounds)

    @property
    def lowest_degree(self):
        return min(self.module.F0.generator_degrees, default=0)

    def free_module(self, i) -> GradedFreeModule:
        degs = self.maps[0].target_degrees if i == 0 else self.maps[i - 1].source_degrees
        return GradedFreeModule(self.ring, degs)

    def betti(self):
        return [len(self.maps[0].target_degrees)] + [len(m.source_degrees) for m in self.maps]

    def _grow(self, i, D):
        lo = self.bounds[i] + 1
        if D < lo:
            return
        if i == 0:
            r, minimal = first_ranks(self.module, self.pieces, self.maps[0].target_lifts,
                                     self.maps[0].source_lifts, lo, D)
            self.ranks[0].update(r)
            self.minimal[0] = self.minimal[0] and minimal and not self.maps[0].has_unit_entry()
        else:
            if self.bounds[i - 1] < D:
                raise ValueError("step %d must be grown before step %d" % (i - 1, i))
            fmap, r = syzygy_step(self.pieces, self.maps[i - 1], self.ranks[i - 1], lo, D, self.maps[i])
            self.maps[i] = fmap
            self.ranks[i].update(r)
        self.bounds[i] = D

    def extend_degree(self, D: int, steps: Optional[int] = None):
        """Complete the first ``steps`` maps (default all) through internal degree ``D``."""
        steps = len(self.maps) if steps is None else min(steps, len(self.maps))
        for i in range(steps):
            self._grow(i, D)
        return self

    def ensure(self, homological_bound: int, degree_bound: int):
        """Grow in place so the first ``homological_bound`` maps are complete through ``degree_bound``."""
        self.extend_degree(degree_bound, homological_bound)
        while len(self.maps) < homological_bound:
            i = len(self.maps)
            prev = self.maps[i - 1]
            self.maps.append(FreeMap(prev.source_degrees, (), [], prev.source_lifts, ()))
            self.ranks.append({})
            self.minimal.append(True)
            self.bounds.append(self.lowest_degree - 1)
            self._grow(i, min(degree_bound, self.bounds[i - 1]))
        return self

    def rank_at(self, i, ell, cls):
        return self.ranks[i].get((ell, cls), 0)

    def composition_is_zero(self) -> bool:
        """Check ``d_i o d_{i+1} = 0`` exactly, modulo the equation."""
        ring = self.ring
        for a, b in zip(self.maps, self.maps[1:]):
            for col in b.columns:
                acc: Dict[int, Polynomial] = {}
                for j, p in col.items():
                    for i, q in a.columns[j].items():
                        acc[i] = acc[i] + p * q if i in acc else p * q
                if any(ring.normalize(v) for v in acc.values()):
                    return False
        return True

    def exactness_defects(self, upto: Optional[int] = None):
        """(step, degree) pairs below the bound where homology is nonzero, by direct rank computation."""
        upto = self.degree_bound if upto is None else upto
        bad = []
        P = self.pieces
        for i in range(1, len(self.maps)):
            a, b = self.maps[i - 1], self.maps[i]
            for ell in range(self.lowest_degree, upto + 1):
                for cls in P.classes(a.source_degrees, a.source_lifts, ell):
                    mid = P.basis(a.source_degrees, a.source_lifts, ell, cls)
                    low = P.basis(a.target_degrees, a.target_lifts, ell, cls)
                    top = P.basis(b.source_degrees, b.source_lifts, ell, cls)
                    ra = sparse_rank(P.image_columns(a.columns, mid, index_of(low))) if low else 0
                    rb = sparse_rank(P.image_columns(b.columns, top, index_of(mid))) if top else 0
                    if ra + rb != len(mid):
                        bad.append((i, ell))
        return bad

    def periodicity(self) -> "PeriodicityReport":
        return detect_periodicity(self)

    # serialization

    def to_json(self) -> dict:
        return {
            "version": 1,
            "ring": self.ring.key(),
            "module": self.module.key(),
            "bounds": list(self.bounds),
            "grading": [list(r) for r in self.grading.basis],
            "minimal": list(self.minimal),
            "maps": [{"target_degrees": list(m.target_degrees), "source_degrees": list(m.source_degrees),
                      "target_lifts": [list(x) for x in m.target_lifts],
                      "source_lifts": [list(x) for x in m.source_lifts],
                      "columns": [[[i, str(p)] for i, p in sorted(c.items())] for c in m.columns]}
                     for m in self.maps],
            "ranks": [[[ell, list(cls), r] for (ell, cls), r in sorted(rk.items())] for rk in self.ranks],
        }

    @classmethod
    def from_json(cls, data: dict, module: ModulePresentation) -> "TruncatedResolution":
        if data.get("version") != 1 or data["module"] != module.key() or data["ring"] != module.ring.key():
            raise ValueError("cached resolution does not match this module")
        self = cls.__new__(cls)
        ring = module.ring
        self.module = module
        self.ring = ring
        self.bounds = list(data["bounds"])
        self.grading = Multigrading(ring.nvars, data["grading"])
        self.pieces = Pieces(ring, self.grading)
        self.minimal = list(data["minimal"])
        self.maps = []
        for m in data["maps"]:
            cols = [{i: parse_polynomial(s, ring.grading, ring.variables) for i, s in c} for c in m["columns"]]
            self.maps.append(FreeMap(tuple(m["target_degrees"]), tuple(m["source_degrees"]), cols,
                                     tuple(tuple(x) for x in m["target_lifts"]),
                                     tuple(tuple(x) for x in m["source_lifts"])))
        self.ranks = [{(ell, tuple(c)): r for ell, c, r in rk} for rk in data["ranks"]]
        return self


def resolve(M: ModulePresentation, homological_bound: int, degree_bound: Optional[int] = None,
            grading: Optional[Multigrading] = None) -> TruncatedResolution:
    """Minimal graded free resolution of ``M`` with ``homological_bound`` maps."""
    if degree_bound is None:
        degree_bound = max(M.F0.generator_degrees, default=0) + homological_bound * M.ring.d + M.ring.grading.max_weight
    floor = max(M.F0.generator_degrees, default=0) + homological_bound
    if degree_bound < floor:
        raise DegreeBudgetExhausted("degree bound %d below floor %d; increase it" % (degree_bound, floor))
    return TruncatedResolution(M, homological_bound, degree_bound, grading)


# ------------------------------------------------------------ periodicity

def _mat_mul_ambient(A, B):
    """Product of polynomial matrices (lists of rows) in the polynomial ring."""
    out = []
    for i in range(len(A)):
        row = []
        for j in range(len(B[0]) if B else 0):
            acc = None
            for k in range(len(B)):
                t = A[i][k] * B[k][j]
                acc = t if acc is None else acc + t
            row.append(acc)
        out.append(row)
    return out


def _constant_part_invertible(U, row_degrees, col_degrees):
    """Degree-zero block of a graded matrix is invertible."""
    if len(U) != len(U[0] if U else []):
        return False
    n = len(U)
    entries = []
    for i in range(n):
        for j in range(n):
            p = U[i][j]
            c = p.terms.get((0,) * p.nvars, Fraction(0)) if p else Fraction(0)
            entries.append(c)
    return determinant(RatMatrix(n, n, entries)) != 0


def matrix_factorization_check(ring, A, B, C=None) -> bool:
    """``A*B = f*U`` in the polynomial ring with U a graded unit (and ``B*C`` likewise).

    With ``C`` equivalent to ``A`` this makes ``(A, B)`` a matrix
    factorization after a constant change of basis.
    """
    pairs = [(A, B)] if C is None else [(A, B), (B, C)]
    for P, Q in pairs:
        if not P or not Q or len(P[0]) != len(Q) or len(Q[0]) != len(P):
            return False
    for P, Q in pairs:
        prod = _mat_mul_ambient(P, Q)
        U = []
        for row in prod:
            urow = []
            for p in row:
                q, r = divide(p, ring.f)
                if r:
                    return False
                urow.append(q)
            U.append(urow)
        if not _constant_part_invertible(U, None, None):
            return False
    return True


@dataclass
class PeriodicityReport:
    detected_at: Optional[int]
    twist: int
    pair: Optional[Tuple[List[List[Polynomial]], List[List[Polynomial]]]] = None
    matrix_factorization: bool = False
    note: str = ""

    @property
    def detected(self):
        return self.detected_at is not None


def detect_periodicity(res: TruncatedResolution) -> PeriodicityReport:
    """Earliest step ``i`` (1-based, map ``d_i``) where the tail becomes 2-periodic.

    Criterion: ``d_{i+2}`` has the shape of ``d_i`` twisted by ``d``, is
    equivalent to it by constant invertible base changes, and ``(d_i, d_{i+1})``
    and ``d_{i+1}`` compose to ``f`` times graded units over the polynomial ring.
    """
    ring = res.ring
    d = ring.d
    maps = res.maps
    for i in range(len(maps) - 2):
        a, b, c = maps[i], maps[i + 1], maps[i + 2]
        if not a.columns:
            # zero map: the resolution stopped
            if all(not m.columns for m in maps[i:]):
                return PeriodicityReport(None, d, None, False, "finite resolution: zero from step %d" % (i + 1))
            continue
        if sorted(c.source_degrees) != sorted(g + d for g in a.source_degrees):
            continue
        if sorted(c.target_degrees) != sorted(g + d for g in a.target_degrees):
            continue
        A, B, C = a.matrix(ring), b.matrix(ring), c.matrix(ring)
        if not matrix_factorization_check(ring, A, B, C):
            continue
        if not equivalent_up_to_basis(C, A):
            continue
        return PeriodicityReport(i + 1, d, (A, B), True, "d_%d and d_%d alternate" % (i + 1, i + 2))
    return PeriodicityReport(None, d, None, False, "no periodic tail among the computed steps")


def equivalent_up_to_basis(A, B, tries: int = 20, seed: int = 0):
    """Find constant invertible P, Q with ``P*A = B*Q``; returns (P, Q) or None.

    Matrices are lists of rows of Polynomials over the same variables.
    Only constant changes of basis are searched.
    """
    r = len(A)
    c = len(A[0]) if r else 0
    if len(B) != r or (r and len(B[0]) != c):
        return None
    if r == 0 or c == 0:
        return (RatMatrix.identity(r), RatMatrix.identity(c))
    nP = r * r
    nvar = nP + c * c
    eqs: Dict[tuple, Dict[int, Fraction]] = {}
    for i in range(r):
        for j in range(c):
            for k in range(r):
                for exp, co in A[k][j].terms.items():
                    row = eqs.setdefault((i, j, exp), {})
                    row[i * r + k] = row.get(i * r + k, 0) + co
            for k in range(c):
                for exp, co in B[i][k].terms.items():
                    row = eqs.setdefault((i, j, exp), {})
                    col = nP + k * c + j
                    row[col] = row.get(col, 0) - co
    rows = [{k: v for k, v in e.items() if v} for e in eqs.values()]
    mat = RatMatrix(len(rows), nvar)
    ents = mat.entries
    for i, e in enumerate(rows):
        for k, v in e.items():
            ents[i * nvar + k] = Fraction(v)
    basis = kernel_basis(mat)
    if not basis:
        return None
    rng = random.Random(seed)
    for t in range(tries):
        coeffs = [1 if (t == 0 and len(basis) == 1) else rng.randint(-3, 3) for _ in basis]
        v = [sum(a * b[k] for a, b in zip(coeffs, basis)) for k in range(nvar)]
        P = RatMatrix(r, r, v[:nP])
        Q = RatMatrix(c, c, v[nP:])
        if determinant(P) != 0 and determinant(Q) != 0:
            return (P, Q)
    return None


def matrices_from_strings(ring, rows) -> List[List[Polynomial]]:
    return [[ring.poly(s) for s in row] for row in rows]


def transpose(A):
    return [list(r) for r in zip(*A)] if A else []
