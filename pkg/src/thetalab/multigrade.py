"""Fine gradings used to split graded pieces into small blocks.

A hypersurface ``f`` is homogeneous for the grading by ``Z^{n+1} / L`` where
``L`` is spanned by differences of exponent vectors of its terms.  Module
presentations with (multi)homogeneous entries refine this further.  Every
graded-piece computation in the package is done one class of
``Z^{n+1} / L`` at a time, which is exact and usually much smaller than the
whole weighted-degree piece.

Classes are represented by canonical vectors: reduction modulo a Hermite
normal form basis of ``L``.
"""
from __future__ import annotations

from typing import Dict, Iterable, List, Sequence, Tuple

Vec = Tuple[int, ...]


def hermite_rows(vectors: Iterable[Sequence[int]], ncols: int) -> List[List[int]]:
    """Row-style Hermite normal form (pivots positive, echelon) of a generating set."""
    rows = [list(v) for v in vectors if any(v)]
    out = []
    for col in range(ncols):
        nz = [r for r in rows if r[col]]
        if not nz:
            continue
        rest = [r for r in rows if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            keep = [p]
            for r in nz[1:]:
                q = r[col] // p[col]
                r = [a - q * b for a, b in zip(r, p)]
                if r[col]:
                    keep.append(r)
                elif any(r):
                    rest.append(r)
            nz = keep
        p = nz[0]
        if p[col] < 0:
            p = [-a for a in p]
        out.append(p)
        rows = rest
    return out


class Multigrading:
    """The grading group ``Z^nvars / L`` with canonical class representatives."""

    def __init__(self, nvars: int, generators: Iterable[Sequence[int]] = ()):
        self.nvars = nvars
        self.basis = hermite_rows(generators, nvars)
        self._pivots = []
        for row in self.basis:
            pc = next(i for i, a in enumerate(row) if a)
            self._pivots.append((pc, tuple(row)))

    @classmethod
    def from_polynomials(cls, nvars, polys):
        gens = []
        for p in polys:
            exps = list(p.terms)
            for e in exps[1:]:
                gens.append([a - b for a, b in zip(e, exps[0])])
        return cls(nvars, gens)

    def coarsen(self, vectors) -> "Multigrading":
        vectors = [list(v) for v in vectors if any(self.reduce(v))]
        if not vectors:
            return self
        return Multigrading(self.nvars, list(self.basis) + vectors)

    def coarsen_by_polynomials(self, polys) -> "Multigrading":
        gens = []
        for p in polys:
            exps = list(p.terms)
            for e in exps[1:]:
                gens.append([a - b for a, b in zip(e, exps[0])])
        return self.coarsen(gens)

    def join(self, other: "Multigrading") -> "Multigrading":
        return self.coarsen(other.basis)

    def reduce(self, v: Sequence[int]) -> Vec:
        v = list(v)
        for pc, row in self._pivots:
            q = v[pc] // row[pc]
            if q:
                for i in range(pc, len(v)):
                    v[i] -= q * row[i]
        return tuple(v)

    def same_class(self, a, b):
        return self.reduce(a) == self.reduce(b)

    @property
    def key(self):
        return tuple(tuple(r) for r in self.basis)

    def __eq__(self, other):
        return isinstance(other, Multigrading) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return "Multigrading(nvars=%d, relations=%r)" % (self.nvars, self.basis)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def assign_lifts(grading: Multigrading, target_count: int, columns, target_lifts=None):
    """Choose class representatives for the generators of a presented map.

    ``columns[j]`` maps target index -> Polynomial (image of source generator
    j).  Returns ``(grading, target_lifts, source_lifts)``; the grading is
    coarsened as needed until every entry is homogeneous of degree
    ``lift(source) - lift(target)``.
    """
    nv = grading.nvars
    zero = (0,) * nv
    while True:
        tl: List = list(target_lifts) if target_lifts is not None else [None] * target_count
        sl: List = [None] * len(columns)
        # bipartite graph; edge (i, j) carries offset t (any term of entry)
        adj_t: Dict[int, List[Tuple[int, Vec]]] = {}
        adj_s: Dict[int, List[Tuple[int, Vec]]] = {}
        for j, col in enumerate(columns):
            for i, p in col.items():
                if p:
                    t = next(iter(p.terms))
                    adj_t.setdefault(i, []).append((j, t))
                    adj_s.setdefault(j, []).append((i, t))
        conflicts = []
        order = [("t", i) for i in range(target_count) if tl[i] is not None]
        order += [("t", i) for i in range(target_count) if tl[i] is None]
        order += [("s", j) for j in range(len(columns))]
        for kind, idx in order:
            if kind == "t" and tl[idx] is None:
                tl[idx] = zero
            elif kind == "s" and sl[idx] is None:
                sl[idx] = zero
            stack = [(kind, idx)]
            while stack:
                k, x = stack.pop()
                if k == "t":
                    for j, t in adj_t.get(x, ()):
                        want = _add(tl[x], t)
                        if sl[j] is None:
                            sl[j] = want
                            stack.append(("s", j))
                        elif not grading.same_class(sl[j], want):
                            conflicts.append(_sub(sl[j], want))
                else:
                    for i, t in adj_s.get(x, ()):
                        want = _sub(sl[x], t)
                        if tl[i] is None:
                            tl[i] = want
                            stack.append(("t", i))
                        elif not grading.same_class(tl[i], want):
                            conflicts.append(_sub(tl[i], want))
        if not conflicts:
            return grading, tuple(grading.reduce(v) for v in tl), tuple(grading.reduce(v) for v in sl)
        grading = grading.coarsen(conflicts)


class Pieces:
    """Graded pieces of free modules over a ring, one (degree, class) at a time.

    ``ring`` must provide ``degree_basis(ell)``, ``nf(exp)`` and ``grading``
    (the weighted grading).
    """

    def __init__(self, ring, grading: Multigrading):
        self.ring = ring
        self.grading = grading
        self._buckets: Dict[Tuple[int, Vec], Dict[Vec, List[Vec]]] = {}
        self._compiled: Dict[int, tuple] = {}

    def buckets(self, ell: int, lift: Vec) -> Dict[Vec, List[Vec]]:
        hit = self._buckets.get((ell, lift))
        if hit is None:
            red_lift = self.grading.reduce(lift)
            hit = self._buckets.get((ell, red_lift))
            if hit is None:
                hit = {}
                red = self.grading.reduce
                for exp in self.ring.degree_basis(ell):
                    hit.setdefault(red(_add(exp, red_lift)), []).append(exp)
                self._buckets[(ell, red_lift)] = hit
            self._buckets[(ell, lift)] = hit
        return hit

    def classes(self, degrees, lifts, ell) -> set:
        out = set()
        for deg, lift in zip(degrees, lifts):
            if ell - deg >= 0:
                out.update(self.buckets(ell - deg, lift))
        return out

    def basis(self, degrees, lifts, ell, cls) -> List[Tuple[int, Vec]]:
        out = []
        for j, (deg, lift) in enumerate(zip(degrees, lifts)):
            if ell - deg >= 0:
                for exp in self.buckets(ell - deg, lift).get(cls, ()):
                    out.append((j, exp))
        return out

    def dim(self, degrees, lifts, ell, cls) -> int:
        n = 0
        for deg, lift in zip(degrees, lifts):
            if ell - deg >= 0:
                n += len(self.buckets(ell - deg, lift).get(cls, ()))
        return n

    def image_columns(self, columns, src_basis, tgt_index) -> List[Dict[int, object]]:
        """Coordinates of ``x^exp * column_j`` in the target basis, for (j, exp) in src_basis."""
        nf = self.ring.nf
        comp = self._compile(columns)
        out = []
        for j, exp in src_basis:
            vec: Dict[int, object] = {}
            for i, terms in comp[j]:
                for t, c in terms:
                    m = tuple(a + b for a, b in zip(exp, t))
                    for t2, c2 in nf(m).items():
                        r = tgt_index[(i, t2)]
                        s = vec.get(r, 0) + c * c2
                        if s:
                            vec[r] = s
                        else:
                            del vec[r]
            out.append(vec)
        return out


    def _compile(self, columns):
        """Integer-coefficient term lists per column; columns may only be appended to."""
        hit = self._compiled.get(id(columns))
        if hit is None or hit[0] is not columns:
            hit = (columns, [])
            self._compiled[id(columns)] = hit
        comp = hit[1]
        for col in columns[len(comp):]:
            comp.append([(i, [(t, c.numerator if c.denominator == 1 else c) for t, c in p.terms.items()])
                         for i, p in col.items()])
        return comp


def index_of(basis) -> Dict[Tuple[int, Vec], int]:
    return {b: k for k, b in enumerate(basis)}
