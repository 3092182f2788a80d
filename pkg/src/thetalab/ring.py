"""Hypersurface rings, graded free modules and module presentations."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import sparse_rank
from .multigrade import Multigrading, Pieces, assign_lifts, index_of
from .poly import (Grading, Polynomial, PolynomialError, monomials_of_degree,
                   parse_polynomial, reducer_for)


class RingError(ValueError):
    pass


class PresentationError(ValueError):
    pass


def derivative(p: Polynomial, i: int) -> Polynomial:
    terms = {}
    for exp, c in p.terms.items():
        if exp[i]:
            e = list(exp)
            e[i] -= 1
            terms[tuple(e)] = c * exp[i]
    return Polynomial(terms, p.variables, p.grading)


class AmbientRing:
    """The polynomial ring itself, graded by the given weights."""

    f = None
    lead = None

    def __init__(self, variables: Sequence[str], weights: Optional[Sequence[int]] = None):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise RingError("repeated variable names")
        if weights is None:
            weights = (1,) * len(self.variables)
        self.grading = Grading(tuple(weights))
        if len(self.grading.weights) != len(self.variables):
            raise RingError("need one weight per variable")
        self.lattice = Multigrading(len(self.variables))
        self._basis: Dict[int, tuple] = {}

    @property
    def nvars(self):
        return len(self.variables)

    def poly(self, p) -> Polynomial:
        if isinstance(p, Polynomial):
            if p.variables != self.variables:
                raise PolynomialError("polynomial over %r, ring over %r" % (p.variables, self.variables))
            if p.grading != self.grading:
                p = p.with_grading(self.grading)
            return self.normalize(p)
        if isinstance(p, (int, Fraction)):
            return self.normalize(Polynomial.constant(p, self.variables, self.grading))
        return self.normalize(parse_polynomial(str(p), self.grading, self.variables))

    def normalize(self, p: Polynomial) -> Polynomial:
        return p

    def nf(self, exp):
        return {exp: 1}

    def degree_basis(self, ell: int) -> tuple:
        hit = self._basis.get(ell)
        if hit is None:
            hit = self._basis[ell] = tuple(m for m in monomials_of_degree(self.grading.weights, ell)
                                           if self.lead is None or not _divides(self.lead, m))
        return hit

    def closed_form_hilbert(self, ell: int) -> int:
        """dim of the degree-ell piece, from the product formula for the Hilbert series."""
        return _series_coeff(self.grading.weights, ell) - (
            _series_coeff(self.grading.weights, ell - self.d) if self.f is not None else 0)

    def key(self):
        return {"variables": list(self.variables), "weights": list(self.grading.weights),
                "equation": str(self.f) if self.f is not None else None}


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _series_coeff(weights, ell):
    if ell < 0:
        return 0
    if all(w == 1 for w in weights):
        return comb(ell + len(weights) - 1, len(weights) - 1)
    return sum(1 for _ in monomials_of_degree(weights, ell))


class HypersurfaceRing(AmbientRing):
    """``k[x_0..x_n]/(f)`` for a (weighted) homogeneous ``f`` of degree ``d``.

    Elements are kept in normal form: no term divisible by the grevlex
    leading monomial of ``f``.
    """

    def __init__(self, variables: Sequence[str], f, weights: Optional[Sequence[int]] = None):
        super().__init__(variables, weights)
        if len(self.variables) < 2:
            raise RingError("need at least two variables (n >= 1)")
        f = parse_polynomial(f, self.grading, self.variables) if isinstance(f, str) else f.with_grading(self.grading)
        if f.variables != self.variables:
            raise RingError("equation uses variables %r" % (f.variables,))
        if f.is_zero():
            raise RingError("equation is zero")
        if not f.is_homogeneous():
            raise RingError("equation %s is not homogeneous for weights %r" % (f, self.grading.weights))
        self.d = f.weighted_degree()
        if self.d < 1:
            raise RingError("equation is a nonzero constant; the ring is zero")
        self.f = f
        self.n = len(self.variables) - 1
        self.reducer = reducer_for(f)
        self.lead = self.reducer.lead
        self.lattice = Multigrading.from_polynomials(len(self.variables), [f])

    def normalize(self, p: Polynomial) -> Polynomial:
        return self.reducer.normal_form(p)

    def nf(self, exp):
        return self.reducer.monomial(exp)

    def __repr__(self):
        return "HypersurfaceRing(%s; %s; weights=%r)" % (",".join(self.variables), self.f, self.grading.weights)

    def __eq__(self, other):
        return isinstance(other, HypersurfaceRing) and self.key() == other.key()

    def __hash__(self):
        return hash((self.variables, self.grading.weights, str(self.f)))


def degree_basis(ring, ell: int) -> List[tuple]:
    if ell < 0:
        raise ValueError("degree must be non-negative")
    return list(ring.degree_basis(ell))


@dataclass(frozen=True)
class GradedFreeModule:
    ring: object
    generator_degrees: Tuple[int, ...]

    @property
    def rank(self):
        return len(self.generator_degrees)

    def dim(self, ell):
        return sum(len(self.ring.degree_basis(ell - g)) for g in self.generator_degrees if ell - g >= 0)


class ModulePresentation:
    """A graded module given as the cokernel of ``F1 -> F0``.

    ``columns[j]`` is the image of the j-th generator of F1, stored sparsely
    as ``{row: Polynomial}``.  Entries are reduced modulo the equation.
    """

    def __init__(self, ring, name: str, degrees: Sequence[int], columns, source_degrees=None):
        self.ring = ring
        self.name = name
        degrees = tuple(int(g) for g in degrees)
        cols = []
        for j, col in enumerate(columns):
            if isinstance(col, dict):
                items = col.items()
            else:
                col = list(col)
                if len(col) != len(degrees):
                    raise PresentationError("%s: column %d has %d entries, expected %d"
                                            % (name, j, len(col), len(degrees)))
                items = enumerate(col)
            clean = {}
            for i, p in items:
                if not 0 <= i < len(degrees):
                    raise PresentationError("%s: row index %d out of range" % (name, i))
                p = ring.poly(p)
                if p:
                    clean[i] = p
            cols.append(clean)
        sdeg = []
        for j, col in enumerate(cols):
            want = None if source_degrees is None else int(source_degrees[j])
            for i, p in sorted(col.items()):
                if not p.is_homogeneous():
                    raise PresentationError("%s: entry (%d,%d) = %s is not homogeneous" % (name, i, j, p))
                g = degrees[i] + p.weighted_degree()
                if want is None:
                    want = g
                elif g != want:
                    raise PresentationError("%s: column %d is not homogeneous (degrees %d and %d)"
                                            % (name, j, want, g))
            if want is None:
                raise PresentationError("%s: zero column %d needs an explicit degree" % (name, j))
            sdeg.append(want)
        self.columns: Tuple[Dict[int, Polynomial], ...] = tuple(cols)
        self.F0 = GradedFreeModule(ring, degrees)
        self.F1 = GradedFreeModule(ring, tuple(sdeg))
        self._lifts = None

    # constructors

    @classmethod
    def cyclic(cls, ring, name, generators, degree=0):
        """``R(-degree)/(generators)``."""
        gens = [ring.poly(g) for g in generators]
        gens = [g for g in gens if g]
        return cls(ring, name, [degree], [[g] for g in gens])

    @classmethod
    def free(cls, ring, name, degrees=(0,)):
        return cls(ring, name, degrees, [])

    @classmethod
    def residue_field(cls, ring, name="k"):
        return cls.cyclic(ring, name, ring.variables)

    def direct_sum(self, other: "ModulePresentation", name=None) -> "ModulePresentation":
        r = self.F0.rank
        cols = [dict(c) for c in self.columns] + [{i + r: p for i, p in c.items()} for c in other.columns]
        return ModulePresentation(self.ring, name or "%s+%s" % (self.name, other.name),
                                  self.F0.generator_degrees + other.F0.generator_degrees, cols,
                                  self.F1.generator_degrees + other.F1.generator_degrees)

    def twist(self, j: int, name=None) -> "ModulePresentation":
        """The module ``M(-j)``: every generator degree raised by ``j``."""
        return ModulePresentation(self.ring, name or "%s(-%d)" % (self.name, j),
                                  [g + j for g in self.F0.generator_degrees], self.columns,
                                  [g + j for g in self.F1.generator_degrees])

    def renamed(self, name):
        return ModulePresentation(self.ring, name, self.F0.generator_degrees, self.columns,
                                  self.F1.generator_degrees)

    # views

    @property
    def matrix(self) -> List[List[Polynomial]]:
        """Rows indexed by F0 generators, columns by F1 generators."""
        zero = Polynomial.zero(self.ring.variables, self.ring.grading)
        return [[c.get(i, zero) for c in self.columns] for i in range(self.F0.rank)]

    def key(self):
        return {"degrees": list(self.F0.generator_degrees),
                "source_degrees": list(self.F1.generator_degrees),
                "columns": [[[i, str(p)] for i, p in sorted(c.items())] for c in self.columns]}

    def lifts(self, grading: Optional[Multigrading] = None):
        """(grading, F0 lifts, F1 lifts) making every entry homogeneous for the fine grading."""
        if grading is None:
            if self._lifts is None:
                self._lifts = self._assign(self.ring.lattice)
            return self._lifts
        return self._assign(grading)

    def _assign(self, grading):
        grading = grading.coarsen_by_polynomials([p for c in self.columns for p in c.values()])
        return assign_lifts(grading, self.F0.rank, self.columns)

    def __repr__(self):
        return "ModulePresentation(%r, degrees=%r, %d relations)" % (
            self.name, self.F0.generator_degrees, len(self.columns))


@dataclass
class HilbertFunction:
    values: Dict[int, int]
    lo: int
    hi: int

    def __post_init__(self):
        for ell in range(self.lo, self.hi + 1):
            self.values.setdefault(ell, 0)

    def __getitem__(self, ell):
        if not self.lo <= ell <= self.hi:
            raise KeyError("degree %d outside computed range [%d, %d]" % (ell, self.lo, self.hi))
        return self.values[ell]

    @property
    def computed_range(self):
        return (self.lo, self.hi)

    def as_list(self):
        return [self.values[ell] for ell in range(self.lo, self.hi + 1)]

    def total(self):
        return sum(self.values.values())

    def shift(self, j):
        """Hilbert function of the twist by ``j`` (value at ell moves to ell + j)."""
        return HilbertFunction({ell + j: v for ell, v in self.values.items()}, self.lo + j, self.hi + j)

    def restrict(self, lo, hi):
        return HilbertFunction({ell: self.values[ell] for ell in range(lo, hi + 1)}, lo, hi)


def cokernel_dims(pieces: Pieces, degrees, lifts, columns, src_degrees, src_lifts, ell) -> int:
    total = 0
    for cls in pieces.classes(degrees, lifts, ell):
        tgt = pieces.basis(degrees, lifts, ell, cls)
        src = pieces.basis(src_degrees, src_lifts, ell, cls)
        if src:
            vecs = pieces.image_columns(columns, src, index_of(tgt))
            total += len(tgt) - sparse_rank(vecs, stop_at=len(tgt))
        else:
            total += len(tgt)
    return total


def hilbert_function(M: ModulePresentation, lo: int, hi: int) -> HilbertFunction:
    grading, tl, sl = M.lifts()
    pieces = Pieces(M.ring, grading)
    vals = {}
    for ell in range(lo, hi + 1):
        vals[ell] = cokernel_dims(pieces, M.F0.generator_degrees, tl, M.columns,
                                  M.F1.generator_degrees, sl, ell)
    return HilbertFunction(vals, lo, hi)


class WindowTooSmall(ValueError):
    pass


@dataclass
class TailCertificate:
    certified: bool
    from_degree: int
    window: int
    reason: str = ""

    def __bool__(self):
        return self.certified


def certify_vanishing_tail(h: HilbertFunction, from_degree: int, generator_bound: int,
                           window: int = 1) -> TailCertificate:
    """Certify ``h(ell) = 0`` for every ``ell >= from_degree``.

    Valid for a module generated in degrees ``<= generator_bound`` over a ring
    generated in degrees ``<= window``: a run of ``window`` zeros above the
    generators propagates upward.
    """
    need_hi = from_degree + window - 1
    if h.hi < need_hi or h.lo > from_degree:
        raise WindowTooSmall("need values on [%d, %d], have [%d, %d]" % (from_degree, need_hi, h.lo, h.hi))
    if from_degree <= generator_bound:
        return TailCertificate(False, from_degree, window, "start %d does not exceed generator degree %d"
                               % (from_degree, generator_bound))
    for ell in range(from_degree, need_hi + 1):
        if h[ell]:
            return TailCertificate(False, from_degree, window, "nonzero value %d in degree %d" % (h[ell], ell))
    return TailCertificate(True, from_degree, window, "window of %d zeros" % window)


def first_vanishing_tail(h: HilbertFunction, generator_bound: int, window: int) -> TailCertificate:
    """Earliest certified vanishing start inside the computed range, if any."""
    start = max(h.lo, generator_bound + 1)
    for s in range(start, h.hi - window + 2):
        cert = certify_vanishing_tail(h, s, generator_bound, window)
        if cert:
            return cert
    return TailCertificate(False, h.hi + 1, window, "no vanishing window inside [%d, %d]" % (h.lo, h.hi))


@dataclass
class SingularityCertificate:
    certified: bool
    total_dimension: Optional[int]
    hilbert: HilbertFunction
    budget: int
    reason: str = ""

    def __bool__(self):
        return self.certified


def jacobian_presentation(ring: HypersurfaceRing) -> ModulePresentation:
    amb = AmbientRing(ring.variables, ring.grading.weights)
    gens = [ring.f] + [derivative(ring.f, i) for i in range(ring.nvars)]
    return ModulePresentation.cyclic(amb, "jacobian", gens)


def check_isolated_singularity(ring: HypersurfaceRing, budget: Optional[int] = None) -> SingularityCertificate:
    """Certify that the Jacobian ring ``T/(f, df/dx_i)`` is finite dimensional.

    The default degree budget is a few degrees past the top degree of a
    finite-dimensional quasi-homogeneous Jacobian ring.
    """
    w = ring.grading.max_weight
    if budget is None:
        budget = max(0, sum(ring.d - 2 * e for e in ring.grading.weights)) + 2 * w + 1
    J = jacobian_presentation(ring)
    grading, tl, sl = J.lifts()
    pieces = Pieces(J.ring, grading)
    vals = {}
    for ell in range(0, budget + 1):
        vals[ell] = cokernel_dims(pieces, J.F0.generator_degrees, tl, J.columns,
                                  J.F1.generator_degrees, sl, ell)
        h = HilbertFunction(dict(vals), 0, ell)
        s = ell - w + 1
        if s >= 1:
            cert = certify_vanishing_tail(h, s, 0, w)
            if cert:
                return SingularityCertificate(True, sum(vals[k] for k in range(s)), h.restrict(0, s - 1)
                                              if s >= 1 else h, budget,
                                              "Jacobian ring vanishes from degree %d" % s)
    return SingularityCertificate(False, None, HilbertFunction(vals, 0, budget), budget,
                                  "not certified within degree budget %d" % budget)
