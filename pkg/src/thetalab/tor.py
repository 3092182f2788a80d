"""Graded Tor over a hypersurface and theta through Tor lengths."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .linalg import EchelonSpan
from .multigrade import Pieces, index_of
from .resolution import FreeMap, TruncatedResolution, resolve
from .ring import (HilbertFunction, ModulePresentation, TailCertificate,
                   check_isolated_singularity, first_vanishing_tail)


class CertificationError(RuntimeError):
    """A finite-length or periodicity certificate could not be produced."""


class UncertifiedDegree(ValueError):
    pass


def stabilization_index(ring) -> int:
    """Smallest even integer >= n + 1."""
    e = ring.n + 1
    return e + (e % 2)


def _tensor_map(dmap: FreeMap, G0: Tuple[int, ...], G0_lifts) -> FreeMap:
    """``d (x) 1`` on ``F (x) G0`` with pair index ``a * len(G0) + b``."""
    r = len(G0)

    def degs(ds, ls):
        return (tuple(g + h for g in ds for h in G0),
                tuple(tuple(x + y for x, y in zip(l, m)) for l in ls for m in G0_lifts))

    tdeg, tl = degs(dmap.target_degrees, dmap.target_lifts)
    sdeg, sl = degs(dmap.source_degrees, dmap.source_lifts)
    cols = []
    for col in dmap.columns:
        for b in range(r):
            cols.append({a * r + b: p for a, p in col.items()})
    return FreeMap(tdeg, sdeg, cols, tl, sl)


def _relation_map(F: Tuple[int, ...], F_lifts, N: ModulePresentation, n_lifts0, n_lifts1) -> FreeMap:
    """``1 (x) (G1 -> G0)`` on ``F (x) G1 -> F (x) G0``."""
    G0, G1 = N.F0.generator_degrees, N.F1.generator_degrees
    r = len(G0)
    tdeg = tuple(g + h for g in F for h in G0)
    tl = tuple(tuple(x + y for x, y in zip(l, m)) for l in F_lifts for m in n_lifts0)
    sdeg = tuple(g + h for g in F for h in G1)
    sl = tuple(tuple(x + y for x, y in zip(l, m)) for l in F_lifts for m in n_lifts1)
    cols = []
    for a in range(len(F)):
        for c in N.columns:
            cols.append({a * r + b: p for b, p in c.items()})
    return FreeMap(tdeg, sdeg, cols, tl, sl)


class TorProfile:
    """Hilbert functions of ``Tor_i(M, N)`` from a resolution of M tensored with N."""

    def __init__(self, res: TruncatedResolution, N: ModulePresentation):
        if N.ring is not res.ring and N.ring != res.ring:
            raise ValueError("modules live over different rings")
        self.res = res
        self.N = N
        grading, n0, n1 = N.lifts(res.grading)
        self.grading = grading
        self.pieces = res.pieces if grading == res.grading else Pieces(res.ring, grading)
        self.n_lifts = (n0, n1)
        self._dmaps: Dict[int, FreeMap] = {}
        self._rels: Dict[int, FreeMap] = {}
        self._ranks: Dict[tuple, Tuple[int, int]] = {}
        self.hilbert_functions: Dict[int, HilbertFunction] = {}
        self.certificates: Dict[int, TailCertificate] = {}

    @property
    def n_min_degree(self):
        return min(self.N.F0.generator_degrees, default=0)

    @property
    def n_max_degree(self):
        return max(self.N.F0.generator_degrees, default=0)

    def certified_top(self, i: int) -> int:
        """Highest internal degree where Tor_i is computed exactly."""
        return self.res.bounds[i] + self.n_min_degree

    def free_degrees(self, i):
        res = self.res
        if i == 0:
            return res.maps[0].target_degrees, res.maps[0].target_lifts
        m = res.maps[i - 1]
        return m.source_degrees, m.source_lifts

    def lowest_degree(self, i):
        degs = self.free_degrees(i)[0]
        if not degs or not self.N.F0.generator_degrees:
            return 0
        return min(degs) + self.n_min_degree

    def generator_bound(self, i):
        """Degree bound used for the vanishing-tail certificate of Tor_i."""
        degs = list(self.free_degrees(i)[0])
        if i + 1 <= len(self.res.maps):
            degs += list(self.free_degrees(i + 1)[0])
        return max(degs, default=0) + self.n_max_degree

    def _dmap(self, i) -> FreeMap:
        hit = self._dmaps.get(i)
        if hit is None:
            hit = self._dmaps[i] = _tensor_map(self.res.maps[i - 1], self.N.F0.generator_degrees, self.n_lifts[0])
        return hit

    def _rel(self, i) -> FreeMap:
        hit = self._rels.get(i)
        if hit is None:
            degs, lifts = self.free_degrees(i)
            hit = self._rels[i] = _relation_map(degs, lifts, self.N, *self.n_lifts)
        return hit

    def _combined(self, i, ell, cls) -> Tuple[int, int]:
        """(rank Rel_{i-1}, rank [D_i | Rel_{i-1}]) inside (F_{i-1} (x) G0) at (ell, cls)."""
        key = (i, ell, cls)
        hit = self._ranks.get(key)
        if hit is not None:
            return hit
        P = self.pieces
        D = self._dmap(i)
        R = self._rel(i - 1)
        tgt = P.basis(D.target_degrees, D.target_lifts, ell, cls)
        if not tgt:
            self._ranks[key] = (0, 0)
            return (0, 0)
        idx = index_of(tgt)
        span = EchelonSpan()
        rsrc = P.basis(R.source_degrees, R.source_lifts, ell, cls)
        for v in P.image_columns(R.columns, rsrc, idx):
            span.add(v)
            if span.rank == len(tgt):
                break
        rel = span.rank
        if span.rank < len(tgt):
            dsrc = P.basis(D.source_degrees, D.source_lifts, ell, cls)
            for v in P.image_columns(D.columns, dsrc, idx):
                span.add(v)
                if span.rank == len(tgt):
                    break
        self._ranks[key] = hit = (rel, span.rank)
        return hit

    def tor_dim(self, i, ell) -> int:
        if i + 1 > len(self.res.maps) or self.res.bounds[i] < self.res.lowest_degree:
            raise UncertifiedDegree("resolution has only %d maps; Tor_%d needs %d" % (len(self.res.maps), i, i + 1))
        if ell > self.certified_top(i):
            raise UncertifiedDegree("Tor_%d in degree %d is beyond the certified degree %d"
                                    % (i, ell, self.certified_top(i)))
        P = self.pieces
        A = self._rel(i)
        total = 0
        for cls in P.classes(A.target_degrees, A.target_lifts, ell):
            dim_a = P.dim(A.target_degrees, A.target_lifts, ell, cls)
            if i == 0:
                rel_prev, comb_i = 0, 0
            else:
                rel_prev, comb_i = self._combined(i, ell, cls)
            comb_next = self._combined(i + 1, ell, cls)[1]
            total += dim_a - comb_i + rel_prev - comb_next
        return total

    def hilbert(self, i, lo=None, hi=None) -> HilbertFunction:
        lo = self.lowest_degree(i) if lo is None else lo
        hi = self.certified_top(i) if hi is None else hi
        old = self.hilbert_functions.get(i)
        vals = {}
        for ell in range(lo, hi + 1):
            if old is not None and old.lo <= ell <= old.hi:
                vals[ell] = old.values[ell]
            else:
                vals[ell] = self.tor_dim(i, ell)
        h = HilbertFunction(vals, lo, hi)
        if old is None or (h.lo <= old.lo and h.hi >= old.hi):
            self.hilbert_functions[i] = h
        return h

    def certify(self, i) -> TailCertificate:
        """Finite length of Tor_i from a run of zeros above the generator bound."""
        h = self.hilbert(i)
        w = self.res.ring.grading.max_weight
        cert = first_vanishing_tail(h, self.generator_bound(i), w)
        self.certificates[i] = cert
        return cert

    def length(self, i) -> int:
        cert = self.certificates.get(i) or self.certify(i)
        if not cert:
            raise CertificationError("Tor_%d: finite length not certified (%s)" % (i, cert.reason))
        return sum(self.hilbert(i, hi=cert.from_degree - 1).as_list())


def tor_hilbert(M: ModulePresentation, N: ModulePresentation, i: int, lo: int, hi: int,
                res: Optional[TruncatedResolution] = None) -> HilbertFunction:
    """Hilbert function of ``Tor_i(M, N)`` on ``lo..hi``."""
    need = hi - min(N.F0.generator_degrees, default=0)
    if res is None:
        res = resolve(M, i + 1, max(need, max(M.F0.generator_degrees, default=0) + i + 1))
    else:
        res.ensure(i + 1, need)
    return TorProfile(res, N).hilbert(i, lo, hi)


@dataclass
class ThetaResult:
    value: int
    E: int
    route: str
    lengths: Dict[int, int] = field(default_factory=dict)
    certificates: Dict[str, object] = field(default_factory=dict)
    degree_bound: Optional[int] = None
    windows: Dict[int, Tuple[int, int]] = field(default_factory=dict)
    periodicity_ok: Optional[bool] = None
    notes: List[str] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "value": self.value, "E": self.E, "route": self.route,
            "lengths": {str(k): v for k, v in sorted(self.lengths.items())},
            "degree_bound": self.degree_bound,
            "windows": {str(k): list(v) for k, v in sorted(self.windows.items())},
            "periodicity": self.periodicity_ok,
            "certificates": {k: (v if isinstance(v, (int, str, bool, list, dict, type(None))) else str(v))
                             for k, v in sorted(self.certificates.items())},
            "notes": list(self.notes),
        }


@dataclass
class ThetaOptions:
    degree_bound: Optional[int] = None
    growth: float = 1.5
    max_degree: int = 60
    window: int = 4
    check_singularity: bool = True
    stability_check: bool = False


class ResolutionStore:
    """In-memory resolutions keyed by module, grown on demand; optionally backed by a disk cache."""

    def __init__(self, cache=None):
        self.cache = cache
        self._res: Dict[tuple, TruncatedResolution] = {}

    @staticmethod
    def _key(M):
        import json
        return json.dumps([M.ring.key(), M.key()], sort_keys=True)

    def get(self, M: ModulePresentation, homological_bound: int, degree_bound: int) -> TruncatedResolution:
        k = self._key(M)
        res = self._res.get(k)
        if res is None and self.cache is not None:
            res = self.cache.load(M, homological_bound, degree_bound)
        if res is None:
            res = resolve(M, homological_bound, max(degree_bound, max(M.F0.generator_degrees, default=0)
                                                  + homological_bound))
            grew = True
        else:
            grew = res.homological_bound < homological_bound or min(res.bounds[:homological_bound]) < degree_bound
            res.ensure(homological_bound, degree_bound)
        self._res[k] = res
        if self.cache is not None and grew:
            self.cache.store(res)
        return res


_SINGULARITY: Dict[tuple, object] = {}


def require_isolated_singularity(ring):
    key = (ring.variables, ring.grading.weights, str(ring.f))
    cert = _SINGULARITY.get(key)
    if cert is None:
        cert = _SINGULARITY[key] = check_isolated_singularity(ring)
    if not cert:
        raise CertificationError("isolated singularity not certified: %s" % cert.reason)
    return cert


class ThetaEngine:
    """Shared state (resolutions, Tor profiles) for many theta computations over one ring."""

    def __init__(self, options: Optional[ThetaOptions] = None, store: Optional[ResolutionStore] = None):
        self.options = options or ThetaOptions()
        self.store = store or ResolutionStore()
        self._profiles: Dict[tuple, TorProfile] = {}

    def initial_degree(self, M, N, E):
        if self.options.degree_bound is not None:
            return self.options.degree_bound
        ring = M.ring
        return max(M.F0.generator_degrees, default=0) + E * ring.d + ring.grading.max_weight

    def profile(self, M, N, homological_bound, degree_bound) -> TorProfile:
        res = self.store.get(M, homological_bound, degree_bound)
        key = (ResolutionStore._key(M), ResolutionStore._key(N))
        prof = self._profiles.get(key)
        if prof is None or prof.res is not res:
            prof = self._profiles[key] = TorProfile(res, N)
        else:
            # piece ranks stay valid as the resolution grows; the maps are new objects
            prof._dmaps.clear()
            prof._rels.clear()
            prof.certificates.clear()
        return prof

    def route_a(self, M: ModulePresentation, N: ModulePresentation) -> ThetaResult:
        ring = M.ring
        opts = self.options
        notes = []
        if opts.check_singularity:
            cert = require_isolated_singularity(ring)
            notes.append("isolated singularity certified (Jacobian ring dimension %d)" % cert.total_dimension)
        else:
            notes.append("isolated-singularity check skipped")
        E = stabilization_index(ring)
        top = E + 2 + (1 if opts.stability_check else 0)
        D = self.initial_degree(M, N, E)
        while True:
            prof = self.profile(M, N, top + 1, D)
            certs = {i: prof.certify(i) for i in range(E, top + 1)}
            if all(certs.values()):
                break
            if D >= opts.max_degree:
                bad = [i for i, c in certs.items() if not c]
                raise CertificationError("finite length of Tor_%s not certified up to degree %d (%s)"
                                         % (bad, D, certs[bad[0]].reason))
            D = min(opts.max_degree, max(D + 1, int(D * opts.growth)))
        lengths = {i: prof.length(i) for i in range(E, top + 1)}
        hE, hE2 = prof.hilbert(E), prof.hilbert(E + 2)
        shift_ok = all(hE2[ell] == (hE[ell - ring.d] if hE.lo <= ell - ring.d <= hE.hi else 0)
                       for ell in range(hE2.lo, hE2.hi + 1)) and \
            all(hE[ell] == 0 for ell in range(max(hE.lo, hE2.hi - ring.d + 1), hE.hi + 1))
        if not shift_ok:
            raise CertificationError("periodicity certificate failed: H(Tor_%d)(t) != t^%d H(Tor_%d)(t)"
                                     % (E + 2, ring.d, E))
        if opts.stability_check and lengths[E + 3] != lengths[E + 1]:
            raise CertificationError("length Tor_%d != length Tor_%d" % (E + 3, E + 1))
        value = lengths[E] - lengths[E + 1]
        out = ThetaResult(value, E, "A", lengths, degree_bound=prof.res.degree_bound, notes=notes)
        for i, c in certs.items():
            out.certificates["finite_length_%d" % i] = "vanishes from degree %d" % c.from_degree
            out.windows[i] = (prof.hilbert(i).lo, c.from_degree - 1)
        out.certificates["periodicity"] = "H(Tor_%d) = t^%d H(Tor_%d)" % (E + 2, ring.d, E)
        out.periodicity_ok = True
        return out


def theta_route_A(M: ModulePresentation, N: ModulePresentation, engine: Optional[ThetaEngine] = None,
                  **options) -> ThetaResult:
    """theta(M, N) = length Tor_E - length Tor_{E+1} with E the first even integer >= n + 1."""
    if engine is None:
        engine = ThetaEngine(ThetaOptions(**options))
    return engine.route_a(M, N)


def rigidity_notes(M, N, result: ThetaResult) -> List[str]:
    notes = []
    if result.value == 0:
        notes.append("rigid pair (theta vanishes)")
        if M.key() == N.key() and M.ring.n % 2 == 1:
            notes.append("module rigid (theta(M, M) = 0 with n odd)")
    return notes


def theta_pair_report(M, N, engine: Optional[ThetaEngine] = None, **options):
    result = theta_route_A(M, N, engine, **options)
    return result, rigidity_notes(M, N, result)
