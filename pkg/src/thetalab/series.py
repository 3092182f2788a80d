"""Hilbert-series arithmetic and theta through the truncated ring ``Q[t]/(1-t)^n``."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .ring import HilbertFunction, ModulePresentation, hilbert_function


class InconclusiveError(RuntimeError):
    """The Hilbert-polynomial regime was not reached on the computed range."""


class UnsupportedGrading(ValueError):
    pass


# ------------------------------------------------------------- series

class TruncatedSeries:
    """Power series known through ``t^D``: exact Fraction coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        self.coeffs = tuple(Fraction(c) for c in coeffs)

    @property
    def D(self):
        return len(self.coeffs) - 1

    @classmethod
    def zero(cls, D):
        return cls([0] * (D + 1))

    @classmethod
    def one(cls, D):
        return cls([1] + [0] * D)

    @classmethod
    def from_polynomial(cls, coeffs: Sequence, D: int):
        c = list(coeffs)[:D + 1]
        return cls(c + [0] * (D + 1 - len(c)))

    @classmethod
    def from_hilbert(cls, h: HilbertFunction, D: int):
        if h.lo > 0 or h.hi < D:
            raise ValueError("Hilbert function known on [%d, %d], need [0, %d]" % (h.lo, h.hi, D))
        if any(h[ell] for ell in range(h.lo, 0)):
            raise ValueError("negative degrees carry nonzero values; shift first")
        return cls([h[ell] for ell in range(D + 1)])

    @classmethod
    def inverse_power_of_one_minus_t(cls, j: int, D: int):
        """``(1-t)^(-j)`` for ``j >= 0``."""
        return cls([q_poly(j, ell) if j > 0 else (1 if ell == 0 else 0) for ell in range(D + 1)])

    def _check(self, other):
        if self.D != other.D:
            raise ValueError("truncation degrees differ: %d vs %d" % (self.D, other.D))

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coeffs])

    def scale(self, c):
        return TruncatedSeries([a * c for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        D = self.D
        out = [Fraction(0)] * (D + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(D + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def shift(self, k: int):
        """Multiply by ``t^k`` (k >= 0), truncating."""
        return TruncatedSeries(([0] * k + list(self.coeffs))[:self.D + 1])

    def inverse(self):
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("constant term is zero")
        D = self.D
        out = [Fraction(0)] * (D + 1)
        out[0] = 1 / c0
        for k in range(1, D + 1):
            s = sum(self.coeffs[i] * out[k - i] for i in range(1, k + 1))
            out[k] = -s / c0
        return TruncatedSeries(out)

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def first_difference(self, other) -> Optional[int]:
        self._check(other)
        for k, (a, b) in enumerate(zip(self.coeffs, other.coeffs)):
            if a != b:
                return k
        return None

    def __repr__(self):
        return "TruncatedSeries(%s)" % ", ".join(str(c) for c in self.coeffs)


# ------------------------------------------------- q polynomials, differences

def q_poly(j: int, ell: int) -> Fraction:
    """``binomial(ell + j - 1, j - 1)`` as a polynomial in ell; zero for ``j <= 0``."""
    if j <= 0:
        return Fraction(0)
    num = 1
    for k in range(1, j):
        num *= ell + k
    return Fraction(num, factorial(j - 1))


def _as_mapping(values) -> Tuple[int, int, Dict[int, Fraction]]:
    if isinstance(values, HilbertFunction):
        return values.lo, values.hi, {k: Fraction(v) for k, v in values.values.items()}
    if isinstance(values, Mapping):
        keys = sorted(values)
        if not keys:
            return 0, -1, {}
        if keys != list(range(keys[0], keys[-1] + 1)):
            raise ValueError("values must cover a contiguous degree range")
        return keys[0], keys[-1], {k: Fraction(v) for k, v in values.items()}
    vals = list(values)
    return 0, len(vals) - 1, {k: Fraction(v) for k, v in enumerate(vals)}


def finite_difference(values, order: int = 1) -> Dict[int, Fraction]:
    """Iterated backward difference ``q(l) - q(l-1)``; defined from ``lo + order`` on."""
    lo, hi, vals = _as_mapping(values)
    if hi - lo < order:
        raise ValueError("range [%d, %d] too short for order %d" % (lo, hi, order))
    for _ in range(order):
        vals = {ell: vals[ell] - vals[ell - 1] for ell in range(lo + 1, hi + 1)}
        lo += 1
    return vals


@dataclass
class NumeratorData:
    """``H(t) = a_0/(1-t)^m + ... + a_{m-1}/(1-t) + (Laurent polynomial)``."""

    a: Tuple[Fraction, ...]
    m: int
    c: Tuple[Fraction, ...]  # c[j-1] is the coefficient of q_j, j = 1..n
    stable_from: int

    def hilbert_polynomial(self, ell) -> Fraction:
        return sum((cj * q_poly(j + 1, ell) for j, cj in enumerate(self.c)), Fraction(0))

    @property
    def degree(self):
        """Leading coefficient ``a_0`` (multiplicity); zero when ``m == 0``."""
        return self.a[0] if self.m else Fraction(0)


def _interpolate_value(points: List[Tuple[int, Fraction]], x: int) -> Fraction:
    total = Fraction(0)
    for i, (xi, yi) in enumerate(points):
        term = Fraction(yi)
        for j, (xj, _) in enumerate(points):
            if j != i:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


def extract_numerator(h: HilbertFunction, n: int, window: int = 4) -> NumeratorData:
    """Read the Hilbert polynomial off the tail of ``h`` and express it in the q basis.

    The regime is accepted when the n-th differences vanish on the last
    ``window`` degrees.  ``n`` bounds the pole order.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    need = n + window
    if h.hi - h.lo + 1 < need:
        raise InconclusiveError("need at least %d values, have %d; increase range" % (need, h.hi - h.lo + 1))
    start = h.hi - need + 1
    tail = h.restrict(start, h.hi)
    diffs = finite_difference(tail, n)
    if any(diffs.values()):
        raise InconclusiveError("n-th differences do not vanish on [%d, %d]; increase range" % (h.hi - window + 1, h.hi))
    pts = [(ell, Fraction(h[ell])) for ell in range(h.hi - n + 1, h.hi + 1)]
    P = {-s: _interpolate_value(pts, -s) for s in range(n + 1)}
    for ell in range(start, h.hi + 1):
        if _interpolate_value(pts, ell) != h[ell]:
            raise InconclusiveError("interpolated polynomial does not reproduce h at %d" % ell)

    def diff_at_zero(k):
        return sum((((-1) ** s) * comb(k, s) * P[-s] for s in range(k + 1)), Fraction(0))

    dz = [diff_at_zero(k) for k in range(n + 1)]
    c = tuple(dz[j - 1] - dz[j] for j in range(1, n + 1))
    m = max((j for j in range(1, n + 1) if c[j - 1]), default=0)
    a = tuple(c[m - i - 1] for i in range(m))
    return NumeratorData(a, m, c, start)


# ------------------------------------------------------ truncated ring

class TruncRingElem:
    """Element of ``Q[t]/(1-t)^n`` in the basis ``1, u, ..., u^{n-1}``, ``u = 1 - t``."""

    __slots__ = ("b",)

    def __init__(self, b: Sequence):
        self.b = tuple(Fraction(x) for x in b)
        if not self.b:
            raise ValueError("need n >= 1 coefficients")

    @property
    def n(self):
        return len(self.b)

    @classmethod
    def one(cls, n):
        return cls([1] + [0] * (n - 1))

    @classmethod
    def t_power(cls, n, k: int):
        """``t^k`` for any integer k: ``(1-u)^k`` or ``sum_j u^j`` powers for negative k."""
        if k >= 0:
            return cls([(-1) ** j * comb(k, j) for j in range(n)])
        m = -k
        # (1-u)^(-m) = sum_j C(m+j-1, j) u^j
        return cls([comb(m + j - 1, j) for j in range(n)])

    @classmethod
    def from_polynomial(cls, coeffs, n, low: int = 0):
        """Image of ``sum_k coeffs[k] t^(low + k)``."""
        out = cls([0] * n)
        for k, c in enumerate(coeffs):
            if c:
                out = out + cls.t_power(n, low + k).scale(c)
        return out

    def _check(self, other):
        if self.n != other.n:
            raise ValueError("different truncation orders")

    def __add__(self, other):
        self._check(other)
        return TruncRingElem([a + b for a, b in zip(self.b, other.b)])

    def __sub__(self, other):
        self._check(other)
        return TruncRingElem([a - b for a, b in zip(self.b, other.b)])

    def __neg__(self):
        return TruncRingElem([-a for a in self.b])

    def scale(self, c):
        return TruncRingElem([a * c for a in self.b])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        n = self.n
        out = [Fraction(0)] * n
        for i, a in enumerate(self.b):
            if a:
                for j in range(n - i):
                    out[i + j] += a * other.b[j]
        return TruncRingElem(out)

    __rmul__ = __mul__

    def invert(self):
        if self.b[0] == 0:
            raise ZeroDivisionError("not a unit: constant coefficient is zero")
        s = TruncatedSeries(self.b).inverse()
        return TruncRingElem(s.coeffs)

    def __truediv__(self, other):
        return self * other.invert()

    def s_star(self) -> Fraction:
        """The functional sending every ``u^i`` to 1."""
        return sum(self.b, Fraction(0))

    def times_t_power(self, k):
        return self * TruncRingElem.t_power(self.n, k)

    def __eq__(self, other):
        return isinstance(other, TruncRingElem) and self.b == other.b

    def __hash__(self):
        return hash(self.b)

    def __repr__(self):
        return "TruncRingElem(%s)" % ", ".join(str(x) for x in self.b)


def rho_from_numerator(data: NumeratorData, n: int) -> TruncRingElem:
    """``(1-t)^n H(t)`` modulo ``(1-t)^n``: coefficient of ``u^j`` is ``c_{n-j}``."""
    return TruncRingElem([data.c[n - j - 1] for j in range(n)])


def unit_class(ring) -> TruncRingElem:
    """Image of ``1 + t + ... + t^{d-1}``."""
    return TruncRingElem.from_polynomial([1] * ring.d, ring.n)


def _require_standard(ring):
    if not ring.grading.is_standard:
        raise UnsupportedGrading("the truncated-ring route needs the standard grading; "
                                 "use the weighted cover instead")


def stable_hilbert(M: ModulePresentation, window: int = 4, start: Optional[int] = None,
                   max_degree: int = 80) -> Tuple[HilbertFunction, NumeratorData]:
    """Hilbert function of M grown until the polynomial regime is detected."""
    n = M.ring.n
    lo = min(M.F0.generator_degrees, default=0)
    hi = max(M.F0.generator_degrees, default=0) + (start if start is not None else n + window + M.ring.d)
    while True:
        h = hilbert_function(M, lo, hi)
        try:
            return h, extract_numerator(h, n, window)
        except InconclusiveError:
            if hi >= max_degree:
                raise
            hi = min(max_degree, hi + max(4, hi // 2))


def rho_star(M: ModulePresentation, window: int = 4) -> TruncRingElem:
    _require_standard(M.ring)
    _, data = stable_hilbert(M, window)
    return rho_from_numerator(data, M.ring.n)


def theta_from_classes(ring, rho_m: TruncRingElem, rho_n: TruncRingElem, rho_mn: TruncRingElem) -> Fraction:
    d = ring.d
    one = unit_class(ring)
    x = (rho_m / one).scale(d)
    y = (rho_n / one).scale(d)
    xy = (rho_mn / one).scale(d)
    return (x * y - xy.scale(d)).s_star()


def theta_route_B(M: ModulePresentation, N: ModulePresentation, engine=None, route_a=None, **options):
    """theta from the classes of M, N and the alternating sum of Tor_i, i < E, in ``Q[t]/(1-t)^n``.

    If ``route_a`` (a route-A result) is given the two values must agree.
    """
    from .tor import (CertificationError, ThetaEngine, ThetaOptions, ThetaResult,
                      require_isolated_singularity, stabilization_index)
    ring = M.ring
    _require_standard(ring)
    if engine is None:
        engine = ThetaEngine(ThetaOptions(**options))
    opts = engine.options
    notes = []
    if opts.check_singularity:
        require_isolated_singularity(ring)
    n, W = ring.n, opts.window
    E = stabilization_index(ring)
    _, dm = stable_hilbert(M, W)
    _, dn = stable_hilbert(N, W)
    D = engine.initial_degree(M, N, E)
    while True:
        prof = engine.profile(M, N, E, D)
        try:
            tor_data = {i: extract_numerator(prof.hilbert(i), n, W) for i in range(E)}
            break
        except InconclusiveError:
            if D >= opts.max_degree:
                raise CertificationError("Tor Hilbert polynomials not stable by degree %d" % D)
            D = min(opts.max_degree, max(D + 1, int(D * opts.growth)))
    rho_mn = TruncRingElem([0] * n)
    for i, data in tor_data.items():
        r = rho_from_numerator(data, n)
        rho_mn = rho_mn + (r if i % 2 == 0 else -r)
    rho_r = stable_hilbert(ModulePresentation.free(ring, "R"), W)[1]
    one = unit_class(ring)
    if rho_from_numerator(rho_r, n) != one or one.b[0] != ring.d:
        raise ArithmeticError("class of the ring does not match 1 + t + ... + t^(d-1)")
    value = theta_from_classes(ring, rho_from_numerator(dm, n), rho_from_numerator(dn, n), rho_mn)
    if value.denominator != 1:
        raise ArithmeticError("route B produced a non-integer theta: %s" % value)
    out = ThetaResult(int(value), E, "B", degree_bound=prof.res.degree_bound, notes=notes)
    out.certificates["stable_from"] = {str(i): d.stable_from for i, d in tor_data.items()}
    out.certificates["rho_M"] = [str(x) for x in rho_from_numerator(dm, n).b]
    out.certificates["rho_N"] = [str(x) for x in rho_from_numerator(dn, n).b]
    out.certificates["rho_Tor"] = [str(x) for x in rho_mn.b]
    if route_a is not None and route_a.value != out.value:
        raise ArithmeticError("routes disagree: A gives %d, B gives %d" % (route_a.value, out.value))
    return out


# --------------------------------------------------------- identity check

@dataclass
class SeriesIdentityReport:
    passed: bool
    D: int
    lhs: TruncatedSeries
    rhs: TruncatedSeries
    first_mismatch: Optional[int] = None

    def __bool__(self):
        return self.passed


def verify_series_identity(M: ModulePresentation, N: ModulePresentation, D: int = 12, engine=None,
                           **options) -> SeriesIdentityReport:
    """Compare ``sum_{i<E} (-1)^i H_i + (H_E - H_{E+1})/(1 - t^d)`` with ``(1-t)^n H_M H_N / e_R``."""
    from .tor import ThetaEngine, ThetaOptions, stabilization_index
    ring = M.ring
    _require_standard(ring)
    for X in (M, N):
        if min(X.F0.generator_degrees, default=0) < 0:
            raise ValueError("generator degrees must be non-negative for power-series comparison")
    if engine is None:
        engine = ThetaEngine(ThetaOptions(**options))
    E = stabilization_index(ring)
    need = D - min(N.F0.generator_degrees, default=0)
    prof = engine.profile(M, N, E + 2, max(need, engine.initial_degree(M, N, E)))
    lhs = TruncatedSeries.zero(D)
    for i in range(E):
        s = TruncatedSeries.from_hilbert(prof.hilbert(i, 0, D), D)
        lhs = lhs + (s if i % 2 == 0 else -s)
    tail = TruncatedSeries.from_hilbert(prof.hilbert(E, 0, D), D) - \
        TruncatedSeries.from_hilbert(prof.hilbert(E + 1, 0, D), D)
    denom = TruncatedSeries.from_polynomial([1] + [0] * (ring.d - 1) + [-1], D)
    lhs = lhs + tail / denom
    hm = TruncatedSeries.from_hilbert(hilbert_function(M, 0, D), D)
    hn = TruncatedSeries.from_hilbert(hilbert_function(N, 0, D), D)
    one_minus_t_n = TruncatedSeries.from_polynomial([(-1) ** k * comb(ring.n, k) for k in range(ring.n + 1)], D)
    e_r = TruncatedSeries.from_polynomial([1] * ring.d, D)
    rhs = one_minus_t_n * hm * hn / e_r
    k = lhs.first_difference(rhs)
    return SeriesIdentityReport(k is None, D, lhs, rhs, k)
