"""Gram matrices of the theta pairing and their sign tests."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .linalg import RatMatrix, determinant, rank
from .series import stable_hilbert
from .tor import ThetaEngine, ThetaOptions


class PairingError(ArithmeticError):
    pass


def expected_sign(n: int):
    """``(-1)^((n+1)/2)`` for odd n, ``"zero"`` for even n."""
    if n % 2 == 0:
        return "zero"
    return -1 if ((n + 1) // 2) % 2 else 1


@dataclass
class SemidefiniteVerdict:
    semidefinite: bool
    sign: int
    witness: Optional[Tuple[Tuple[int, ...], Fraction]] = None
    minors_checked: int = 0

    def __bool__(self):
        return self.semidefinite


def semidefiniteness(matrix, sign: int = 1, bound: int = 12) -> SemidefiniteVerdict:
    """Exact test that ``sign * matrix`` is positive semidefinite.

    Every principal minor is checked; leading principal minors alone do not
    decide semidefiniteness.
    """
    rows = matrix.to_rows() if isinstance(matrix, RatMatrix) else [list(r) for r in matrix]
    m = len(rows)
    if m > bound:
        raise PairingError("%d x %d exceeds the principal-minor bound %d" % (m, m, bound))
    if any(len(r) != m for r in rows):
        raise PairingError("matrix must be square")
    a = [[Fraction(x) * sign for x in r] for r in rows]
    for i in range(m):
        for j in range(m):
            if a[i][j] != a[j][i]:
                raise PairingError("matrix is not symmetric at (%d, %d)" % (i, j))
    count = 0
    for k in range(1, m + 1):
        for idx in combinations(range(m), k):
            sub = RatMatrix(k, k, [a[i][j] for i in idx for j in idx])
            det = determinant(sub)
            count += 1
            if det < 0:
                return SemidefiniteVerdict(False, sign, (idx, det), count)
    return SemidefiniteVerdict(True, sign, None, count)


def classify(matrix, bound: int = 12) -> Tuple[str, Optional[SemidefiniteVerdict]]:
    rows = [list(r) for r in matrix]
    if all(x == 0 for r in rows for x in r):
        return "zero", None
    pos = semidefiniteness(rows, 1, bound)
    if pos:
        return "PSD", pos
    neg = semidefiniteness(rows, -1, bound)
    if neg:
        return "NSD", neg
    return "indefinite", pos


@dataclass
class GramReport:
    names: List[str]
    gram: List[List[int]]
    sign: object
    verdict: str
    expected_holds: bool
    witness: Optional[Tuple[Tuple[int, ...], Fraction]]
    rank: int
    routes_checked: Dict[Tuple[int, int], bool] = field(default_factory=dict)
    details: Dict[Tuple[int, int], dict] = field(default_factory=dict)

    def summary(self) -> dict:
        return {
            "modules": list(self.names),
            "gram": [list(r) for r in self.gram],
            "expected_sign": self.sign,
            "verdict": self.verdict,
            "expected_sign_holds": self.expected_holds,
            "witness": None if self.witness is None else {"indices": list(self.witness[0]),
                                                           "minor": str(self.witness[1])},
            "rank": self.rank,
            "entries": [dict(self.details[k], row=k[0], col=k[1], route_b_agrees=self.routes_checked.get(k))
                        for k in sorted(self.details)],
        }


def gram_matrix(modules: Sequence, engine: Optional[ThetaEngine] = None, route_b: bool = False,
                check_symmetry: bool = True, bound: int = 12) -> GramReport:
    """theta on every ordered pair; symmetry is checked by computing both orders."""
    from .series import theta_route_B
    if not modules:
        raise PairingError("empty module list")
    ring = modules[0].ring
    for M in modules:
        if M.ring != ring:
            raise PairingError("modules live over different rings")
    engine = engine or ThetaEngine()
    m = len(modules)
    g = [[None] * m for _ in range(m)]
    checked = {}
    details = {}
    for i in range(m):
        for j in range(m):
            if j < i and not check_symmetry:
                g[i][j] = g[j][i]
                continue
            res = engine.route_a(modules[i], modules[j])
            g[i][j] = res.value
            details[(i, j)] = res.summary()
            if route_b and ring.grading.is_standard and j >= i:
                theta_route_B(modules[i], modules[j], engine, route_a=res)
                checked[(i, j)] = True
    for i in range(m):
        for j in range(i):
            if g[i][j] != g[j][i]:
                raise PairingError("theta(%s, %s) = %d but theta(%s, %s) = %d"
                                   % (modules[i].name, modules[j].name, g[i][j],
                                      modules[j].name, modules[i].name, g[j][i]))
    sign = expected_sign(ring.n)
    verdict, v = classify(g, bound)
    if sign == "zero":
        holds = verdict == "zero"
        witness = None
    else:
        sv = semidefiniteness(g, sign, bound)
        holds = bool(sv)
        witness = sv.witness
    r = rank(RatMatrix.from_rows(g))
    return GramReport([M.name for M in modules], g, sign, verdict, holds, witness, r, checked, details)


def isotropic_rows_vanish(gram) -> bool:
    """In a semidefinite form, ``g(v, v) = 0`` forces ``g(v, -) = 0``."""
    return all(all(x == 0 for x in row) for i, row in enumerate(gram) if row[i] == 0)


def point_module_gram(d: int, count: int) -> List[List[int]]:
    """The closed form ``1 - d * [i == j]`` for the point modules of a curve of degree d."""
    return [[1 - d * (i == j) for j in range(count)] for i in range(count)]


def curve_degree(M, window: int = 4) -> int:
    """Degree of a module of dimension 2, read from its Hilbert polynomial."""
    _, data = stable_hilbert(M, window)
    if data.m != 2:
        raise PairingError("%s has dimension %d, expected 2 (a curve cone)" % (M.name, data.m))
    deg = data.a[0]
    if deg.denominator != 1:
        raise PairingError("non-integer degree %s" % deg)
    return int(deg)


@dataclass
class BezoutResult:
    intersection: int
    degree_c: int
    degree_d: int
    theta: int

    def summary(self):
        return {"intersection": self.intersection, "deg_C": self.degree_c, "deg_D": self.degree_d,
                "theta": self.theta}


def bezout_defect(C, D, engine: Optional[ThetaEngine] = None, window: int = 4) -> BezoutResult:
    """Intersection number ``(deg C * deg D - theta(C, D)) / d`` of two curves on a surface (n = 3)."""
    ring = C.ring
    if ring.n != 3:
        raise PairingError("intersection numbers need n = 3, got n = %d" % ring.n)
    engine = engine or ThetaEngine(ThetaOptions(window=window))
    dc, dd = curve_degree(C, window), curve_degree(D, window)
    th = engine.route_a(C, D).value
    num = dc * dd - th
    if num % ring.d or num < 0:
        raise PairingError("(%d*%d - %d)/%d is not a non-negative integer" % (dc, dd, th, ring.d))
    return BezoutResult(num // ring.d, dc, dd, th)
