"""Weighted hypersurfaces through their standard-graded power cover."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional, Sequence

from .poly import Grading, Polynomial
from .ring import (AmbientRing, HypersurfaceRing, ModulePresentation,
                   check_isolated_singularity, hilbert_function)
from .tor import ThetaEngine


class CoverError(ArithmeticError):
    pass


@dataclass
class WeightedSetup:
    S: HypersurfaceRing
    R: HypersurfaceRing
    powers: tuple
    c: int

    def substitute(self, p: Polynomial) -> Polynomial:
        return p.substitute_powers(self.powers, self.R.variables, self.R.grading)


def quotient_length(variables, polys) -> int:
    """dim_k of ``k[x]/(polys)`` by degreewise linear algebra, for a finite-length quotient."""
    amb = AmbientRing(variables)
    Q = ModulePresentation.cyclic(amb, "quotient", polys)
    total, ell, zeros = 0, 0, 0
    top = sum(max(p.weighted_degree() for p in Q.columns[j].values()) for j in range(len(Q.columns))) + 1
    while zeros < 1:
        v = hilbert_function(Q, ell, ell)[ell]
        total += v
        zeros = zeros + 1 if v == 0 else 0
        ell += 1
        if ell > top:
            raise CoverError("quotient is not of finite length")
    return total


def build_cover(S: HypersurfaceRing, variables: Optional[Sequence[str]] = None,
                check_singularity: bool = True) -> WeightedSetup:
    """``R = k[x]/(g(x_0^e_0, ..., x_n^e_n))`` with the standard grading."""
    powers = S.grading.weights
    variables = tuple(variables) if variables is not None else S.variables
    std = Grading.standard(len(variables))
    f = S.f.substitute_powers(powers, variables, std)
    R = HypersurfaceRing(variables, f)
    if R.d != S.d:
        raise CoverError("cover equation has degree %d, expected %d" % (R.d, S.d))
    pure = [Polynomial.monomial(tuple(e if k == i else 0 for k in range(len(powers))), variables, std)
            for i, e in enumerate(powers)]
    for exp in f.terms:
        if not any(exp[i] >= e for i, e in enumerate(powers)):
            raise CoverError("term %r of the cover equation is outside (x_i^e_i)" % (exp,))
    c = quotient_length(variables, [f] + pure)
    if c != prod(powers):
        raise CoverError("length %d differs from the product of weights %d" % (c, prod(powers)))
    if check_singularity:
        for ring, label in ((S, "weighted ring"), (R, "cover")):
            cert = check_isolated_singularity(ring)
            if not cert:
                raise CoverError("%s: isolated singularity not certified (%s)" % (label, cert.reason))
    return WeightedSetup(S, R, tuple(powers), c)


def base_change(setup: WeightedSetup, M: ModulePresentation, name: Optional[str] = None) -> ModulePresentation:
    """``M (x)_S R``: substitute into the presentation matrix."""
    if M.ring != setup.S:
        raise CoverError("module is not over the weighted ring")
    cols = [{i: setup.substitute(p) for i, p in c.items()} for c in M.columns]
    return ModulePresentation(setup.R, name or M.name, M.F0.generator_degrees, cols, M.F1.generator_degrees)


@dataclass
class WeightedTheta:
    via_cover: Fraction
    theta_cover: int
    direct: Optional[int]
    c: int
    details: dict = None

    @property
    def agree(self):
        return self.direct is None or self.via_cover == self.direct

    def summary(self):
        return {"theta_S": str(self.via_cover), "theta_R": self.theta_cover, "c": self.c,
                "direct": self.direct, "agree": self.agree, "certificates": self.details or {}}


def theta_S(setup: WeightedSetup, M: ModulePresentation, N: ModulePresentation,
            engine_R: Optional[ThetaEngine] = None, engine_S: Optional[ThetaEngine] = None,
            direct: bool = True) -> WeightedTheta:
    """``theta_R(M (x) R, N (x) R) / c``, compared with a direct computation over S."""
    engine_R = engine_R or ThetaEngine()
    MR, NR = base_change(setup, M), base_change(setup, N)
    cover = engine_R.route_a(MR, NR)
    tr = cover.value
    val = Fraction(tr, setup.c)
    details = {"cover": cover.summary()}
    d = None
    if direct:
        engine_S = engine_S or ThetaEngine()
        res = engine_S.route_a(M, N)
        d = res.value
        details["direct"] = res.summary()
        if d != val:
            raise ArithmeticError("theta over S is %d directly but %s through the cover" % (d, val))
    return WeightedTheta(val, tr, d, setup.c, details)
