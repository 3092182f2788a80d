from fractions import Fraction

import pytest

from thetalab import HypersurfaceRing, ModulePresentation, ThetaEngine, base_change, build_cover, parse_polynomial, theta_S
from thetalab.weighted import CoverError, quotient_length


def test_quotient_length():
    assert quotient_length(["a", "b"], ["a^2", "b^3"]) == 6
    assert quotient_length(["a", "b"], ["a*b", "a^2 + b^2"]) == 4
    with pytest.raises(CoverError):
        quotient_length(["a", "b"], ["a*b"])


def test_cusp_cover(cusp):
    setup = build_cover(cusp)
    assert setup.c == 6
    assert setup.R.f == parse_polynomial("y0^6 + y1^6", setup.R.grading, setup.R.variables)
    assert setup.R.grading.is_standard


def test_base_change(cusp):
    setup = build_cover(cusp)
    M = ModulePresentation.cyclic(cusp, "M", ["y0"])
    MR = base_change(setup, M)
    assert MR.ring == setup.R and MR.F1.generator_degrees == (2,)


def test_cusp_theta_pairs(cusp):
    setup = build_cover(cusp)
    cyc = ModulePresentation.cyclic
    mods = [cyc(cusp, "A", ["y0"]), cyc(cusp, "B", ["y1"]), ModulePresentation.residue_field(cusp)]
    eng_r, eng_s = ThetaEngine(), ThetaEngine()
    for M in mods:
        for N in mods:
            w = theta_S(setup, M, N, eng_r, eng_s)
            assert w.agree and w.via_cover == w.direct == 0


def test_nonzero_weighted_theta():
    S = HypersurfaceRing(["y0", "y1"], "y1^2 - y0^4", [1, 2])
    setup = build_cover(S)
    assert setup.c == 2
    A = ModulePresentation.cyclic(S, "A", ["y1 - y0^2"])
    w = theta_S(setup, A, A)
    assert w.theta_cover == -4 and w.via_cover == Fraction(-2) and w.direct == -2


def test_cover_rejects_singular():
    S = HypersurfaceRing(["a", "b", "c"], "a*b*c", [1, 1, 1])
    with pytest.raises(CoverError):
        build_cover(S)
