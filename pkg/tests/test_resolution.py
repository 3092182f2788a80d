import pytest

from thetalab import ModulePresentation, resolve
from thetalab.resolution import (TruncatedResolution, detect_periodicity, equivalent_up_to_basis,
                                 matrices_from_strings, matrix_factorization_check, transpose)

QUADRIC_PAIR = ([["x", "y"], ["v", "-u"]], [["u", "y"], ["v", "-x"]])
QUADRIC5_PAIR = (
    [["x", "y", "z", "0"], ["v", "-u", "0", "z"], ["-w", "0", "u", "y"], ["0", "-w", "v", "-x"]],
    [["u", "y", "-z", "0"], ["v", "-x", "0", "-z"], ["w", "0", "x", "y"], ["0", "w", "v", "-u"]],
)


def matches_reference(ring, computed, reference):
    """Every reference matrix is a computed one (or its transpose) up to constant base change."""
    for ref in reference:
        R = matrices_from_strings(ring, ref)
        if not any(equivalent_up_to_basis(A, X) for A in computed for X in (R, transpose(R))):
            return False
    return True


def test_nodes_resolution(nodes):
    M = ModulePresentation.cyclic(nodes, "X", ["x"])
    res = resolve(M, 4)
    assert res.betti() == [1, 1, 1, 1, 1]
    assert res.minimal and res.composition_is_zero()
    assert [m.source_degrees for m in res.maps] == [(1,), (2,), (3,), (4,)]


def test_quadric_resolution(quadric, lines):
    res = resolve(lines["xy"], 5, 8)
    assert res.betti() == [1, 2, 2, 2, 2, 2]
    assert res.composition_is_zero()
    assert res.exactness_defects() == []
    rep = detect_periodicity(res)
    assert rep.detected_at == 2 and rep.twist == 2 and rep.matrix_factorization
    assert matches_reference(quadric, rep.pair, QUADRIC_PAIR)


def test_quadric_reference_pair_is_factorization(quadric, quadric5):
    for ring, pair in ((quadric, QUADRIC_PAIR), (quadric5, QUADRIC5_PAIR)):
        A, B = (matrices_from_strings(ring, p) for p in pair)
        assert matrix_factorization_check(ring, A, B)


@pytest.mark.slow
def test_quadric5_periodic_tail(quadric5):
    M = ModulePresentation.cyclic(quadric5, "L", ["x", "y", "z"])
    res = resolve(M, 6)
    assert res.betti()[:5] == [1, 3, 4, 4, 4]
    rep = detect_periodicity(res)
    assert rep.detected_at == 3
    assert matches_reference(quadric5, rep.pair, QUADRIC5_PAIR)


def test_equivalence_rejects_different_matrices(quadric):
    A = matrices_from_strings(quadric, [["x", "y"], ["v", "-u"]])
    B = matrices_from_strings(quadric, [["x", "x"], ["v", "-u"]])
    assert equivalent_up_to_basis(A, B) is None


def test_residue_field_betti(quadric):
    res = resolve(ModulePresentation.residue_field(quadric), 4)
    # coefficients of (1+t)^4 / (1-t^2)
    assert res.betti() == [1, 4, 7, 8, 8]
    assert res.composition_is_zero()


def test_extend_degree_matches_fresh(lines):
    res = resolve(lines["xv"], 4, 6)
    res.extend_degree(10)
    fresh = resolve(lines["xv"], 4, 10)
    assert res.betti() == fresh.betti()
    assert [m.source_degrees for m in res.maps] == [m.source_degrees for m in fresh.maps]


def test_json_roundtrip(lines):
    res = resolve(lines["xy"], 4, 7)
    back = TruncatedResolution.from_json(res.to_json(), lines["xy"])
    assert back.betti() == res.betti()
    assert back.bounds == res.bounds
    assert [m.columns for m in back.maps] == [m.columns for m in res.maps]
