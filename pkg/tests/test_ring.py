import pytest
from hypothesis import given, settings, strategies as st

from thetalab.ring import (HilbertFunction, HypersurfaceRing, ModulePresentation, PresentationError,
                           RingError, WindowTooSmall, certify_vanishing_tail, check_isolated_singularity,
                           degree_basis, hilbert_function)


def test_degree_basis_nodes(nodes):
    # x*y = 0 leaves only pure powers
    assert sorted(degree_basis(nodes, 2)) == [(0, 2), (2, 0)]
    assert sorted(degree_basis(nodes, 0)) == [(0, 0)]


def test_degree_basis_quadric(quadric):
    assert len(degree_basis(quadric, 2)) == 9
    assert [len(degree_basis(quadric, k)) for k in range(5)] == [1, 4, 9, 16, 25]


def test_degree_basis_weighted(cusp):
    assert [len(degree_basis(cusp, k)) for k in range(9)] == [1, 0, 1, 1, 1, 1, 1, 1, 1]


@pytest.mark.parametrize("eq, variables, weights", [
    ("x*y", "xy", None),
    ("x^3 + y^3 + z^3", "xyz", None),
    ("x*u + y*v + z*w", "xyzuvw", None),
    ("y0^3 + y1^2", ["y0", "y1"], [2, 3]),
    ("a^2*b + c^3", "abc", [3, 3, 3]),
])
def test_ring_hilbert_closed_form(eq, variables, weights):
    R = HypersurfaceRing(list(variables), eq, weights)
    free = ModulePresentation.free(R, "R")
    h = hilbert_function(free, 0, 10)
    assert all(h[k] == R.closed_form_hilbert(k) for k in range(11))


def test_ring_rejects_bad_input():
    with pytest.raises(RingError):
        HypersurfaceRing(["x"], "x^2")
    with pytest.raises(ValueError):
        HypersurfaceRing(["x", "y"], "x^2 + y")


def test_module_presentation_checks(quadric):
    with pytest.raises(PresentationError):
        ModulePresentation(quadric, "bad", [0, 0], [["x", "y^2"]])
    M = ModulePresentation(quadric, "P", [0, 1], [["y", "0"], ["x^2", "u"]])
    assert M.F1.generator_degrees == (1, 2)


def test_hilbert_function_of_ideal_quotient(quadric, lines):
    h = hilbert_function(lines["xy"], 0, 5)
    assert h.as_list() == [1, 2, 3, 4, 5, 6]
    k = ModulePresentation.residue_field(quadric)
    assert hilbert_function(k, -2, 3).as_list() == [0, 0, 1, 0, 0, 0]


@settings(max_examples=20, deadline=None)
@given(st.integers(-3, 3))
def test_twist_shifts_hilbert(lines, j):
    M = lines["xv"]
    h = hilbert_function(M, -4, 6)
    ht = hilbert_function(M.twist(j), -4, 6)
    for ell in range(-4, 7):
        if -4 <= ell - j <= 6:
            assert ht[ell] == h[ell - j]


def test_direct_sum_hilbert(lines):
    a, b = lines["xy"], lines["uv"].twist(1)
    s = a.direct_sum(b)
    assert hilbert_function(s, 0, 5).as_list() == [
        x + y for x, y in zip(hilbert_function(a, 0, 5).as_list(), hilbert_function(b, 0, 5).as_list())]


def test_certify_vanishing_tail():
    h = HilbertFunction({0: 1, 1: 3, 2: 2, 3: 0, 4: 0, 5: 0, 6: 0, 7: 0}, 0, 7)
    cert = certify_vanishing_tail(h, 3, generator_bound=2, window=2)
    assert cert and cert.from_degree == 3
    assert sum(h[k] for k in range(3)) == 6
    # not above the generators
    assert not certify_vanishing_tail(h, 2, generator_bound=2, window=2)
    assert not certify_vanishing_tail(HilbertFunction({k: int(k == 5) for k in range(8)}, 0, 7), 3, 2, 3)
    with pytest.raises(WindowTooSmall):
        certify_vanishing_tail(h, 7, generator_bound=2, window=3)


def test_isolated_singularity_examples(quadric, fermat, cusp, nodes):
    assert check_isolated_singularity(quadric).total_dimension == 1
    assert check_isolated_singularity(fermat).total_dimension == 8
    assert check_isolated_singularity(cusp).total_dimension == 2
    assert check_isolated_singularity(nodes)
    xyz = HypersurfaceRing(list("xyz"), "x*y*z")
    cert = check_isolated_singularity(xyz)
    assert not cert and "not certified" in cert.reason
