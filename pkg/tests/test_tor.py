import pytest

from thetalab import ModulePresentation, ThetaEngine, ThetaOptions, stabilization_index, theta_route_A, tor_hilbert
from thetalab.tor import CertificationError, TorProfile
from thetalab.resolution import resolve


def test_stabilization_index(nodes, quadric, quadric5, fermat):
    assert [stabilization_index(R) for R in (nodes, fermat, quadric, quadric5)] == [2, 4, 4, 6]


def test_nodes_tor(nodes):
    X = ModulePresentation.cyclic(nodes, "X", ["x"])
    assert tor_hilbert(X, X, 1, 0, 4).as_list() == [0, 1, 0, 0, 0]
    Y = ModulePresentation.cyclic(nodes, "Y", ["y"])
    assert tor_hilbert(X, Y, 1, 0, 4).as_list() == [0, 0, 0, 0, 0]
    assert tor_hilbert(X, Y, 0, 0, 4).as_list() == [1, 0, 0, 0, 0]


def test_nodes_theta(nodes):
    X = ModulePresentation.cyclic(nodes, "X", ["x"])
    Y = ModulePresentation.cyclic(nodes, "Y", ["y"])
    assert theta_route_A(X, X).value == -1
    assert theta_route_A(X, Y).value == 1


def test_quadric_theta(lines, engine):
    r = engine.route_a(lines["xy"], lines["xy"])
    assert r.value == 1 and r.E == 4
    assert r.lengths == {4: 1, 5: 0, 6: 1}
    assert r.periodicity_ok
    assert engine.route_a(lines["xy"], lines["xv"]).value == -1
    assert engine.route_a(lines["xy"], lines["uv"]).value == 1


def test_theta_result_summary(lines, engine):
    s = engine.route_a(lines["xy"], lines["xy"]).summary()
    assert s["route"] == "A" and s["E"] == 4
    assert set(s["certificates"]) >= {"finite_length_4", "finite_length_5", "periodicity"}


def test_tor_profile_certified_range(lines):
    res = resolve(lines["xy"], 7, 9)
    prof = TorProfile(res, lines["xy"])
    assert [prof.length(i) for i in (4, 5, 6)] == [1, 0, 1]
    h = prof.hilbert(4)
    assert h.lo == 4 and h[4] == 1 and all(h[k] == 0 for k in range(5, h.hi + 1))


def test_singular_ring_rejected():
    from thetalab import HypersurfaceRing
    R = HypersurfaceRing(list("xyz"), "x*y*z")
    M = ModulePresentation.cyclic(R, "M", ["x"])
    with pytest.raises(CertificationError, match="isolated singularity"):
        theta_route_A(M, M)


def test_degree_budget_exhausted(lines):
    eng = ThetaEngine(ThetaOptions(degree_bound=5, max_degree=5))
    with pytest.raises(CertificationError):
        eng.route_a(lines["xy"], lines["xy"])


def test_stability_check_option(lines):
    eng = ThetaEngine(ThetaOptions(stability_check=True))
    r = eng.route_a(lines["xy"], lines["xv"])
    assert r.value == -1 and 7 in r.lengths
