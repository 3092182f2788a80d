from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from thetalab import ModulePresentation, rho_star, theta_route_B, verify_series_identity
from thetalab.ring import HilbertFunction
from thetalab.series import (InconclusiveError, TruncatedSeries, TruncRingElem, UnsupportedGrading,
                             extract_numerator, finite_difference, q_poly, stable_hilbert, unit_class)


def test_q_poly_values():
    assert [q_poly(1, k) for k in range(4)] == [1, 1, 1, 1]
    assert [q_poly(2, k) for k in range(4)] == [1, 2, 3, 4]
    assert [q_poly(3, k) for k in range(4)] == [1, 3, 6, 10]
    assert q_poly(0, 5) == 0 and q_poly(-2, 5) == 0
    assert q_poly(3, -1) == 0 and q_poly(3, -2) == 0 and q_poly(3, -3) == 1


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 6), st.integers(-10, 10))
def test_q_difference_identity(j, i, ell):
    """The i-th backward difference of q_j is q_{j-i}."""
    lo = ell - i - 1
    vals = {k: q_poly(j, k) for k in range(lo, ell + 1)}
    assert finite_difference(vals, i)[ell] == q_poly(j - i, ell)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(-20, 20))
def test_q_poly_matches_binomial(j, ell):
    if ell >= 0:
        assert q_poly(j, ell) == comb(ell + j - 1, j - 1)


def test_truncated_series_inverse():
    D = 10
    s = TruncatedSeries.from_polynomial([1, -1], D)
    inv = s.inverse()
    assert list(inv.coeffs) == [1] * (D + 1)
    assert list(TruncatedSeries.inverse_power_of_one_minus_t(3, D).coeffs) == [comb(k + 2, 2) for k in range(D + 1)]
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries.from_polynomial([0, 1], D).inverse()


def test_extract_numerator_quadric(quadric, lines):
    _, data = stable_hilbert(lines["xy"])
    assert data.m == 2 and data.a == (1, 0)
    _, data = stable_hilbert(ModulePresentation.free(quadric, "R"))
    assert data.m == 3 and data.a == (2, -1, 0)


def test_extract_numerator_inconclusive():
    h = HilbertFunction({k: k * k for k in range(6)}, 0, 5)
    with pytest.raises(InconclusiveError):
        extract_numerator(h, 1, window=3)
    with pytest.raises(InconclusiveError):
        extract_numerator(h, 2, window=10)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.integers(-5, 5), min_size=n, max_size=n),
    st.lists(st.integers(-9, 9), max_size=4))))
def test_extract_numerator_recovers_q_coefficients(data):
    n, c, noise = data
    lo, hi = 0, len(noise) + n + 6
    vals = {ell: sum(cj * q_poly(j + 1, ell) for j, cj in enumerate(c)) for ell in range(lo, hi + 1)}
    for k, x in enumerate(noise):
        vals[k] += x
    got = extract_numerator(HilbertFunction(vals, lo, hi), n)
    assert list(got.c) == c
    assert all(got.hilbert_polynomial(ell) == vals[ell] for ell in range(len(noise), hi + 1))


def test_rho_star_examples(quadric, nodes, lines):
    assert rho_star(lines["xy"]).b == (0, 1, 0)
    assert rho_star(ModulePresentation.free(quadric, "R")).b == (2, -1, 0)
    assert rho_star(ModulePresentation.cyclic(nodes, "X", ["x"])).b == (1,)
    assert unit_class(quadric) == rho_star(ModulePresentation.free(quadric, "R"))


def test_route_b_needs_standard_grading(cusp):
    M = ModulePresentation.cyclic(cusp, "M", ["y0"])
    with pytest.raises(UnsupportedGrading):
        theta_route_B(M, M)


def test_route_b_values(nodes, lines, engine):
    X = ModulePresentation.cyclic(nodes, "X", ["x"])
    Y = ModulePresentation.cyclic(nodes, "Y", ["y"])
    assert theta_route_B(X, X).value == -1
    assert theta_route_B(X, Y).value == 1
    assert theta_route_B(lines["xy"], lines["xy"], engine).value == 1
    assert theta_route_B(lines["xy"], lines["xv"], engine).value == -1


def test_route_b_cross_check_raises_on_disagreement(lines, engine):
    a = engine.route_a(lines["xy"], lines["xy"])
    a.value = 7
    with pytest.raises(ArithmeticError, match="disagree"):
        theta_route_B(lines["xy"], lines["xy"], engine, route_a=a)


def test_series_identity(lines, engine, nodes):
    rep = verify_series_identity(lines["xy"], lines["xv"], 12, engine)
    assert rep and rep.first_mismatch is None
    X = ModulePresentation.cyclic(nodes, "X", ["x"])
    assert verify_series_identity(X, X, 12)


# truncated ring Q[t]/(1-t)^n

def ring_elems(n):
    return st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4), min_size=n, max_size=n).map(TruncRingElem)


trunc_triples = st.integers(1, 5).flatmap(lambda n: st.tuples(ring_elems(n), ring_elems(n), ring_elems(n)))


@settings(max_examples=40, deadline=None)
@given(trunc_triples)
def test_trunc_ring_axioms(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b).s_star() == a.s_star() + b.s_star()


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(-6, 6), st.integers(-6, 6))
def test_t_powers(n, j, k):
    t = TruncRingElem.t_power
    assert t(n, j) * t(n, k) == t(n, j + k)
    assert t(n, 0) == TruncRingElem.one(n)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(ring_elems))
def test_units_invert(a):
    if a.b[0] != 0:
        assert a * a.invert() == TruncRingElem.one(a.n)
    else:
        with pytest.raises(ZeroDivisionError):
            a.invert()
