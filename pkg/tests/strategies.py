"""Hypothesis strategies for small random modules over fixed hypersurfaces."""
from hypothesis import strategies as st

from thetalab import HypersurfaceRing, ModulePresentation
from thetalab.poly import Polynomial, monomials_of_degree

THREE_LINES = HypersurfaceRing(["x", "y"], "x^2*y - x*y^2")
QUADRIC = HypersurfaceRing(["x", "y", "u", "v"], "x*u + y*v")


@st.composite
def homogeneous(draw, ring, degree=None):
    if degree is None:
        degree = draw(st.integers(1, 2))
    mons = sorted(monomials_of_degree(ring.grading.weights, degree))
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=3, unique=True))
    coeffs = draw(st.lists(st.integers(-2, 2).filter(bool), min_size=len(chosen), max_size=len(chosen)))
    p = ring.normalize(Polynomial(dict(zip(chosen, coeffs)), ring.variables, ring.grading))
    return p if p else Polynomial.monomial(mons[0], ring.variables, ring.grading)


@st.composite
def cyclic_modules(draw, ring, name="M"):
    gens = draw(st.lists(homogeneous(ring), min_size=1, max_size=2))
    return ModulePresentation.cyclic(ring, name, gens)


rings = st.sampled_from([THREE_LINES, QUADRIC])
