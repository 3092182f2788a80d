"""Exact computation of the theta pairing for graded hypersurface rings."""
from .poly import Grading, Polynomial, parse_polynomial, normal_form, divide
from .ring import (HypersurfaceRing, ModulePresentation, GradedFreeModule, HilbertFunction,
                   degree_basis, hilbert_function, certify_vanishing_tail, check_isolated_singularity)
from .resolution import TruncatedResolution, PeriodicityReport, resolve, syzygy_step
from .tor import (ThetaEngine, ThetaOptions, ThetaResult, TorProfile, stabilization_index,
                  theta_route_A, theta_pair_report, tor_hilbert)
from .series import (TruncatedSeries, TruncRingElem, NumeratorData, q_poly, finite_difference,
                     extract_numerator, rho_star, theta_route_B, verify_series_identity)
from .pairing import GramReport, gram_matrix, semidefiniteness, bezout_defect, point_module_gram
from .weighted import WeightedSetup, build_cover, base_change, theta_S

__version__ = "0.1.0"

__all__ = [
    "Grading", "Polynomial", "parse_polynomial", "normal_form", "divide",
    "HypersurfaceRing", "ModulePresentation", "GradedFreeModule", "HilbertFunction",
    "degree_basis", "hilbert_function", "certify_vanishing_tail", "check_isolated_singularity",
    "TruncatedResolution", "PeriodicityReport", "resolve", "syzygy_step",
    "ThetaEngine", "ThetaOptions", "ThetaResult", "TorProfile", "stabilization_index",
    "theta_route_A", "theta_pair_report", "tor_hilbert",
    "TruncatedSeries", "TruncRingElem", "NumeratorData", "q_poly", "finite_difference",
    "extract_numerator", "rho_star", "theta_route_B", "verify_series_identity",
    "GramReport", "gram_matrix", "semidefiniteness", "bezout_defect", "point_module_gram",
    "WeightedSetup", "build_cover", "base_change", "theta_S",
]
