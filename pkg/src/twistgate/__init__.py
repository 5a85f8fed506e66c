"""Exact-arithmetic toolkit for elliptic-curve reduction data, root numbers,
quadratic twists, and L(E,1) rank-0 evidence over multiquadratic fields."""

from .curve import (
    CurveInvariants,
    WeierstrassModel,
    curve_by_label,
    invariants,
    load_curve_table,
    minimalize_at,
    quadratic_twist,
    short_form,
)
from .descent import (
    LemmaSumResult,
    QuadElt,
    QuadPoint,
    SignedModule,
    lemma_sum_check,
    quad_point_search,
    twist_map,
)
from .fieldsearch import (
    AdmissibleTuple,
    HypothesisReport,
    character_discriminant,
    check_hypothesis,
    is_admissible,
    search,
)
from .galois import SurjectivityReport, serre_check
from .lseries import LValueEstimate, dirichlet_coefficients, l_value_at_1
from .numtheory import Factorization, factor, jacobi, squarefree_part, valuation
from .reduction import ReductionData, ReductionKind, classify, conductor, count_points
from .rootnum import (
    RootNumber,
    global_root_number,
    local_root_number,
    twist_root_number_formula,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibleTuple",
    "CurveInvariants",
    "Factorization",
    "HypothesisReport",
    "LValueEstimate",
    "LemmaSumResult",
    "QuadElt",
    "QuadPoint",
    "ReductionData",
    "ReductionKind",
    "RootNumber",
    "SignedModule",
    "SurjectivityReport",
    "WeierstrassModel",
    "character_discriminant",
    "check_hypothesis",
    "classify",
    "conductor",
    "count_points",
    "curve_by_label",
    "dirichlet_coefficients",
    "factor",
    "global_root_number",
    "invariants",
    "is_admissible",
    "jacobi",
    "l_value_at_1",
    "lemma_sum_check",
    "load_curve_table",
    "local_root_number",
    "minimalize_at",
    "quad_point_search",
    "quadratic_twist",
    "search",
    "serre_check",
    "short_form",
    "squarefree_part",
    "twist_map",
    "twist_root_number_formula",
    "valuation",
]
