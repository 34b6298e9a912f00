"""Exact-arithmetic toolkit for composition operators on one-circuit graphs.

The package classifies composition operators on one-circuit directed graph
spaces (and the related unilateral and tree weighted shifts) by their
m-isometry-type properties, solves the associated completion problems, and
analyzes subnormality of the Cauchy dual -- all in exact rational
arithmetic, with every closed form cross-checkable against an independent
brute-force traversal oracle.
"""

from .exactseq import (
    DIVERGENT,
    EvSeq,
    ExtensionFamily,
    Poly,
    Rational,
    completion_extend,
    forward_difference,
    is_polynomial_of_degree_at_most,
    lagrange_fit,
    poly_eval,
    positivity_on_range,
    tail_series_sum,
)
from .spaces import (
    Branch,
    Circuit,
    CircuitSpace,
    TreeShift,
    UnilateralShift,
    apply_phi,
    dirichlet_shift,
    measure_at,
    preimage,
)
from .radon import PhiDecomposition, h_n, inf_h, norm_sq, phi_decompose, sup_h
from .classify import (
    ContradictionError,
    IsometryReport,
    RngInfReport,
    is_analytic,
    is_completely_hyperexpansive,
    is_m_expansive,
    is_m_isometry_circuit,
    ranginf_dimension,
    shift_is_m_isometry,
    tree_is_m_isometry,
)
from .completion import (
    CircuitFamily,
    CompletionResult,
    ShiftFamily,
    complete_branch_prefix,
    complete_circuit_from_branches,
    complete_circuit_from_circuit,
    complete_shift,
    construct_2_3_isometry,
    reweighted_solution,
)
from .dual import (
    AtomicMeasure,
    MomentPrefix,
    delta_regular,
    dual_moment_closed_form,
    dual_representing_measure,
    dual_weight,
    kernel_condition,
    stieltjes_check,
)
from .spacefile import parse_space, parse_space_file, serialize_space, write_space_file

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
