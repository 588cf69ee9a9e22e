"""Exact invariants, multiplicities and wobbliness labels for length-two
fixed-point components of Higgs bundle moduli, plus restriction pairings
against full-flag chains.

All arithmetic is exact: sparse Laurent polynomials with arbitrary
precision integer coefficients and rational exponents, kept in factored
form until an expansion is requested.
"""

from .components import (
    ClassificationRecord,
    ComponentDescriptor,
    OutOfScope,
    WeightTable,
    Wobbly,
    WobblyIffNonPolynomial,
    admissible_deltas,
    classification_to_json,
    classify,
    component_with_delta,
    delta_bounds,
    descriptor_from_json,
    descriptor_to_json,
    dim_fixed,
    dim_z,
    enumerate_components,
    generic_h0,
    in_wobbly_divisor_range,
    is_valid,
    make_component,
    toledo_bound_check,
    weight_table,
    wobbly_divisor_range,
)
from .euler import (
    ChainPoint,
    W0_MODES,
    branch_polynomial,
    chainpoint_from_json,
    chainpoint_to_json,
    epsilon,
    fiber_weight,
    infer_mF_rank4,
    m_EF,
    m_FE,
    nonpositivity_check,
    printed_m_EF_rank4,
    rank4_consistency,
    weight_normalized,
)
from .exactpoly import (
    Expansion,
    FactoredExpression,
    SparseLaurent,
    eval_at_one,
    exact_div,
    expand,
    factored_from_json,
    factored_to_json,
    format_factored,
    format_poly,
    is_polynomial,
    poly_from_json,
    poly_to_json,
    q_int,
    q_int_span,
)
from .multiplicity import (
    detection_partitions,
    e_exponent,
    is_mult_polynomial_analytic,
    m_E_closed,
    m_from_weights,
    mult_report_row,
    p_poly,
)
from .selftest import CriterionResult, run_all
from .sweep import SweepConfig, sweep, write_records

__version__ = "0.1.0"

__all__ = [
    "ChainPoint",
    "ClassificationRecord",
    "ComponentDescriptor",
    "CriterionResult",
    "Expansion",
    "FactoredExpression",
    "OutOfScope",
    "SparseLaurent",
    "SweepConfig",
    "W0_MODES",
    "WeightTable",
    "Wobbly",
    "WobblyIffNonPolynomial",
    "admissible_deltas",
    "branch_polynomial",
    "chainpoint_from_json",
    "chainpoint_to_json",
    "classification_to_json",
    "classify",
    "component_with_delta",
    "delta_bounds",
    "descriptor_from_json",
    "descriptor_to_json",
    "detection_partitions",
    "dim_fixed",
    "dim_z",
    "e_exponent",
    "enumerate_components",
    "epsilon",
    "eval_at_one",
    "exact_div",
    "expand",
    "factored_from_json",
    "factored_to_json",
    "fiber_weight",
    "format_factored",
    "format_poly",
    "generic_h0",
    "in_wobbly_divisor_range",
    "infer_mF_rank4",
    "is_mult_polynomial_analytic",
    "is_polynomial",
    "is_valid",
    "m_EF",
    "m_E_closed",
    "m_FE",
    "m_from_weights",
    "make_component",
    "mult_report_row",
    "nonpositivity_check",
    "p_poly",
    "poly_from_json",
    "poly_to_json",
    "printed_m_EF_rank4",
    "q_int",
    "q_int_span",
    "rank4_consistency",
    "run_all",
    "sweep",
    "toledo_bound_check",
    "weight_normalized",
    "weight_table",
    "wobbly_divisor_range",
    "write_records",
]
