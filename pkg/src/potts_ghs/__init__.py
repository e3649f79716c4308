"""Exact verification engine for the sign dichotomy of the magnetization
curvature on the ferromagnetic Potts model.

The second derivative of a site's magnetization in two external fields,
scaled by r**3 Z**3, expands exactly — over rational pair weights — into a
polynomial in the deviations X_p = t_p - 1 whose coefficients factor through
64 aggregated Laurent polynomials in the state count r.  Those coefficients
are nonpositive at r = 2 and nonnegative for every r >= 3, so the
magnetization is concave in the fields for the Ising case and convex for
r >= 3.  Everything here is exact: Fraction weights, integer Laurent
coefficients, zero-tolerance comparisons; floats appear only in the
finite-difference oracle and the float-domain spot checks.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .alpha import (
    AlphaTable,
    REFERENCE_FORMS,
    alpha,
    alpha_table,
    compare_reference,
    format_table,
    sign_report,
    table_export,
)
from .constraints import (
    GHS_TERMS,
    ConstraintMatrix,
    constrained_sum,
    matrix_coefficient,
    matrix_sum_value,
)
from .derivatives import (
    DerivativeResult,
    first_derivative,
    ghs_sum,
    second_derivative_analytic,
    second_derivative_fd,
    second_derivative_float,
    second_derivative_via_sum,
)
from .expansion import CapacityError, expand_full, expand_partial
from .laurent import LaurentPoly
from .model import (
    GhostWeightVector,
    ModelSpec,
    PairOrder,
    SpinConfig,
    correlator,
    energy,
    instance_digest,
    magnetization,
    pair_order,
    partition_function,
    relabel_sites,
)
from .modelfile import ModelFileError, dump_weights, load_model, parse_rational, rational_str
from .partitions import DisjointSet, Partition, block_count, merge_constraints
from .sampling import random_excess, random_model, random_weights, trial_rng
from .separation import (
    SeparatedForm,
    assemble_separated,
    evaluate_separated,
    reduced_expansion,
    separation_check,
    separated_form,
    separation_factors,
)
from .xpoly import XPoly, monomial_key, substitute, xpoly_eval, xpoly_records

__all__ = [
    "AlphaTable",
    "CapacityError",
    "ConstraintMatrix",
    "DerivativeResult",
    "DisjointSet",
    "GHS_TERMS",
    "GhostWeightVector",
    "LaurentPoly",
    "ModelFileError",
    "ModelSpec",
    "PairOrder",
    "Partition",
    "REFERENCE_FORMS",
    "SeparatedForm",
    "SpinConfig",
    "XPoly",
    "alpha",
    "alpha_table",
    "assemble_separated",
    "block_count",
    "compare_reference",
    "constrained_sum",
    "correlator",
    "dump_weights",
    "energy",
    "evaluate_separated",
    "expand_full",
    "expand_partial",
    "first_derivative",
    "format_table",
    "ghs_sum",
    "instance_digest",
    "load_model",
    "magnetization",
    "matrix_coefficient",
    "matrix_sum_value",
    "merge_constraints",
    "monomial_key",
    "pair_order",
    "parse_rational",
    "partition_function",
    "random_excess",
    "random_model",
    "random_weights",
    "rational_str",
    "reduced_expansion",
    "relabel_sites",
    "second_derivative_analytic",
    "second_derivative_fd",
    "second_derivative_float",
    "second_derivative_via_sum",
    "separation_check",
    "separated_form",
    "separation_factors",
    "sign_report",
    "substitute",
    "table_export",
    "trial_rng",
    "xpoly_eval",
    "xpoly_records",
]
