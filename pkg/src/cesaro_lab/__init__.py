"""Numerical laboratory for Cesaro-type operators on truncated Taylor series.

Exact lower-triangular coefficient operators, weighted sup-norm sweeps on
the unit disc, three cross-validated resolvent routes, and iterate/average
experiments separating the compact memory-t regime from the boundary case.
"""

from .series import (
    DEGREE_CAP,
    Poly,
    binomial_series,
    cauchy_product,
    compose,
    horner_eval,
    log_one_minus_inv,
    mobius_coeffs,
    monomial,
    truncate,
    vanishing_order,
)
from .weights import (
    GrowthReport,
    NormEstimate,
    WeightSpec,
    default_radius_grid,
    growth_classify,
    max_modulus,
    max_modulus_profile,
    weight_eval,
    weighted_sup_norm,
)
from .operators import (
    FiniteSection,
    build_corpus,
    cesaro_apply,
    cesaro_inverse_apply,
    finite_section,
    generalized_cesaro_apply,
    log_power_identity_check,
    s_t_apply,
)
from .resolvent import (
    BoundCheck,
    QuadratureSpec,
    ResolventRequest,
    branch_power,
    off_cut_sample_points,
    resolvent_bound_check,
    resolvent_integral_eval,
    resolvent_integral_profile,
    resolvent_recurrence,
    resolvent_semigroup,
)
from .ergodic import (
    EigenPair,
    ErgodicTrace,
    SpectralDichotomyReport,
    eigenpair_cesaro,
    eigenvector_ct,
    iterate_trace,
    spectral_dichotomy_report,
)
from .verify import CheckResult, run_suite

__version__ = "0.1.0"

__all__ = [
    "DEGREE_CAP",
    "Poly",
    "binomial_series",
    "cauchy_product",
    "compose",
    "horner_eval",
    "log_one_minus_inv",
    "mobius_coeffs",
    "monomial",
    "truncate",
    "vanishing_order",
    "GrowthReport",
    "NormEstimate",
    "WeightSpec",
    "default_radius_grid",
    "growth_classify",
    "max_modulus",
    "max_modulus_profile",
    "weight_eval",
    "weighted_sup_norm",
    "FiniteSection",
    "build_corpus",
    "cesaro_apply",
    "cesaro_inverse_apply",
    "finite_section",
    "generalized_cesaro_apply",
    "log_power_identity_check",
    "s_t_apply",
    "BoundCheck",
    "QuadratureSpec",
    "ResolventRequest",
    "branch_power",
    "off_cut_sample_points",
    "resolvent_bound_check",
    "resolvent_integral_eval",
    "resolvent_integral_profile",
    "resolvent_recurrence",
    "resolvent_semigroup",
    "EigenPair",
    "ErgodicTrace",
    "SpectralDichotomyReport",
    "eigenpair_cesaro",
    "eigenvector_ct",
    "iterate_trace",
    "spectral_dichotomy_report",
    "CheckResult",
    "run_suite",
]
