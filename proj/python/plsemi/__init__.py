"""Exact rational calculus for a one-parameter nonexpansive semigroup.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (
    OmegaFn,
    Rational,
    ZeroOrbitMean,
    alpha,
    apply,
    apply_basic,
    cesaro_quadrature_mean,
    cesaro_residual,
    decompose,
    fixed_point_v,
    fixed_point_w,
    is_common_fixed_point,
    orbit_zero_closed_form,
    run_all,
    run_mutation_checks,
    run_suite,
    suite_ids,
    sup_dist,
)

__version__ = "0.1.0"

__all__ = [
    "OmegaFn",
    "Rational",
    "ZeroOrbitMean",
    "alpha",
    "apply",
    "apply_basic",
    "cesaro_quadrature_mean",
    "cesaro_residual",
    "decompose",
    "fixed_point_v",
    "fixed_point_w",
    "is_common_fixed_point",
    "orbit_zero_closed_form",
    "run_all",
    "run_mutation_checks",
    "run_suite",
    "suite_ids",
    "sup_dist",
]
