"""Extreme values of the coupon collector problem.

Moments of the limiting maximal waiting time M, the probabilities that each
gap is the longest, and the zeta / Bernoulli / partition machinery behind
their closed forms.
"""

from .errors import ConvergenceError, ResourceError
from .exact import bernoulli_exact, pq_polynomials, qj_at_one
from .finite import (
    discrete_argmax_probability,
    expected_total_draws,
    finite_argmax_continuous,
    finite_max_moment,
)
from .maxprob import argmax_asymptotic, argmax_probability, hr_integral, peak_location, table1
from .moments import (
    mean_variance,
    moment_bernoulli,
    moment_hurwitz,
    moment_report,
    moment_series,
    partial_fraction_coeffs,
)
from .partition import euler_function, partition_asymptotic, partition_count
from .quadrature import QuadratureSpec, integrate, normal_cdf_complement
from .simulator import SimConfig, compare_with_theory, simulate
from .zeta import SpecialPoint, ZetaEvalConfig, hurwitz_special_odd, hurwitz_zeta, zeta_derivative_neg

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError", "ResourceError",
    "bernoulli_exact", "pq_polynomials", "qj_at_one",
    "discrete_argmax_probability", "expected_total_draws", "finite_argmax_continuous", "finite_max_moment",
    "argmax_asymptotic", "argmax_probability", "hr_integral", "peak_location", "table1",
    "mean_variance", "moment_bernoulli", "moment_hurwitz", "moment_report", "moment_series",
    "partial_fraction_coeffs",
    "euler_function", "partition_asymptotic", "partition_count",
    "QuadratureSpec", "integrate", "normal_cdf_complement",
    "SimConfig", "compare_with_theory", "simulate",
    "SpecialPoint", "ZetaEvalConfig", "hurwitz_special_odd", "hurwitz_zeta", "zeta_derivative_neg",
]
