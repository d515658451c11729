"""cyclodiv: exact maximal coefficients of divisors of x^n - 1.

H(r, n) is the largest |r-th coefficient| over all integer-polynomial
divisors of x^n - 1.  The package computes H exactly by two independent
routes, evaluates the Euler-product constant governing its average order,
and builds convergence reports for the partial sums.
"""

from .arith import Factorization, NuSieve, delta, divisors, factorize, mobius, sieve_nu
from .asympt import (
    EulerProductEstimate,
    PartialSumReport,
    SumRow,
    c_of_r,
    convergence_report,
    euler_product,
    partial_sum_H,
    partial_sum_two_pow_nu,
)
from .cyclotomic import CyclotomicTruncated, cyclotomic_full, cyclotomic_truncated
from .errors import (
    CapError,
    ReachableSetOverflowError,
    SieveLimitError,
    TooManyDivisorsError,
)
from .hmax import (
    ExponentVector,
    HResult,
    divisor_subset_poly,
    h_bruteforce,
    h_fast,
    negative_mobius_witness,
    reachable_vectors,
    upper_bound_explicit,
)
from .series import TruncatedSeries, binomial_power, dominated_by, ts_mul, ts_one

__version__ = "0.1.0"

__all__ = [
    "Factorization",
    "NuSieve",
    "factorize",
    "divisors",
    "mobius",
    "delta",
    "sieve_nu",
    "TruncatedSeries",
    "ts_one",
    "ts_mul",
    "binomial_power",
    "dominated_by",
    "CyclotomicTruncated",
    "cyclotomic_truncated",
    "cyclotomic_full",
    "ExponentVector",
    "HResult",
    "divisor_subset_poly",
    "h_bruteforce",
    "h_fast",
    "reachable_vectors",
    "negative_mobius_witness",
    "upper_bound_explicit",
    "EulerProductEstimate",
    "PartialSumReport",
    "SumRow",
    "euler_product",
    "c_of_r",
    "partial_sum_two_pow_nu",
    "partial_sum_H",
    "convergence_report",
    "CapError",
    "TooManyDivisorsError",
    "ReachableSetOverflowError",
    "SieveLimitError",
    "__version__",
]
