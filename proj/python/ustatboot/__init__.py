"""Dependent multiplier bootstrap for U-statistics of order 2."""

from ._core import (
    ArgumentError,
    DataError,
    ci,
    cp_test,
    estimate_bandwidth,
    generate,
    kolmogorov_cdf,
    longrun_variance,
    multipliers,
    normal_quantile,
    process_dn,
    process_un,
    pseudo_observations,
    simulate,
    u_statistic,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "DataError",
    "ci",
    "cp_test",
    "estimate_bandwidth",
    "generate",
    "kolmogorov_cdf",
    "longrun_variance",
    "multipliers",
    "normal_quantile",
    "process_dn",
    "process_un",
    "pseudo_observations",
    "simulate",
    "u_statistic",
]
