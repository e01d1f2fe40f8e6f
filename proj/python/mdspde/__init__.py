"""Moderate-deviation importance sampling for stochastic reaction-diffusion equations.

The heavy lifting lives in the compiled extension; this package re-exports it.
"""

from ._mdspde import (  # noqa: F401
    decay_rates,
    default_config_json,
    elliptic_K,
    equilibrium_profile,
    exit_direction,
    gap_report,
    inverse_M,
    jacobi_elliptic,
    lambda_weights,
    quarter_period_M,
    simulate,
    spectrum,
    t_star,
)

__all__ = [
    "decay_rates",
    "default_config_json",
    "elliptic_K",
    "equilibrium_profile",
    "exit_direction",
    "gap_report",
    "inverse_M",
    "jacobi_elliptic",
    "lambda_weights",
    "quarter_period_M",
    "simulate",
    "spectrum",
    "t_star",
]
