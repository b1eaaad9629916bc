"""Python bindings for the banditlab C++ core."""

import json

from ._core import (
    exact_count_distribution,
    exact_count_distribution_fractions,
    h_function,
    hoeffding_two_sample_bound,
    ks_normal,
    ks_uniform,
    lambda_star,
    theta_star,
    verify_limit_equation,
)
from ._core import _run_config

__all__ = [
    "exact_count_distribution",
    "exact_count_distribution_fractions",
    "h_function",
    "hoeffding_two_sample_bound",
    "ks_normal",
    "ks_uniform",
    "lambda_star",
    "run_experiment",
    "theta_star",
    "verify_limit_equation",
]


def run_experiment(config, threads=0):
    """Run an experiment described by a config dict (same schema as the CLI).

    Returns a dict with ``distributions`` (sorted samples per statistic),
    per-replication ``counts`` and ``regret``, and the ``config_hash``.
    """
    if not isinstance(config, str):
        config = json.dumps(config)
    return _run_config(config, threads)
