"""Numerical verification of Hermite-Hadamard type integral inequalities."""

from ._core import (
    HHVError,
    __version__,
    beta,
    beta_duplication_check,
    check_bound,
    deviation_d1,
    deviation_d2,
    eval_deriv,
    gamma,
    integrate,
    k1,
    k2,
    k3,
    k4,
    lemma11_identity,
    log_gamma,
    log_mean_pow,
    prop31,
    prop32,
    prop33,
    prop34,
    verify,
)

__all__ = [
    "HHVError",
    "__version__",
    "beta",
    "beta_duplication_check",
    "check_bound",
    "deviation_d1",
    "deviation_d2",
    "eval_deriv",
    "gamma",
    "integrate",
    "k1",
    "k2",
    "k3",
    "k4",
    "lemma11_identity",
    "log_gamma",
    "log_mean_pow",
    "prop31",
    "prop32",
    "prop33",
    "prop34",
    "verify",
]
