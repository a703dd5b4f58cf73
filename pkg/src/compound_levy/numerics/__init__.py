from compound_levy.numerics.empirical import ECDF, ecdf, ks_distance
from compound_levy.numerics.optimize import OptimizerSpec, OptimizeResult, nelder_mead
from compound_levy.numerics.quadrature import (
    DEFAULT_QUADRATURE,
    QuadratureSpec,
    integrate,
    integrate_semi_infinite,
)
from compound_levy.numerics.special import (
    gamma_ratio,
    log_beta,
    log_gamma,
    log_gamma_ratio,
    reg_inc_beta,
    reg_inc_beta_pair,
)

__all__ = [
    "ECDF", "ecdf", "ks_distance",
    "OptimizerSpec", "OptimizeResult", "nelder_mead",
    "DEFAULT_QUADRATURE", "QuadratureSpec", "integrate", "integrate_semi_infinite",
    "gamma_ratio", "log_beta", "log_gamma", "log_gamma_ratio", "reg_inc_beta", "reg_inc_beta_pair",
]
