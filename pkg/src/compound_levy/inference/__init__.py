"""Likelihoods and fitters for bivariate jump data."""

from compound_levy.inference.fitting import (
    COPULA_VARIANTS,
    DEFAULT_OPTIMIZER,
    FitResult,
    fit_copula_two_step,
    fit_copula_variants,
    fit_marginal,
    fit_threshold_model,
    format_report,
    loglik_report,
    minimize,
    rate_estimates,
    select_marginal,
)
from compound_levy.inference.likelihood import cpp_loglik, cpp_loglik_terms, rate_split, threshold_loglik
from compound_levy.marginals import FAMILIES, GammaFamily, LogNormalFamily, MarginalFamily, WeibullFamily
from compound_levy.observations import ObservationSet

__all__ = [
    "COPULA_VARIANTS", "DEFAULT_OPTIMIZER", "FAMILIES", "FitResult", "GammaFamily", "LogNormalFamily",
    "MarginalFamily", "ObservationSet", "WeibullFamily", "cpp_loglik", "cpp_loglik_terms",
    "fit_copula_two_step", "fit_copula_variants", "fit_marginal", "fit_threshold_model", "format_report",
    "loglik_report", "minimize", "rate_estimates", "rate_split", "select_marginal", "threshold_loglik",
]
