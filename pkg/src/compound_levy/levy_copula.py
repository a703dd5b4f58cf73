"""Positive Levy copulas on [0, inf]^2.

Besides the classical independence, complete-dependence and Clayton
copulas this module evaluates the alpha-Clayton family induced by the
stable/Gamma compound model,

    C(s1, s2) = s1 I(x1; alpha1 + sigma, alpha2) + s2 I(x2; alpha2 + sigma, alpha1),

with ``r_i = (Gamma(alpha_i + sigma) / (Gamma(alpha_i) s_i))^(1/sigma)`` and
``x_i = r_i / (r1 + r2)``. ``x1`` and ``x2 = 1 - x1`` are both computed as
logistic functions of ``log r1 - log r2`` so neither loses precision to
cancellation; ``log r_i`` is formed in log space because ``1/sigma`` can be
very large. Infinite arguments are handled by explicit branches, so the
marginal property ``C(s, inf) = s`` holds exactly.
"""

import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np
from scipy.optimize import brentq
from scipy.special import expit, gammaincc, gammaln

from compound_levy.errors import ConvergenceError, DomainError
from compound_levy.numerics import QuadratureSpec, integrate_semi_infinite
from compound_levy.numerics.special import log_gamma_ratio, reg_inc_beta_pair


def _args(s1, s2):
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    if np.any(np.isnan(s1)) or np.any(np.isnan(s2)) or np.any(s1 < 0) or np.any(s2 < 0):
        raise DomainError("Levy copula arguments must lie in [0, inf]")
    return np.broadcast_arrays(s1, s2)


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def independence_copula(s1, s2):
    s1, s2 = _args(s1, s2)
    inf1, inf2 = np.isinf(s1), np.isinf(s2)
    out = np.where(inf2, s1, 0.0) + np.where(inf1, s2, 0.0)
    out = np.where(inf1 & inf2, np.inf, out)
    return _out(out)


def complete_dependence_copula(s1, s2):
    s1, s2 = _args(s1, s2)
    return _out(np.minimum(s1, s2))


def clayton_copula(theta, s1, s2):
    """(s1^-theta + s2^-theta)^(-1/theta); zero if either argument is zero."""
    if not theta > 0:
        raise DomainError("Clayton parameter theta must be > 0")
    s1, s2 = _args(s1, s2)
    with np.errstate(divide="ignore", over="ignore"):
        # factor out the larger term to keep the power sum finite
        lo = np.minimum(s1, s2)
        hi = np.maximum(s1, s2)
        ratio = np.where(np.isinf(hi) | (hi == 0), 0.0, lo / np.where(hi == 0, 1.0, hi))
        out = lo * (1.0 + ratio ** theta) ** (-1.0 / theta)
    out = np.where((s1 == 0) | (s2 == 0), 0.0, out)
    out = np.where(np.isinf(s1) & np.isinf(s2), np.inf, out)
    return _out(out)


@dataclass(frozen=True)
class AlphaClaytonParams:
    sigma: float
    alpha1: float = 1.0
    alpha2: float = 1.0

    def __post_init__(self):
        for name in ("sigma", "alpha1", "alpha2"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be positive and finite, got {v!r}")

    @property
    def theta(self):
        return 1.0 / self.sigma

    def log_g(self):
        """(log Gamma(alpha_i + sigma) - log Gamma(alpha_i)) for i = 1, 2."""
        s = self.sigma
        return log_gamma_ratio(self.alpha1, s), log_gamma_ratio(self.alpha2, s)


def _log_r(p, s1, s2):
    lg1, lg2 = p.log_g()
    return (lg1 - np.log(s1)) / p.sigma, (lg2 - np.log(s2)) / p.sigma


def _split(p, s1, s2):
    lr1, lr2 = _log_r(p, s1, s2)
    d = lr1 - lr2
    return expit(d), expit(-d), lr1, lr2


def alpha_clayton(p, s1, s2):
    """alpha-Clayton Levy copula C_{sigma, alpha}(s1, s2)."""
    s1, s2 = _args(s1, s2)
    out = np.zeros(s1.shape)
    inf1, inf2 = np.isinf(s1), np.isinf(s2)
    interior = (s1 > 0) & (s2 > 0) & ~inf1 & ~inf2
    if interior.any():
        a, b = s1[interior], s2[interior]
        x1, x2, _, _ = _split(p, a, b)
        i1 = reg_inc_beta_pair(x1, p.alpha1 + p.sigma, p.alpha2, y=x2)[0]
        i2 = reg_inc_beta_pair(x2, p.alpha2 + p.sigma, p.alpha1, y=x1)[0]
        out[interior] = a * i1 + b * i2
    out = np.where(inf2 & ~inf1, s1, out)
    out = np.where(inf1 & ~inf2, s2, out)
    out = np.where(inf1 & inf2, np.inf, out)
    out = np.where((s1 == 0) | (s2 == 0), 0.0, out)
    return _out(out)


def _interior_args(s1, s2):
    s1, s2 = _args(s1, s2)
    if np.any(~((s1 > 0) & (s2 > 0) & np.isfinite(s1) & np.isfinite(s2))):
        raise DomainError("copula partials need finite, strictly positive arguments")
    return s1, s2


def _partial_pair(p, s1, s2, first):
    # derivative in s1 (first=True) or s2; the other argument may be 0 or inf,
    # where the conditional distribution function is 0 or 1
    s1, s2 = _args(s1, s2)
    own, other = (s1, s2) if first else (s2, s1)
    if np.any(~((own > 0) & np.isfinite(own))) or np.any(~(other >= 0)):
        raise DomainError("copula partials need a finite, strictly positive differentiation argument")
    interior = (other > 0) & np.isfinite(other)
    if interior.all():
        x1, x2, _, _ = _split(p, s1, s2)
        if first:
            lo, up = reg_inc_beta_pair(x1, p.alpha1 + p.sigma, p.alpha2, y=x2)
        else:
            lo, up = reg_inc_beta_pair(x2, p.alpha2 + p.sigma, p.alpha1, y=x1)
        return _out(lo), _out(up)
    lo = np.where(other > 0, 1.0, 0.0)
    up = 1.0 - lo
    if interior.any():
        a, b = _partial_pair(p, s1[interior], s2[interior], first)
        lo[interior], up[interior] = a, b
    return _out(lo), _out(up)


def alpha_clayton_d1_pair(p, s1, s2):
    """(dC/ds1, 1 - dC/ds1), each accurate in relative terms."""
    return _partial_pair(p, s1, s2, True)


def alpha_clayton_d2_pair(p, s1, s2):
    """(dC/ds2, 1 - dC/ds2)."""
    return _partial_pair(p, s1, s2, False)


def alpha_clayton_d1(p, s1, s2):
    """dC/ds1, the conditional distribution function of the second tail coordinate given the first."""
    return alpha_clayton_d1_pair(p, s1, s2)[0]


def alpha_clayton_d2(p, s1, s2):
    return alpha_clayton_d2_pair(p, s1, s2)[0]


def alpha_clayton_log_density(p, s1, s2):
    s1, s2 = _interior_args(s1, s2)
    a1, a2, sig = p.alpha1, p.alpha2, p.sigma
    lr1, lr2 = _log_r(p, s1, s2)
    const = gammaln(a1 + a2 + sig) - math.log(sig) - gammaln(a1) - gammaln(a2)
    return _out(const - np.log(s1) - np.log(s2) + a1 * lr1 + a2 * lr2
                - (a1 + a2 + sig) * np.logaddexp(lr1, lr2))


def alpha_clayton_density(p, s1, s2):
    """Mixed partial d^2 C / ds1 ds2."""
    return _out(np.exp(alpha_clayton_log_density(p, s1, s2)))


_LOGIT_BOUND = 700.0
_BISECT_STEPS = 80


def conditional_inverse(p, s1, q):
    """Solve ``dC/ds1(s1, s2) = q`` for ``s2``.

    dC/ds1 is the Beta(alpha1 + sigma, alpha2) distribution function of
    ``x1 = r1 / (r1 + r2)``, and ``x1`` is monotone in ``s2``. The root is
    therefore bracketed on ``t = logit(x1)`` and bisected there, comparing
    the upper tail directly when ``q > 1/2``; ``s2`` is recovered exactly
    from ``t``.
    """
    s1 = np.asarray(s1, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.any(~((s1 > 0) & np.isfinite(s1))):
        raise DomainError("conditional_inverse needs finite s1 > 0")
    if np.any(~((q > 0) & (q < 1))):
        raise DomainError("conditional_inverse needs 0 < q < 1")
    s1, q = np.broadcast_arrays(s1, q)
    a, b = p.alpha1 + p.sigma, p.alpha2
    upper = q > 0.5
    target = np.where(upper, 1.0 - q, q)

    def too_low(t):
        lo, up = reg_inc_beta_pair(expit(t), a, b, y=expit(-t))
        return np.where(upper, up > target, lo < target)

    lo = np.full(q.shape, -_LOGIT_BOUND)
    hi = np.full(q.shape, _LOGIT_BOUND)
    if np.any(~too_low(lo)) or np.any(too_low(hi)):
        raise ConvergenceError("conditional_inverse: root not bracketed")
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        move_up = too_low(mid)
        lo = np.where(move_up, mid, lo)
        hi = np.where(move_up, hi, mid)
    t = 0.5 * (lo + hi)
    lg1, lg2 = p.log_g()
    lr1 = (lg1 - np.log(s1)) / p.sigma
    log_s2 = lg2 - p.sigma * (lr1 - t)
    with np.errstate(over="ignore"):
        s2 = np.exp(log_s2)
    if np.any(~np.isfinite(s2)) or np.any(s2 <= 0):
        raise ConvergenceError("conditional_inverse: solution outside representable range")
    return _out(s2)


def clayton_conditional_inverse(theta, s1, q):
    """Closed-form inverse of the Clayton conditional d/ds1 C_theta(s1, .)."""
    s1 = np.asarray(s1, dtype=float)
    q = np.asarray(q, dtype=float)
    return _out(s1 * (q ** (-theta / (1.0 + theta)) - 1.0) ** (-1.0 / theta))


# --------------------------------------------------------------------------
# Levy copula from a score distribution (survival copula + marginal survivals)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ScoreSurvivalSpec:
    survival_copula: Callable
    marginal_survivals: Tuple[Callable, Callable]


def product_copula(u, v):
    return u * v


def comonotone_copula(u, v):
    return np.minimum(u, v)


def gamma_survival(alpha, beta):
    def survival(x):
        return gammaincc(alpha, beta * np.asarray(x, dtype=float))
    return survival


def independent_gamma_scores(score1, score2):
    """Spec for independent Gamma scores (product survival copula)."""
    return ScoreSurvivalSpec(product_copula, (gamma_survival(score1.alpha, score1.beta),
                                              gamma_survival(score2.alpha, score2.beta)))


_TRANSFORM_QUAD = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-11)


def score_marginal_tail(survival, directing, x, quad=_TRANSFORM_QUAD):
    """U_i(x) = int S_i(x / z) rho*(dz) for a stable directing measure.

    With ``z = w^(-1/sigma)`` the stable intensity becomes ``K dw``, so the
    integrand ``K S_i(x w^(1/sigma))`` is bounded and smooth at the origin.
    """
    sig, K = directing.sigma, directing.K

    def f(w):
        return K * survival(x * w ** (1.0 / sig))

    knee = x ** (-sig)
    return integrate_semi_infinite(f, quad, breakpoints=(knee,), scale=knee)


def score_marginal_tail_inverse(survival, directing, s, quad=_TRANSFORM_QUAD):
    target = math.log(s)

    def g(logx):
        return math.log(score_marginal_tail(survival, directing, math.exp(logx), quad)) - target

    lo, hi = -1.0, 1.0
    glo, ghi = g(lo), g(hi)
    while glo < 0:
        lo *= 2.0
        if lo < -700:
            raise ConvergenceError("could not bracket the marginal tail inverse")
        glo = g(lo)
    while ghi > 0:
        hi *= 2.0
        if hi > 700:
            raise ConvergenceError("could not bracket the marginal tail inverse")
        ghi = g(hi)
    return math.exp(brentq(g, lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200))


def copula_from_scores(spec, directing, s1, s2, quad=_TRANSFORM_QUAD):
    """Levy copula of a compound vector given the score survival structure.

    Evaluates ``C(s1, s2) = int C^(S1(x1 / z), S2(x2 / z)) rho*(dz)`` with
    ``x_i = U_i^{-1}(s_i)``, where both marginal tails ``U_i`` and their
    inverses are obtained numerically.
    """
    if not (0 < s1 < np.inf and 0 < s2 < np.inf):
        raise DomainError("copula_from_scores needs finite positive arguments")
    surv1, surv2 = spec.marginal_survivals
    x1 = score_marginal_tail_inverse(surv1, directing, s1, quad)
    x2 = score_marginal_tail_inverse(surv2, directing, s2, quad)
    sig, K = directing.sigma, directing.K

    def f(w):
        v = w ** (1.0 / sig)
        return K * spec.survival_copula(surv1(x1 * v), surv2(x2 * v))

    knees = (x1 ** (-sig), x2 ** (-sig))
    return integrate_semi_infinite(f, quad, breakpoints=knees, scale=min(knees))


def limit_checks(alpha1, alpha2, grid=(0.5, 1.0, 2.0), small_sigma=0.01, large_sigma=100.0):
    """Distances of the alpha-Clayton copula to its two limiting copulas on a grid.

    Small ``sigma`` should approach complete dependence (min), large
    ``sigma`` should approach the independence copula, which vanishes at
    finite arguments.
    """
    g = np.asarray(grid, dtype=float)
    s1, s2 = np.meshgrid(g, g, indexing="ij")
    near_min = alpha_clayton(AlphaClaytonParams(small_sigma, alpha1, alpha2), s1, s2)
    near_indep = alpha_clayton(AlphaClaytonParams(large_sigma, alpha1, alpha2), s1, s2)
    return {
        "complete_dependence_sup": float(np.max(np.abs(near_min - np.minimum(s1, s2)))),
        "independence_sup": float(np.max(np.abs(near_indep))),
        "small_sigma": small_sigma,
        "large_sigma": large_sigma,
    }
