"""Log-likelihoods for bivariate jump data.

``cpp_loglik`` covers a continuously observed bivariate compound Poisson
process whose dependence is an alpha-Clayton Levy copula; jumps are split
into coordinate-1-only, coordinate-2-only and joint jumps. ``threshold_loglik``
covers the compound stable model when only joint jumps above per-coordinate
thresholds are seen.
"""

import numpy as np

from compound_levy.errors import DomainError
from compound_levy.levy_copula import (
    alpha_clayton,
    alpha_clayton_d1_pair,
    alpha_clayton_d2_pair,
    alpha_clayton_log_density,
    AlphaClaytonParams,
)
from compound_levy.process_model import bivariate_tail, log_levy_intensity, marginal_intensity, marginal_tail

_TINY = np.finfo(float).tiny


def rate_split(lambda1, lambda2, cop):
    """(lambda1_perp, lambda2_perp, lambda_par); the three add up to lambda1 + lambda2 - C(lambda1, lambda2)."""
    par = float(alpha_clayton(cop, lambda1, lambda2))
    return lambda1 - par, lambda2 - par, par


def _tail_coord(lam, fam, w):
    return lam * np.maximum(fam.sf(w), _TINY)


def _sum_log(x, what):
    x = np.asarray(x, dtype=float)
    if x.size and not np.all(np.isfinite(x)):
        raise DomainError(f"{what} has a non-positive factor; log-likelihood undefined")
    return float(np.sum(x))


def cpp_loglik_terms(obs, lambda1, lambda2, m1, m2, cop):
    """Per-kind contributions ``{"perp1", "perp2", "par", "exponent"}`` to the log-likelihood."""
    if not (lambda1 > 0 and lambda2 > 0):
        raise DomainError("jump rates must be positive")
    T = obs.T
    perp1_rate, perp2_rate, par_rate = rate_split(lambda1, lambda2, cop)
    terms = {"exponent": -(lambda1 + lambda2 - par_rate) * T}

    with np.errstate(divide="ignore"):
        w = obs.perp1
        if w.size:
            keep = alpha_clayton_d1_pair(cop, _tail_coord(lambda1, m1, w), np.full(w.size, lambda2))[1]
            terms["perp1"] = _sum_log(np.log(lambda1) + m1.logpdf(w) + np.log(keep), "perp1")
        else:
            terms["perp1"] = 0.0
        w = obs.perp2
        if w.size:
            keep = alpha_clayton_d2_pair(cop, np.full(w.size, lambda1), _tail_coord(lambda2, m2, w))[1]
            terms["perp2"] = _sum_log(np.log(lambda2) + m2.logpdf(w) + np.log(keep), "perp2")
        else:
            terms["perp2"] = 0.0
        w = obs.parallel
        if w.shape[0]:
            u1 = _tail_coord(lambda1, m1, w[:, 0])
            u2 = _tail_coord(lambda2, m2, w[:, 1])
            terms["par"] = _sum_log(np.log(lambda1 * lambda2) + m1.logpdf(w[:, 0]) + m2.logpdf(w[:, 1])
                                    + alpha_clayton_log_density(cop, u1, u2), "par")
        else:
            terms["par"] = 0.0
    return terms


def cpp_loglik(obs, lambda1, lambda2, m1, m2, cop):
    """Log-likelihood of a continuously observed bivariate compound Poisson path.

    ``m1``, ``m2`` are the jump-size laws, ``lambda_j`` the marginal jump
    rates and ``cop`` the Levy copula. A coordinate-1-only jump of size w has
    density ``lambda1 f1(w) (1 - dC/du1(lambda1 S1(w), lambda2))``, a joint
    jump ``lambda1 lambda2 f1 f2 d2C/du1du2(lambda1 S1, lambda2 S2)``, and
    the no-jump exponent is ``-(lambda1 + lambda2 - C(lambda1, lambda2)) T``.
    """
    terms = cpp_loglik_terms(obs, lambda1, lambda2, m1, m2, cop)
    return terms["exponent"] + terms["perp1"] + terms["perp2"] + terms["par"]


def _check_threshold(obs, eps1, eps2):
    if not (eps1 > 0 and eps2 > 0):
        raise DomainError("thresholds must be positive")
    if obs.perp1.size or obs.perp2.size:
        raise DomainError("thresholded observations contain joint jumps only")
    w = obs.parallel
    if w.shape[0] and (np.any(w[:, 0] <= eps1) or np.any(w[:, 1] <= eps2)):
        raise DomainError("observation below threshold")
    return w


def threshold_loglik(obs, m, eps1, eps2, form="intensity"):
    """Log-likelihood of joint jumps above ``(eps1, eps2)`` under compound model ``m``.

    ``-U(eps1, eps2) T + sum log rho(w1, w2)``. With ``form="copula"`` the
    density is assembled as ``rho1(w1) rho2(w2) c(U1(w1), U2(w2))`` with the
    alpha-Clayton density ``c``; both forms agree for this model.
    """
    if form not in ("intensity", "copula"):
        raise DomainError(f"unknown form {form!r}")
    w = _check_threshold(obs, eps1, eps2)
    exponent = -float(bivariate_tail(m, eps1, eps2)) * obs.T
    if not w.shape[0]:
        return exponent
    if form == "intensity":
        dens = log_levy_intensity(m, w[:, 0], w[:, 1])
    else:
        cop = AlphaClaytonParams(m.sigma, m.score(1).alpha, m.score(2).alpha)
        dens = (np.log(marginal_intensity(m, 1, w[:, 0])) + np.log(marginal_intensity(m, 2, w[:, 1]))
                + alpha_clayton_log_density(cop, marginal_tail(m, 1, w[:, 0]), marginal_tail(m, 2, w[:, 1])))
    return exponent + _sum_log(dens, "intensity")
