"""Maximum-likelihood fitters built on Nelder-Mead in unconstrained coordinates."""

import json
import math
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit, logit

from compound_levy.errors import ConvergenceError, DomainError
from compound_levy.inference.likelihood import cpp_loglik, threshold_loglik
from compound_levy.levy_copula import AlphaClaytonParams
from compound_levy.marginals import DEFAULT_CANDIDATES, FAMILIES, family
from compound_levy.numerics import OptimizerSpec, ks_distance, nelder_mead
from compound_levy.process_model import CompoundModel, bivariate_tail

DEFAULT_OPTIMIZER = OptimizerSpec(initial_step=0.3, f_tol=1e-9, x_tol=1e-7, max_iters=4000)
DEFAULT_RESTARTS = 3
COPULA_VARIANTS = ("full", "symmetric", "clayton")
# Search box for shape-type parameters on the log scale. Likelihoods often
# keep rising toward alpha -> inf (degenerate scores); past exp(12) the
# model no longer changes visibly and evaluation only gets slower.
LOG_SHAPE_BOUND = 12.0


@dataclass
class FitResult:
    params: dict
    loglik: float
    converged: bool
    iterations: int
    fixed: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "params": {k: float(v) for k, v in self.params.items()},
            "loglik": float(self.loglik),
            "converged": bool(self.converged),
            "iterations": int(self.iterations),
            "fixed": {k: (v if isinstance(v, str) else float(v)) for k, v in self.fixed.items()},
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, d):
        return cls(dict(d["params"]), float(d["loglik"]), bool(d["converged"]),
                   int(d["iterations"]), dict(d.get("fixed", {})))

    def write_json(self, path):
        """Write atomically: a temporary file in the target directory is renamed into place."""
        directory = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(prefix=".fit-", suffix=".json", dir=directory)
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(self.to_json() + "\n")
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def _negate(loglik):
    def objective(z):
        try:
            value = loglik(z)
        except (ConvergenceError, DomainError, OverflowError, ValueError, ZeroDivisionError):
            return math.inf
        return -value if math.isfinite(value) else math.inf
    return objective


def _perturbations(dim, restarts):
    """Fixed, deterministic offsets for the restart starts."""
    out = []
    for k in range(restarts):
        sign = np.where((np.arange(dim) + k) % 2 == 0, 1.0, -1.0)
        out.append(0.5 * (k + 1) * sign / math.sqrt(dim))
    return out


def minimize(objective, starts, spec=DEFAULT_OPTIMIZER, restarts=DEFAULT_RESTARTS):
    """Best Nelder-Mead run over ``starts`` and perturbed copies of the first start.

    The winner is then polished by one more run started at its optimum, so
    the returned value is never worse than any start.
    """
    starts = [np.asarray(s, dtype=float) for s in starts]
    base = starts[0]
    candidates = list(starts) + [base + d for d in _perturbations(base.size, restarts)]
    best = None
    iterations = 0
    for x0 in candidates:
        if not math.isfinite(objective(x0)):
            continue
        res = nelder_mead(objective, x0, spec)
        iterations += res.iterations
        if best is None or res.fun < best.fun:
            best = res
    if best is None:
        raise DomainError("objective is not finite at any starting point")
    polish = nelder_mead(objective, best.x, spec)
    iterations += polish.iterations
    if polish.fun <= best.fun:
        best = polish
    return best, iterations


# --------------------------------------------------------------------------
# marginals
# --------------------------------------------------------------------------

def _check_weights(weights):
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.size < 2:
        raise DomainError("need at least 2 weights")
    if np.any(~(w > 0)) or np.any(~np.isfinite(w)):
        raise DomainError("weights must be finite and > 0")
    return w


def fit_marginal(weights, tag, spec=DEFAULT_OPTIMIZER, restarts=DEFAULT_RESTARTS):
    """MLE of a two-parameter family; returns the fit and the fitted family (``result.family``)."""
    w = _check_weights(weights)
    cls = FAMILIES[tag.lower()] if tag.lower() in FAMILIES else family(tag)

    def loglik(z):
        return float(np.sum(cls.from_unconstrained(z).logpdf(w)))

    try:
        start = cls.start(w)
    except DomainError:
        start = cls(*([1.0, 1.0] if cls.tag != "lognormal" else [0.0, 1.0]))
    res, iters = minimize(_negate(loglik), [start.to_unconstrained()], spec, restarts)
    fam = None
    try:
        fam = cls.from_unconstrained(res.x)
        ll = loglik(res.x)
    except DomainError:
        ll = -math.inf
    converged = bool(res.converged and fam is not None and math.isfinite(ll))
    params = fam.as_dict() if fam is not None else dict(zip(cls.param_names, np.exp(res.x)))
    out = FitResult(params, ll, converged, iters, {"family": cls.tag})
    out.family = fam
    return out


def select_marginal(weights, candidates=DEFAULT_CANDIDATES, spec=DEFAULT_OPTIMIZER, restarts=DEFAULT_RESTARTS):
    """Fit every candidate and keep the smallest KS distance; ties go to the earlier candidate."""
    w = _check_weights(weights)
    best = None
    for tag in candidates:
        fit = fit_marginal(w, tag, spec, restarts)
        if fit.family is None:
            continue
        ks = ks_distance(w, fit.family.cdf)
        if not math.isfinite(ks):
            continue
        if best is None or ks < best[2]:
            best = (fit.family, fit, ks)
    if best is None:
        raise DomainError("no candidate family could be fitted")
    return best


# --------------------------------------------------------------------------
# copula, two-step
# --------------------------------------------------------------------------

def rate_estimates(obs):
    """Poisson MLEs of the marginal jump rates, (n1_perp + n_par) / T and (n2_perp + n_par) / T."""
    n1, n2, npar = obs.counts
    return (n1 + npar) / obs.T, (n2 + npar) / obs.T


def _in_box(values):
    if np.any(np.abs(np.asarray(values, dtype=float)) > LOG_SHAPE_BOUND):
        raise DomainError("parameter outside the search box")


def _copula_from(variant, z, check=False):
    if check:
        _in_box(z)
    if variant == "full":
        s, a1, a2 = np.exp(z)
    elif variant == "symmetric":
        s, a1 = np.exp(z)
        a2 = a1
    elif variant == "clayton":
        s, a1, a2 = math.exp(z[0]), 1.0, 1.0
    else:
        raise DomainError(f"unknown copula variant {variant!r}")
    return AlphaClaytonParams(float(s), float(a1), float(a2))


def _copula_z(variant, cop):
    if variant == "full":
        return np.log([cop.sigma, cop.alpha1, cop.alpha2])
    if variant == "symmetric":
        return np.log([cop.sigma, math.sqrt(cop.alpha1 * cop.alpha2)])
    return np.log([cop.sigma])


def fit_copula_two_step(obs, m1, m2, variant="full", rates=None, starts=(),
                        spec=DEFAULT_OPTIMIZER, restarts=DEFAULT_RESTARTS):
    """Fit the copula parameters with marginals ``m1``, ``m2`` and rates pinned.

    ``variant`` is ``full`` (sigma, alpha1, alpha2), ``symmetric``
    (alpha1 = alpha2) or ``clayton`` (alpha1 = alpha2 = 1). ``starts`` are
    extra starting copulas, e.g. the optimum of a nested variant.
    """
    if obs.counts[2] < 1:
        raise DomainError("copula fit needs at least one joint jump")
    lam1, lam2 = rates if rates is not None else rate_estimates(obs)

    def loglik(z):
        return cpp_loglik(obs, lam1, lam2, m1, m2, _copula_from(variant, z, check=True))

    default = AlphaClaytonParams(0.5, 1.0, 1.0)
    zs = [_copula_z(variant, c) for c in (default, *starts)]
    res, iters = minimize(_negate(loglik), zs, spec, restarts)
    cop = _copula_from(variant, res.x)
    params = {"sigma": cop.sigma}
    if variant != "clayton":
        params["alpha1"], params["alpha2"] = cop.alpha1, cop.alpha2
    fixed = {"variant": variant, "lambda1": lam1, "lambda2": lam2,
             "marginal1": m1.tag, "marginal2": m2.tag}
    fixed.update({f"marginal1_{k}": v for k, v in m1.as_dict().items()})
    fixed.update({f"marginal2_{k}": v for k, v in m2.as_dict().items()})
    if variant == "clayton":
        fixed.update(alpha1=1.0, alpha2=1.0)
    out = FitResult(params, -res.fun, bool(res.converged and math.isfinite(res.fun)), iters, fixed)
    out.copula = cop
    return out


def fit_copula_variants(obs, m1, m2, rates=None, spec=DEFAULT_OPTIMIZER, restarts=DEFAULT_RESTARTS):
    """Clayton, symmetric and full fits, each warm-started from the nested optimum."""
    clayton = fit_copula_two_step(obs, m1, m2, "clayton", rates, (), spec, restarts)
    symmetric = fit_copula_two_step(obs, m1, m2, "symmetric", rates, (clayton.copula,), spec, restarts)
    full = fit_copula_two_step(obs, m1, m2, "full", rates, (symmetric.copula,), spec, restarts)
    return {"full": full, "symmetric": symmetric, "clayton": clayton}


# --------------------------------------------------------------------------
# thresholded compound stable model
# --------------------------------------------------------------------------

def _threshold_model(variant, z, check=False):
    if check:
        z = np.asarray(z, dtype=float)
        _in_box(z[[0, 2]] if variant == "full" else z[:1])
    if variant == "full":
        a1, b1, a2, b2 = np.exp(z[:4])
        s = expit(z[4])
    elif variant == "symmetric":
        a1 = a2 = math.exp(z[0])
        b1 = b2 = 1.0
        s = expit(z[1])
    else:
        raise DomainError(f"unknown threshold variant {variant!r}")
    return CompoundModel.from_params(float(s), 1.0, float(a1), float(b1), float(a2), float(b2))


def _threshold_start(obs, eps1, eps2, sigma=0.5, alpha=1.0):
    """alpha = 1, sigma = 0.5; beta ratio from the median weight ratio, common scale from the count."""
    w = obs.parallel
    ratio = float(np.median(w[:, 1] / w[:, 0])) if w.shape[0] else 1.0
    b1, b2 = 1.0, 1.0 / ratio
    m = CompoundModel.from_params(sigma, 1.0, alpha, b1, alpha, b2)
    n = max(w.shape[0], 1)
    c = (float(bivariate_tail(m, eps1, eps2)) * obs.T / n) ** (1.0 / sigma)
    return np.array([math.log(alpha), math.log(b1 * c), math.log(alpha), math.log(b2 * c), logit(sigma)])


def fit_threshold_model(obs, eps1, eps2, variant="full", spec=DEFAULT_OPTIMIZER, restarts=DEFAULT_RESTARTS):
    """Fit (alpha1, beta1, alpha2, beta2, sigma) with K = 1 to thresholded joint jumps.

    ``variant="symmetric"`` fits a single alpha with beta1 = beta2 = 1.
    """
    if obs.parallel.shape[0] < 1:
        raise DomainError("threshold fit needs at least one observation")

    def loglik(z):
        return threshold_loglik(obs, _threshold_model(variant, z, check=True), eps1, eps2)

    z0 = _threshold_start(obs, eps1, eps2)
    if variant == "symmetric":
        z0 = np.array([0.0, 0.0])
    res, iters = minimize(_negate(loglik), [z0], spec, restarts)
    m = _threshold_model(variant, res.x)
    w1, w2 = m.scores
    if variant == "full":
        params = {"alpha1": w1.alpha, "beta1": w1.beta, "alpha2": w2.alpha, "beta2": w2.beta, "sigma": m.sigma}
        fixed = {"K": 1.0}
    else:
        params = {"alpha": w1.alpha, "sigma": m.sigma}
        fixed = {"K": 1.0, "beta1": 1.0, "beta2": 1.0}
    fixed.update(eps1=float(eps1), eps2=float(eps2), T=float(obs.T))
    out = FitResult(params, -res.fun, bool(res.converged and math.isfinite(res.fun)), iters, fixed)
    out.model = m
    return out


# --------------------------------------------------------------------------
# comparison
# --------------------------------------------------------------------------

NESTED_TOLERANCE = 1e-3


def loglik_report(fits, order=COPULA_VARIANTS, tol=NESTED_TOLERANCE):
    """Per-variant log-likelihoods and parameters, plus the nested-ordering check.

    ``fits`` maps variant name to FitResult; ``order`` lists variants from
    the richest to the most restricted.
    """
    rows = [{"variant": v, "loglik": fits[v].loglik, "params": dict(fits[v].params),
             "converged": fits[v].converged} for v in order if v in fits]
    lls = [r["loglik"] for r in rows]
    nested_ok = all(a >= b - tol for a, b in zip(lls, lls[1:]))
    return {"rows": rows, "nested_ok": nested_ok}


def format_report(report):
    lines = [f"{'variant':<10} {'loglik':>14}  params"]
    for r in report["rows"]:
        params = ", ".join(f"{k}={v:.6g}" for k, v in r["params"].items())
        lines.append(f"{r['variant']:<10} {r['loglik']:>14.4f}  {params}")
    lines.append(f"nested ordering holds: {report['nested_ok']}")
    return "\n".join(lines)
