"""Nelder-Mead simplex minimisation."""

from dataclasses import dataclass

import numpy as np

from compound_levy.errors import DomainError

REFLECT, EXPAND, CONTRACT, SHRINK = 1.0, 2.0, 0.5, 0.5
_COLLAPSE = 8 * np.finfo(float).eps


@dataclass(frozen=True)
class OptimizerSpec:
    initial_step: object = 0.1
    f_tol: float = 1e-10
    x_tol: float = 1e-8
    max_iters: int = 5000

    def __post_init__(self):
        steps = np.atleast_1d(np.asarray(self.initial_step, dtype=float))
        if np.any(steps == 0) or not np.all(np.isfinite(steps)):
            raise DomainError("initial_step entries must be finite and non-zero")
        if not (self.f_tol > 0 and self.x_tol > 0):
            raise DomainError("optimizer tolerances must be positive")
        if int(self.max_iters) < 1:
            raise DomainError("max_iters must be >= 1")


@dataclass
class OptimizeResult:
    x: np.ndarray
    fun: float
    converged: bool
    iterations: int
    evaluations: int


def _safe(objective):
    def wrapped(x):
        v = float(objective(x))
        return v if not np.isnan(v) else np.inf
    return wrapped


def nelder_mead(objective, x0, spec=OptimizerSpec()):
    """Minimise ``objective`` from ``x0``.

    Convergence requires both the spread of simplex values to fall below
    ``f_tol`` and every vertex to lie within ``x_tol`` (sup norm) of the best
    one. A simplex that has collapsed to rounding level also stops the run
    (and counts as converged): no further progress is possible there, even
    if evaluation noise keeps the value spread above ``f_tol``. Vertex
    ordering uses a stable sort so ties keep insertion order, which makes the
    run fully deterministic. NaN objective values are
    treated as +inf.
    """
    x0 = np.atleast_1d(np.asarray(x0, dtype=float)).copy()
    n = x0.size
    f = _safe(objective)
    f0 = f(x0)
    if not np.isfinite(f0):
        raise DomainError("objective is not finite at the starting point")

    steps = np.broadcast_to(np.asarray(spec.initial_step, dtype=float), (n,))
    simplex = np.empty((n + 1, n))
    simplex[0] = x0
    for i in range(n):
        v = x0.copy()
        v[i] += steps[i]
        simplex[i + 1] = v
    fvals = np.empty(n + 1)
    fvals[0] = f0
    for i in range(1, n + 1):
        fvals[i] = f(simplex[i])
    nfev = n + 1

    it = 0
    converged = False
    while True:
        order = np.argsort(fvals, kind="stable")
        simplex, fvals = simplex[order], fvals[order]
        spread = np.max(np.abs(simplex[1:] - simplex[0]))
        if fvals[-1] - fvals[0] <= spec.f_tol and spread <= spec.x_tol:
            converged = True
            break
        if spread <= _COLLAPSE * (1.0 + np.max(np.abs(simplex[0]))) and np.all(np.isfinite(fvals)):
            converged = True
            break
        if it >= spec.max_iters:
            break
        it += 1

        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + REFLECT * (centroid - worst)
        fr = f(xr)
        nfev += 1
        if fr < fvals[0]:
            xe = centroid + EXPAND * (xr - centroid)
            fe = f(xe)
            nfev += 1
            if fe < fr:
                simplex[-1], fvals[-1] = xe, fe
            else:
                simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[-2]:
            simplex[-1], fvals[-1] = xr, fr
            continue
        if fr < fvals[-1]:
            xc = centroid + CONTRACT * (xr - centroid)
            fc = f(xc)
            nfev += 1
            if fc <= fr:
                simplex[-1], fvals[-1] = xc, fc
                continue
        else:
            xc = centroid + CONTRACT * (worst - centroid)
            fc = f(xc)
            nfev += 1
            if fc < fvals[-1]:
                simplex[-1], fvals[-1] = xc, fc
                continue
        best = simplex[0]
        for i in range(1, n + 1):
            simplex[i] = best + SHRINK * (simplex[i] - best)
            fvals[i] = f(simplex[i])
        nfev += n

    return OptimizeResult(x=simplex[0].copy(), fun=float(fvals[0]),
                          converged=converged, iterations=it, evaluations=nfev)
