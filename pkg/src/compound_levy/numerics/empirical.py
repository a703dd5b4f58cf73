"""Empirical distribution functions and the Kolmogorov-Smirnov distance."""

import numpy as np

from compound_levy.errors import DomainError


class ECDF:
    """Right-continuous empirical CDF of a sample."""

    def __init__(self, samples):
        x = np.sort(np.asarray(samples, dtype=float).ravel())
        if x.size == 0:
            raise DomainError("ECDF needs at least one sample")
        self.x = x
        self.n = x.size

    def __call__(self, t):
        out = np.searchsorted(self.x, t, side="right") / self.n
        return float(out) if np.ndim(out) == 0 else out

    def left_limit(self, t):
        out = np.searchsorted(self.x, t, side="left") / self.n
        return float(out) if np.ndim(out) == 0 else out


def ecdf(samples):
    return ECDF(samples)


def ks_distance(samples, cdf):
    """sup_x |F_n(x) - F(x)|, attained at a sample point or its left limit."""
    e = ECDF(samples)
    pts = np.unique(e.x)
    f = np.asarray(cdf(pts), dtype=float)
    upper = np.abs(e(pts) - f)
    lower = np.abs(e.left_limit(pts) - f)
    return float(max(upper.max(), lower.max()))
