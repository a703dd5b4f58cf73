"""Special functions: log-gamma, gamma ratios and the regularized incomplete beta."""

import math

import numpy as np
from scipy import special as _sp

from compound_levy.errors import ConvergenceError, DomainError

_CF_MAX_ITER = 2000
_CF_EPS = 1e-16
_CF_TINY = 1e-300


def log_gamma(x):
    """ln Gamma(x) for x > 0 (scalar or array)."""
    x = np.asarray(x, dtype=float)
    if np.any(~(x > 0)):
        raise DomainError("log_gamma requires x > 0")
    out = _sp.gammaln(x)
    return float(out) if out.ndim == 0 else out


_POCH_SWITCH = 1e4


def log_gamma_ratio(a, s):
    """log(Gamma(a + s) / Gamma(a)).

    For large ``a`` the difference of two log-gammas cancels badly, so the
    Pochhammer symbol is used there instead.
    """
    a = np.asarray(a, dtype=float)
    s = np.asarray(s, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        big = np.log(_sp.poch(np.maximum(a, _POCH_SWITCH), s))
    out = np.where(a >= _POCH_SWITCH, big, _sp.gammaln(a + s) - _sp.gammaln(a))
    return float(out) if out.ndim == 0 else out


def gamma_ratio(a, sigma):
    """Gamma(a + sigma) / Gamma(a), evaluated in log space."""
    a = np.asarray(a, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if np.any(~(a > 0)) or np.any(~(sigma > 0)):
        raise DomainError("gamma_ratio requires a > 0 and sigma > 0")
    out = np.exp(log_gamma_ratio(a, sigma))
    return float(out) if np.ndim(out) == 0 else out


def log_beta(a, b):
    return _sp.gammaln(a) + _sp.gammaln(b) - _sp.gammaln(a + b)


def _betacf(x, a, b):
    # Modified Lentz evaluation of the incomplete-beta continued fraction,
    # vectorised; every element iterates until its own increment is ~1.
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = np.ones_like(x)
    d = 1.0 - qab * x / qap
    d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
    d = 1.0 / d
    h = d.copy()
    active = np.ones(x.shape, dtype=bool)
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        h_new = h * d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = np.where(np.abs(d) < _CF_TINY, _CF_TINY, d)
        c = 1.0 + aa / c
        c = np.where(np.abs(c) < _CF_TINY, _CF_TINY, c)
        d = 1.0 / d
        delta = d * c
        h_new = h_new * delta
        h = np.where(active, h_new, h)
        active &= np.abs(delta - 1.0) > _CF_EPS
        if not active.any():
            return h
    raise ConvergenceError("incomplete beta continued fraction did not converge")


def _betacf_scalar(x, a, b):
    # Same fraction as _betacf, in plain floats; much cheaper for one point.
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = 1.0 / (d if abs(d) >= _CF_TINY else _CF_TINY)
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        for aa in (m * (b - m) * x / ((qam + m2) * (a + m2)),
                   -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))):
            d = 1.0 + aa * d
            d = 1.0 / (d if abs(d) >= _CF_TINY else _CF_TINY)
            c = 1.0 + aa / c
            if abs(c) < _CF_TINY:
                c = _CF_TINY
            delta = d * c
            h *= delta
        if abs(delta - 1.0) <= _CF_EPS:
            return h
    raise ConvergenceError("incomplete beta continued fraction did not converge")


def _pair_scalar(x, y, a, b):
    if x == 0.0:
        return 0.0, 1.0
    if y == 0.0:
        return 1.0, 0.0
    swap = x >= (a + 1.0) / (a + b + 2.0)
    if swap:
        x, y, a, b = y, x, b, a
    log_front = a * math.log(x) + b * math.log(y) - (math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))
    tail = min(max(math.exp(log_front) * _betacf_scalar(x, a, b) / a, 0.0), 1.0)
    return (1.0 - tail, tail) if swap else (tail, 1.0 - tail)


def reg_inc_beta_pair(x, a, b, y=None):
    """Return ``(I(x, a, b), 1 - I(x, a, b))``, both to full relative precision.

    ``y`` is ``1 - x`` when the caller knows it more accurately than the
    subtraction would give (e.g. both sides of a logistic split). The lower
    or upper tail is chosen per element by the usual ``x < (a+1)/(a+b+2)``
    switch, and the complementary value is obtained from the symmetric
    fraction rather than by cancellation.
    """
    if all(np.ndim(v) == 0 for v in (x, a, b, y)):
        xf, af, bf = float(x), float(a), float(b)
        yf = 1.0 - xf if y is None else float(y)
        if not (af > 0 and bf > 0):
            raise DomainError("reg_inc_beta requires a > 0 and b > 0")
        if not (0.0 <= xf <= 1.0):
            raise DomainError("reg_inc_beta requires 0 <= x <= 1")
        return _pair_scalar(xf, yf, af, bf)
    x = np.asarray(x, dtype=float)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    y = 1.0 - x if y is None else np.asarray(y, dtype=float)
    x, y, a, b = np.broadcast_arrays(x, y, a, b)
    if np.any(~(a > 0)) or np.any(~(b > 0)):
        raise DomainError("reg_inc_beta requires a > 0 and b > 0")
    if np.any(~((x >= 0) & (x <= 1))):
        raise DomainError("reg_inc_beta requires 0 <= x <= 1")

    lower = np.zeros(x.shape)
    upper = np.zeros(x.shape)
    at0 = x == 0
    at1 = y == 0
    lower[at1] = 1.0
    upper[at0] = 1.0
    inner = ~(at0 | at1)
    if inner.any():
        xi, yi, ai, bi = x[inner], y[inner], a[inner], b[inner]
        swap = xi >= (ai + 1.0) / (ai + bi + 2.0)
        # evaluate the fraction on whichever tail converges fast
        xs = np.where(swap, yi, xi)
        ys = np.where(swap, xi, yi)
        as_ = np.where(swap, bi, ai)
        bs = np.where(swap, ai, bi)
        log_front = as_ * np.log(xs) + bs * np.log(ys) - log_beta(as_, bs)
        tail = np.exp(log_front) * _betacf(xs, as_, bs) / as_
        tail = np.clip(tail, 0.0, 1.0)
        lo = np.where(swap, 1.0 - tail, tail)
        up = np.where(swap, tail, 1.0 - tail)
        lower[inner] = lo
        upper[inner] = up
    if lower.ndim == 0:
        return float(lower), float(upper)
    return lower, upper


def reg_inc_beta(x, a, b):
    """Regularized incomplete beta function I(x, a, b)."""
    return reg_inc_beta_pair(x, a, b)[0]
