"""Two-parameter jump-size families on (0, inf): Gamma, LogNormal and Weibull.

Each family carries its parameters together with a map to an
unconstrained vector, which is what the Nelder-Mead fitters work on.
"""

import math

import numpy as np
from scipy.special import gammainc, gammaincc, gammainccinv, gammaln, ndtr, ndtri

from compound_levy.errors import DomainError

_LOG_SQRT_2PI = 0.5 * math.log(2.0 * math.pi)


class MarginalFamily:
    tag = None
    param_names = ()

    def __init__(self, *params):
        self.params = tuple(float(p) for p in params)
        self._validate()

    def _validate(self):
        if not all(math.isfinite(p) and p > 0 for p in self.params):
            raise DomainError(f"{self.tag} parameters must be positive: {self.params}")

    def __repr__(self):
        body = ", ".join(f"{n}={v:.6g}" for n, v in zip(self.param_names, self.params))
        return f"{type(self).__name__}({body})"

    def __eq__(self, other):
        return type(self) is type(other) and self.params == other.params

    def __hash__(self):
        return hash((self.tag, self.params))

    def as_dict(self):
        return dict(zip(self.param_names, self.params))

    def pdf(self, x):
        return np.exp(self.logpdf(x))

    def to_unconstrained(self):
        return np.log(self.params)

    @classmethod
    def from_unconstrained(cls, z):
        return cls(*np.exp(np.asarray(z, dtype=float)))


class GammaFamily(MarginalFamily):
    """Gamma with shape ``alpha`` and rate ``beta``."""
    tag = "gamma"
    param_names = ("shape", "rate")

    def logpdf(self, x):
        a, b = self.params
        x = np.asarray(x, dtype=float)
        return a * math.log(b) - gammaln(a) + (a - 1.0) * np.log(x) - b * x

    def cdf(self, x):
        a, b = self.params
        return gammainc(a, b * np.clip(x, 0.0, None))

    def sf(self, x):
        a, b = self.params
        return gammaincc(a, b * np.clip(x, 0.0, None))

    def isf(self, q):
        a, b = self.params
        return gammainccinv(a, q) / b

    @classmethod
    def start(cls, x):
        m, v = float(np.mean(x)), float(np.var(x))
        if not v > 0:
            v = max(m * m * 1e-6, 1e-12)
        return cls(m * m / v, m / v)


class LogNormalFamily(MarginalFamily):
    """LogNormal with log-mean ``mu`` (any real) and log-sd ``sigma``."""
    tag = "lognormal"
    param_names = ("mu", "sigma")

    def _validate(self):
        mu, s = self.params
        if not (math.isfinite(mu) and math.isfinite(s) and s > 0):
            raise DomainError(f"lognormal needs finite mu and sigma > 0: {self.params}")

    def logpdf(self, x):
        mu, s = self.params
        lx = np.log(np.asarray(x, dtype=float))
        return -lx - math.log(s) - _LOG_SQRT_2PI - 0.5 * ((lx - mu) / s) ** 2

    def cdf(self, x):
        mu, s = self.params
        with np.errstate(divide="ignore"):
            return ndtr((np.log(np.asarray(x, dtype=float)) - mu) / s)

    def sf(self, x):
        mu, s = self.params
        with np.errstate(divide="ignore"):
            return ndtr(-(np.log(np.asarray(x, dtype=float)) - mu) / s)

    def isf(self, q):
        mu, s = self.params
        return np.exp(mu - s * ndtri(q))

    def to_unconstrained(self):
        mu, s = self.params
        return np.array([mu, math.log(s)])

    @classmethod
    def from_unconstrained(cls, z):
        return cls(float(z[0]), math.exp(float(z[1])))

    @classmethod
    def mle(cls, x):
        lx = np.log(np.asarray(x, dtype=float))
        return cls(float(lx.mean()), float(lx.std()))

    @classmethod
    def start(cls, x):
        lx = np.log(np.asarray(x, dtype=float))
        return cls(float(lx.mean()), max(float(lx.std()), 1e-6))


class WeibullFamily(MarginalFamily):
    """Weibull with ``shape`` k and ``scale`` lambda."""
    tag = "weibull"
    param_names = ("shape", "scale")

    def logpdf(self, x):
        k, lam = self.params
        z = np.asarray(x, dtype=float) / lam
        return math.log(k / lam) + (k - 1.0) * np.log(z) - z ** k

    def cdf(self, x):
        k, lam = self.params
        return -np.expm1(-(np.clip(x, 0.0, None) / lam) ** k)

    def sf(self, x):
        k, lam = self.params
        return np.exp(-(np.clip(x, 0.0, None) / lam) ** k)

    def isf(self, q):
        k, lam = self.params
        return lam * (-np.log(q)) ** (1.0 / k)

    @classmethod
    def start(cls, x):
        x = np.asarray(x, dtype=float)
        m, sd = float(x.mean()), float(x.std())
        cv = sd / m if m > 0 else 1.0
        k = min(max(cv ** -1.086, 0.05), 50.0) if cv > 0 else 50.0
        return cls(k, m / math.exp(gammaln(1.0 + 1.0 / k)))


FAMILIES = {cls.tag: cls for cls in (GammaFamily, LogNormalFamily, WeibullFamily)}
DEFAULT_CANDIDATES = ("gamma", "lognormal", "weibull")


def family(tag, *params):
    try:
        cls = FAMILIES[tag.lower()]
    except KeyError:
        raise DomainError(f"unknown marginal family {tag!r}; choose from {sorted(FAMILIES)}") from None
    return cls(*params)
