"""Series-representation samplers.

Ferguson-Klass for the stable directing subordinator, score-multiplied
compound paths, thresholded observation, and a bivariate compound Poisson
sampler driven by an alpha-Clayton Levy copula. All randomness flows from a
``numpy.random.Generator`` seeded by the caller; there is no global state.
"""

from dataclasses import dataclass

import numpy as np

from compound_levy.errors import DomainError
from compound_levy.levy_copula import alpha_clayton, alpha_clayton_d1, alpha_clayton_d2_pair, conditional_inverse
from compound_levy.observations import JumpPath, ObservationSet


@dataclass(frozen=True)
class TruncationSpec:
    tau: float

    def __post_init__(self):
        if not (np.isfinite(self.tau) and self.tau > 0):
            raise DomainError("truncation level tau must be positive")


def make_rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None or int(seed) < 0 or int(seed) >= 2 ** 64:
        raise DomainError("seed must be an unsigned 64-bit integer")
    return np.random.default_rng(int(seed))


def _check_T(T):
    if not (np.isfinite(T) and T > 0):
        raise DomainError("horizon T must be positive")


def _arrival_times(rng, limit):
    """Cumulative sums of unit exponentials up to and including ``limit``."""
    chunk = int(limit + 6.0 * np.sqrt(limit) + 16)
    parts = []
    last = 0.0
    while True:
        g = last + np.cumsum(rng.standard_exponential(chunk))
        parts.append(g)
        last = g[-1]
        if last > limit:
            break
    gam = np.concatenate(parts)
    return gam[gam <= limit]


def ferguson_klass_stable(d, T, trunc, seed):
    """Jumps of the stable directing subordinator on [0, T] with weight >= tau.

    Returns ``(times, weights)`` with weights in decreasing order. The k-th
    weight is ``(Gamma_k / (K T))^(-1/sigma)``; generation stops as soon as
    a weight would fall below ``tau``, i.e. at ``Gamma_k > K T tau^-sigma``.
    """
    _check_T(T)
    rng = make_rng(seed)
    limit = d.K * T * trunc.tau ** (-d.sigma)
    gam = _arrival_times(rng, limit)
    weights = (gam / (d.K * T)) ** (-1.0 / d.sigma)
    times = rng.uniform(0.0, T, size=gam.size)
    return times, weights


def _gamma_scores(m):
    def sample(rng, n):
        out = np.empty((n, 2))
        for j, w in enumerate(m.scores):
            out[:, j] = rng.gamma(w.alpha, 1.0 / w.beta, size=n)
        return out
    return sample


def compound_path(m, T, trunc, seed, score_sampler=None):
    """Truncated compound path: directing jumps times per-coordinate Gamma scores.

    ``score_sampler(rng, n) -> (n, 2) array`` overrides the Gamma scores.
    """
    rng = make_rng(seed)
    times, weights = ferguson_klass_stable(m.directing, T, trunc, rng)
    sampler = score_sampler or _gamma_scores(m)
    scores = np.asarray(sampler(rng, weights.size), dtype=float).reshape(weights.size, 2)
    w1 = weights * scores[:, 0]
    w2 = weights * scores[:, 1]
    kind = np.full(weights.size, "par", dtype="<U5")
    return JumpPath(T, times, w1, w2, kind).sorted()


def threshold_observations(path, eps1, eps2):
    """Keep the joint jumps whose two weights both exceed their thresholds."""
    if not (eps1 > 0 and eps2 > 0):
        raise DomainError("thresholds must be positive")
    keep = (path.w1 > eps1) & (path.w2 > eps2)
    return ObservationSet(path.T, [], [], np.column_stack([path.w1[keep], path.w2[keep]]))


def thresholded_path(path, eps1, eps2):
    keep = (path.w1 > eps1) & (path.w2 > eps2)
    return JumpPath(path.T, path.time[keep], path.w1[keep], path.w2[keep],
                    np.full(int(keep.sum()), "par", dtype="<U5"))


def compound_poisson_sample(lambda1, lambda2, F1, F2, cop, T, seed):
    """Bivariate compound Poisson path with marginal rates ``lambda_j``, jump laws ``F_j`` and Levy copula ``cop``.

    Jumps are generated in tail-integral coordinates ``u_j = lambda_j S_j(w)``.
    Every coordinate-1 jump has ``u1`` uniform on ``(0, lambda1)``; its
    partner ``u2`` is drawn from the conditional law ``dC/du1(u1, .)`` and the
    jump is joint when ``u2 < lambda2`` (otherwise coordinate 2 does not
    jump). Coordinate-2-only jumps are a thinning of a rate-``lambda2``
    stream with retention ``1 - dC/du2(lambda1, u2)``. This yields joint
    jumps at rate ``C(lambda1, lambda2)`` and marginal jump laws exactly
    ``F1`` and ``F2``.
    """
    _check_T(T)
    if not (lambda1 > 0 and lambda2 > 0):
        raise DomainError("jump rates must be positive")
    rng = make_rng(seed)

    n1 = rng.poisson(lambda1 * T)
    u1 = lambda1 * (1.0 - rng.random(n1))
    q = 1.0 - rng.random(n1)
    # the partner falls below lambda2 exactly when q < dC/du1(u1, lambda2);
    # only those partners are needed, and the inverse can overflow far out
    joint = q < alpha_clayton_d1(cop, u1, np.full(n1, lambda2)) if n1 else np.zeros(0, dtype=bool)
    w1_a = F1.isf(u1 / lambda1)
    w2_a = np.zeros(n1)
    if joint.any():
        u2 = np.minimum(conditional_inverse(cop, u1[joint], q[joint]), lambda2)
        w2_a[joint] = F2.isf(u2 / lambda2)
    t_a = rng.uniform(0.0, T, size=n1)

    n2 = rng.poisson(lambda2 * T)
    v2 = lambda2 * (1.0 - rng.random(n2))
    keep_prob = alpha_clayton_d2_pair(cop, np.full(n2, lambda1), v2)[1] if n2 else np.empty(0)
    keep = rng.random(n2) < keep_prob
    v2 = v2[keep]
    w2_b = F2.isf(v2 / lambda2)
    t_b = rng.uniform(0.0, T, size=n2)[keep]

    kind = np.concatenate([np.where(joint, "par", "perp1"), np.full(v2.size, "perp2")]).astype("<U5")
    path = JumpPath(T, np.concatenate([t_a, t_b]), np.concatenate([w1_a, np.zeros(v2.size)]),
                    np.concatenate([w2_a, w2_b]), kind)
    return path.sorted()


def joint_rate(cop, lambda1, lambda2):
    """Rate of joint jumps, C(lambda1, lambda2)."""
    return float(alpha_clayton(cop, lambda1, lambda2))
