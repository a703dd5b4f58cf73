import numpy as np
import pytest
from hypothesis import given, strategies as st

from compound_levy.errors import DomainError
from compound_levy.inference import cpp_loglik, cpp_loglik_terms, rate_split, threshold_loglik
from compound_levy.levy_copula import AlphaClaytonParams, alpha_clayton
from compound_levy.marginals import GammaFamily, LogNormalFamily
from compound_levy.observations import ObservationSet
from compound_levy.process_model import CompoundModel, bivariate_tail
from compound_levy.simulation import TruncationSpec, compound_path, compound_poisson_sample, threshold_observations

G = GammaFamily(2.0, 3.0)
L = LogNormalFamily(0.0, 0.5)
COP = AlphaClaytonParams(0.5, 1.0, 10.0)
TRUTH = CompoundModel.from_params(0.5, 1.0, 1.0, 2.0, 10.0, 5.0)


def _cpp_obs(seed=1, T=20.0):
    return ObservationSet.from_path(compound_poisson_sample(5.0, 4.0, G, L, COP, T, seed))


def test_empty_cpp_is_exponent():
    obs = ObservationSet(3.0, [], [], [])
    expected = -(5.0 + 4.0 - alpha_clayton(COP, 5.0, 4.0)) * 3.0
    assert cpp_loglik(obs, 5.0, 4.0, G, L, COP) == pytest.approx(expected, rel=1e-15)


def test_rate_split_identity():
    a, b, c = rate_split(5.0, 4.0, COP)
    assert a + b + c == 5.0 + 4.0 - c
    assert c == alpha_clayton(COP, 5.0, 4.0)


def test_single_parallel_jump_by_hand():
    from compound_levy.levy_copula import alpha_clayton_density
    obs = ObservationSet(1.0, [], [], [[0.4, 1.1]])
    u1, u2 = 5.0 * G.sf(0.4), 4.0 * L.sf(1.1)
    expected = (-(9.0 - alpha_clayton(COP, 5.0, 4.0)) + np.log(20.0) + G.logpdf(0.4) + L.logpdf(1.1)
                + np.log(alpha_clayton_density(COP, u1, u2)))
    assert cpp_loglik(obs, 5.0, 4.0, G, L, COP) == pytest.approx(expected, rel=1e-12)


def test_dependence_beats_independence_on_comonotone_data():
    w = np.linspace(0.2, 2.0, 20)
    obs = ObservationSet(1.0, [], [], np.column_stack([w, G.isf(L.sf(w))]))
    dep = cpp_loglik(obs, 5.0, 5.0, L, G, AlphaClaytonParams(0.05))
    ind = cpp_loglik(obs, 5.0, 5.0, L, G, AlphaClaytonParams(20.0))
    assert dep > ind + 50


def test_swap_symmetry():
    obs = _cpp_obs()
    swapped = ObservationSet(obs.T, obs.perp2, obs.perp1, obs.parallel[:, ::-1])
    cop = AlphaClaytonParams(0.7, 3.0, 3.0)
    a = cpp_loglik(obs, 5.0, 4.0, G, G, cop)
    b = cpp_loglik(swapped, 4.0, 5.0, G, G, cop)
    assert a == pytest.approx(b, rel=1e-12)


def test_additivity_over_time_partition():
    obs = _cpp_obs()
    rng = np.random.default_rng(0)
    cut = lambda x: rng.random(x.shape[0]) < 0.4
    m1, m2, mp = cut(obs.perp1), cut(obs.perp2), cut(obs.parallel)
    a = ObservationSet(obs.T * 0.4, obs.perp1[m1], obs.perp2[m2], obs.parallel[mp])
    b = ObservationSet(obs.T * 0.6, obs.perp1[~m1], obs.perp2[~m2], obs.parallel[~mp])
    whole = cpp_loglik(obs, 5.0, 4.0, G, L, COP)
    parts = cpp_loglik(a, 5.0, 4.0, G, L, COP) + cpp_loglik(b, 5.0, 4.0, G, L, COP)
    assert whole == pytest.approx(parts, rel=1e-12)


def test_reordering_invariance():
    obs = _cpp_obs()
    rev = ObservationSet(obs.T, obs.perp1[::-1], obs.perp2[::-1], obs.parallel[::-1])
    assert cpp_loglik(obs, 5.0, 4.0, G, L, COP) == pytest.approx(cpp_loglik(rev, 5.0, 4.0, G, L, COP), rel=1e-13)


def test_terms_sum():
    t = cpp_loglik_terms(_cpp_obs(), 5.0, 4.0, G, L, COP)
    assert sum(t.values()) == pytest.approx(cpp_loglik(_cpp_obs(), 5.0, 4.0, G, L, COP), rel=1e-15)
    with pytest.raises(DomainError):
        cpp_loglik(_cpp_obs(), 0.0, 4.0, G, L, COP)


def _threshold_obs(seed=3):
    path = compound_path(TRUTH, 1.0, TruncationSpec(1e-7), seed)
    return threshold_observations(path, 1e-6, 1e-5)


def test_threshold_empty_is_exponent():
    obs = ObservationSet(2.0, [], [], np.empty((0, 2)))
    assert threshold_loglik(obs, TRUTH, 1e-3, 1e-2) == pytest.approx(-2.0 * bivariate_tail(TRUTH, 1e-3, 1e-2))


def test_threshold_two_forms_agree():
    obs = _threshold_obs()
    assert obs.counts[2] > 100
    a = threshold_loglik(obs, TRUTH, 1e-6, 1e-5, form="intensity")
    b = threshold_loglik(obs, TRUTH, 1e-6, 1e-5, form="copula")
    assert a == pytest.approx(b, rel=1e-8)


@given(st.floats(0.1, 0.9), st.floats(0.3, 5), st.floats(0.5, 5), st.floats(0.3, 12), st.floats(0.5, 5),
       st.integers(0, 2 ** 32))
def test_threshold_forms_agree_random(s, a1, b1, a2, b2, seed):
    m = CompoundModel.from_params(s, 1.0, a1, b1, a2, b2)
    rng = np.random.default_rng(seed)
    w = np.exp(rng.uniform(-3, 2, size=(20, 2)))
    obs = ObservationSet(1.5, [], [], w)
    a = threshold_loglik(obs, m, 0.01, 0.01, form="intensity")
    b = threshold_loglik(obs, m, 0.01, 0.01, form="copula")
    assert a == pytest.approx(b, rel=1e-8)


def test_threshold_exponent_monotone_in_eps():
    obs = ObservationSet(1.0, [], [], [[1.0, 1.0]])
    lls = [threshold_loglik(obs, TRUTH, e, 0.1) for e in (1e-3, 1e-2, 1e-1, 0.5)]
    assert np.all(np.diff(lls) > 0)


def test_threshold_preconditions():
    obs = ObservationSet(1.0, [], [], [[1e-7, 1.0]])
    with pytest.raises(DomainError):
        threshold_loglik(obs, TRUTH, 1e-6, 1e-5)
    with pytest.raises(DomainError):
        threshold_loglik(ObservationSet(1.0, [1.0], [], []), TRUTH, 1e-6, 1e-5)
    with pytest.raises(DomainError):
        threshold_loglik(ObservationSet(1.0, [], [], []), TRUTH, 1e-6, 1e-5, form="other")
