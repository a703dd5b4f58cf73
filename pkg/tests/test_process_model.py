import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate as si, optimize as so

from compound_levy.errors import DomainError
from oracles import tail_by_2d_quadrature
from compound_levy.levy_copula import AlphaClaytonParams, alpha_clayton_density
from compound_levy.numerics import QuadratureSpec, integrate_semi_infinite
from compound_levy.process_model import (
    CompoundModel,
    GammaDirecting,
    GammaScore,
    MomentModel,
    StableDirecting,
    bivariate_tail,
    correlation,
    covariance,
    fractional_moment_integral,
    fractional_moment_stable,
    levy_intensity,
    levy_intensity_quadrature,
    marginal_intensity,
    marginal_tail,
    marginal_tail_inverse,
    mean,
    variance,
    well_posed,
)

BASE = CompoundModel.from_params(0.5, 1.0, 1.0, 2.0, 10.0, 5.0)
UNIT = CompoundModel.from_params(0.5, 1.0, 1.0, 1.0, 1.0, 1.0)

models = st.builds(
    CompoundModel.from_params,
    st.floats(0.05, 0.95), st.floats(0.1, 10.0),
    st.floats(0.1, 20.0), st.floats(0.1, 10.0), st.floats(0.1, 20.0), st.floats(0.1, 10.0),
)


def test_intensity_unit_case():
    expected = 0.5 * math.gamma(2.5) * 2 ** -2.5
    assert levy_intensity(UNIT, 1.0, 1.0) == pytest.approx(expected, rel=1e-13)
    assert levy_intensity(UNIT, 1.0, 1.0) == pytest.approx(0.11749, abs=1e-5)


def test_intensity_vanishes_far_out():
    vals = [levy_intensity(BASE, s, 0.5) for s in (1e2, 1e4, 1e8)]
    assert vals[0] > vals[1] > vals[2] and vals[2] < 1e-30


def test_intensity_matches_directing_integral():
    assert levy_intensity(BASE, 0.3, 0.7) == pytest.approx(levy_intensity_quadrature(BASE, 0.3, 0.7), rel=1e-8)


@settings(max_examples=20)
@given(models, st.floats(-2, 2), st.floats(-2, 2))
def test_intensity_matches_directing_integral_random(m, l1, l2):
    s1, s2 = 10.0 ** l1, 10.0 ** l2
    assert levy_intensity(m, s1, s2) == pytest.approx(levy_intensity_quadrature(m, s1, s2), rel=1e-7)


@pytest.mark.parametrize("bad", [0.0, -1.0])
def test_intensity_domain(bad):
    with pytest.raises(DomainError):
        levy_intensity(BASE, bad, 1.0)
    with pytest.raises(DomainError):
        marginal_tail(BASE, 1, bad)
    with pytest.raises(DomainError):
        marginal_tail_inverse(BASE, 1, bad)
    with pytest.raises(DomainError):
        bivariate_tail(BASE, 1.0, bad)


def test_marginal_intensity_against_integral_over_s2():
    ref = si.quad(lambda s2: levy_intensity(UNIT, 1.0, s2), 0, np.inf, epsabs=1e-13, epsrel=1e-11)[0]
    assert marginal_intensity(UNIT, 1, 1.0) == pytest.approx(ref, rel=1e-8)
    assert marginal_intensity(UNIT, 1, 1.0) == pytest.approx(0.5 * math.gamma(1.5), rel=1e-13)


def test_marginal_scale_and_homogeneity():
    assert marginal_tail(BASE, 1, 1.0) == pytest.approx(2 ** -0.5 * math.gamma(1.5), rel=1e-13)
    ref = si.quad(lambda s: marginal_intensity(BASE, 1, s), 1.0, np.inf, epsrel=1e-12)[0]
    assert marginal_tail(BASE, 1, 1.0) == pytest.approx(ref, rel=1e-9)
    assert marginal_intensity(BASE, 2, 2.6) / marginal_intensity(BASE, 2, 1.3) == pytest.approx(2 ** -1.5)
    ys = np.array([0.1, 1.0, 10.0])
    assert np.allclose(marginal_tail(BASE, 2, ys) * ys ** 0.5, marginal_tail(BASE, 2, 1.0))


def test_marginal_tail_inverse():
    m = CompoundModel.from_params(0.5, 1.0, 1.0, 1.0, 3.0, 2.0)
    assert marginal_tail_inverse(m, 1, 1.0) == pytest.approx(math.gamma(1.5) ** 2, rel=1e-13)
    root = so.brentq(lambda y: marginal_tail(m, 1, y) - 1.0, 1e-3, 1e3, xtol=1e-15, rtol=1e-15)
    assert marginal_tail_inverse(m, 1, 1.0) == pytest.approx(root, rel=1e-12)
    u = np.geomspace(1e-4, 1e4, 41)
    for i in (1, 2):
        assert np.allclose(marginal_tail(m, i, marginal_tail_inverse(m, i, u)), u, rtol=1e-10, atol=0)
    assert marginal_tail_inverse(m, 1, 1e12) < 1e-20


@pytest.mark.parametrize("y", [(1.0, 1.0), (0.1, 3.0)])
def test_bivariate_tail_against_2d_quadrature(y):
    assert bivariate_tail(UNIT, *y) == pytest.approx(tail_by_2d_quadrature((0.5, 1, 1, 1, 1, 1), *y), rel=1e-6)
    assert bivariate_tail(BASE, *y) == pytest.approx(tail_by_2d_quadrature((0.5, 1, 1, 2, 10, 5), *y), rel=1e-6)


def test_bivariate_tail_marginal_limit():
    for y in (0.01, 1.0, 50.0):
        assert bivariate_tail(BASE, y, 1e-12) == pytest.approx(marginal_tail(BASE, 1, y), rel=1e-6)
        assert bivariate_tail(BASE, 1e-12, y) == pytest.approx(marginal_tail(BASE, 2, y), rel=1e-6)


@given(st.floats(0.1, 0.9), st.floats(0.1, 10), st.floats(0.1, 10), st.floats(-4, 4), st.floats(-4, 4))
def test_bivariate_tail_symmetry(s, a, b, l1, l2):
    m = CompoundModel.from_params(s, 1.0, a, b, a, b)
    y1, y2 = 10.0 ** l1, 10.0 ** l2
    assert bivariate_tail(m, y1, y2) == pytest.approx(bivariate_tail(m, y2, y1), rel=1e-12)


@given(models, st.floats(-3, 3), st.floats(-3, 3))
def test_bivariate_tail_bounded_by_marginals(m, l1, l2):
    y1, y2 = 10.0 ** l1, 10.0 ** l2
    u = bivariate_tail(m, y1, y2)
    assert 0 < u <= min(marginal_tail(m, 1, y1), marginal_tail(m, 2, y2)) * (1 + 1e-12)


@given(models, st.floats(-3, 3), st.floats(-3, 3))
def test_sklar_consistency(m, l1, l2):
    s1, s2 = 10.0 ** l1, 10.0 ** l2
    cop = AlphaClaytonParams(m.sigma, m.score(1).alpha, m.score(2).alpha)
    via_copula = (alpha_clayton_density(cop, marginal_tail(m, 1, s1), marginal_tail(m, 2, s2))
                  * marginal_intensity(m, 1, s1) * marginal_intensity(m, 2, s2))
    assert via_copula == pytest.approx(levy_intensity(m, s1, s2), rel=1e-8)


class InfiniteMeanScore:
    mean_is_finite = False


def test_well_posed():
    assert well_posed((GammaScore(1, 2), GammaScore(10, 5)))
    assert well_posed((GammaScore(0.01, 0.01), GammaScore(100, 1)))
    assert not well_posed((GammaScore(1, 2), InfiniteMeanScore()))


def test_parameter_validation():
    with pytest.raises(DomainError):
        StableDirecting(1.0)
    with pytest.raises(DomainError):
        StableDirecting(0.5, K=0.0)
    with pytest.raises(DomainError):
        GammaScore(0.0, 1.0)
    with pytest.raises(DomainError):
        GammaDirecting(1.0, -1.0)


def test_stable_laplace_exponent_against_quadrature():
    d = StableDirecting(0.5, 1.7)
    f = lambda z: -np.expm1(-2.0 * z) * d.intensity(z)
    ref = integrate_semi_infinite(f, QuadratureSpec(abs_tol=1e-12, rel_tol=1e-8))
    assert d.laplace_exponent(2.0) == pytest.approx(ref, rel=1e-7)


# moments with a Gamma directing measure --------------------------------

def test_mean_values():
    assert mean(MomentModel(GammaDirecting(1, 1), (GammaScore(1, 2), GammaScore(1, 1))), 1, 1.0) == pytest.approx(0.5)
    mm = MomentModel(GammaDirecting(2, 4), (GammaScore(1, 2), GammaScore(10, 5)))
    assert mean(mm, 2, 3.0) == pytest.approx(3.0)
    assert mean(mm, 1, 2.0) == pytest.approx(2 * mean(mm, 1, 1.0))
    with pytest.raises(DomainError):
        mean(mm, 1, 0.0)


def _bondesson_paths(a, b, scores, t, n, rng, terms=400):
    # sum_k exp(-Gamma_k / (t a)) V_k / b is Gamma(t a, b); each directing jump
    # gets its own independent score pair
    g = np.cumsum(rng.standard_exponential((n, terms)), axis=1)
    z = np.exp(-g / (t * a)) * rng.standard_exponential((n, terms)) / b
    w1 = rng.gamma(scores[0].alpha, 1 / scores[0].beta, (n, terms))
    w2 = rng.gamma(scores[1].alpha, 1 / scores[1].beta, (n, terms))
    return (z * w1).sum(axis=1), (z * w2).sum(axis=1)


def test_moments_against_series_simulation():
    scores = (GammaScore(1, 2), GammaScore(10, 5))
    mm = MomentModel(GammaDirecting(2, 4), scores)
    y1, y2 = _bondesson_paths(2, 4, scores, 3.0, 40000, np.random.default_rng(5))
    assert abs(y2.mean() - mean(mm, 2, 3.0)) < 3 * y2.std() / math.sqrt(y2.size)
    assert abs(y1.mean() - mean(mm, 1, 3.0)) < 3 * y1.std() / math.sqrt(y1.size)
    assert y1.var() == pytest.approx(variance(mm, 1, 3.0), rel=0.05)
    assert np.cov(y1, y2)[0, 1] == pytest.approx(covariance(mm, 1, 2, 3.0), rel=0.05)
    # Fisher z-interval for the correlation
    r = np.corrcoef(y1, y2)[0, 1]
    se = 1 / math.sqrt(y1.size - 3)
    assert abs(math.atanh(r) - math.atanh(correlation(mm, 1, 2))) < 3 * se


def test_correlation_properties():
    scores = (GammaScore(1, 2), GammaScore(10, 5))
    c = correlation(MomentModel(GammaDirecting(1, 1), scores), 1, 2)
    assert c == pytest.approx(math.sqrt(10 / 22), rel=1e-12)
    for a, b in ((0.3, 2.0), (5.0, 0.1), (1.0, 9.0)):
        assert correlation(MomentModel(GammaDirecting(a, b), scores), 1, 2) == c
    big = MomentModel(GammaDirecting(1, 1), (GammaScore(1e8, 1), GammaScore(1e8, 3)))
    assert correlation(big, 1, 2) == pytest.approx(1.0, abs=1e-7)
    mm = MomentModel(GammaDirecting(2, 3), scores)
    assert covariance(mm, 1, 2, 4.0) == pytest.approx(2 * covariance(mm, 1, 2, 2.0))
    assert 0 < c <= 1


# fractional moments -----------------------------------------------------

def test_fractional_moment_degenerate_scores():
    # E[W^sigma] = 1 leaves the plain stable formula
    m = CompoundModel.from_params(0.5, 2.0, 1e12, 1e12, 1.0, 1.0)
    p, t = 0.3, 1.5
    c = t * 2.0 * math.gamma(0.5)
    expected = c ** (p / 0.5) * math.gamma(1 - p / 0.5) / math.gamma(1 - p)
    assert fractional_moment_stable(m, 1, t, p) == pytest.approx(expected, rel=1e-10)


def test_fractional_moment_reference_values():
    v1 = fractional_moment_stable(BASE, 1, 1.0, 0.49)
    v2 = fractional_moment_stable(BASE, 2, 1.0, 0.49)
    assert v1 == pytest.approx(fractional_moment_integral(BASE, 1, 1.0, 0.49), rel=1e-6)
    assert v1 == pytest.approx(31.5237, rel=1e-5)
    assert v2 > v1


@pytest.mark.parametrize("t", [0.1, 1.0, 7.0])
@pytest.mark.parametrize("p", [1e-3, 0.25, 0.49])
def test_fractional_moment_integral_agrees(t, p):
    for i in (1, 2):
        assert fractional_moment_integral(BASE, i, t, p) == pytest.approx(fractional_moment_stable(BASE, i, t, p), rel=1e-6)


def test_fractional_moment_small_p_limit():
    assert fractional_moment_integral(BASE, 1, 1.0, 1e-6) == pytest.approx(1.0, abs=1e-5)


def test_fractional_moment_monotone_in_t():
    ts = np.linspace(0.05, 1.0, 20)
    vals = [fractional_moment_stable(BASE, 1, t, 0.49) for t in ts]
    assert np.all(np.diff(vals) > 0)


@pytest.mark.parametrize("p", [0.0, 0.5, 0.7, -0.1])
def test_fractional_moment_domain(p):
    with pytest.raises(DomainError):
        fractional_moment_stable(BASE, 1, 1.0, p)
    with pytest.raises(DomainError):
        fractional_moment_integral(BASE, 1, 1.0, p)


def test_fractional_moment_matches_simulation_at_low_order():
    # E[Y^p] has finite variance for 2p < sigma, so the sample mean is well behaved
    from compound_levy.simulation import TruncationSpec, compound_path
    ys = np.array([compound_path(BASE, 1.0, TruncationSpec(1e-6), s).w1.sum() for s in range(1500)])
    v = ys ** 0.1
    assert abs(v.mean() - fractional_moment_stable(BASE, 1, 1.0, 0.1)) < 3 * v.std() / math.sqrt(v.size)
