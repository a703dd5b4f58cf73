import json
import math

import numpy as np
import pytest

from compound_levy.errors import DomainError
from compound_levy.inference import (
    FitResult,
    fit_copula_two_step,
    fit_copula_variants,
    fit_marginal,
    fit_threshold_model,
    loglik_report,
    format_report,
    rate_estimates,
    select_marginal,
)
from compound_levy.levy_copula import AlphaClaytonParams
from compound_levy.marginals import GammaFamily, LogNormalFamily, WeibullFamily
from compound_levy.observations import ObservationSet
from compound_levy.process_model import CompoundModel
from compound_levy.simulation import TruncationSpec, compound_path, compound_poisson_sample, threshold_observations

G = GammaFamily(2.0, 3.0)
L = LogNormalFamily(0.0, 0.5)


@pytest.fixture(scope="module")
def clayton_obs():
    return ObservationSet.from_path(compound_poisson_sample(20.0, 20.0, G, L, AlphaClaytonParams(0.5), 75.0, 1))


@pytest.fixture(scope="module")
def variants(clayton_obs):
    return fit_copula_variants(clayton_obs, G, L)


def test_gamma_recovery_median_over_seeds():
    fits = [fit_marginal(np.random.default_rng(s).gamma(2.0, 1 / 3.0, 5000), "gamma") for s in range(9)]
    assert all(f.converged for f in fits)
    assert np.median([f.params["shape"] for f in fits]) == pytest.approx(2.0, rel=0.05)
    assert np.median([f.params["rate"] for f in fits]) == pytest.approx(3.0, rel=0.05)


def test_lognormal_matches_closed_form():
    x = np.random.default_rng(4).lognormal(0.3, 0.8, 2000)
    fit = fit_marginal(x, "lognormal")
    logs = np.log(x)
    assert fit.params["mu"] == pytest.approx(logs.mean(), abs=1e-4)
    assert fit.params["sigma"] == pytest.approx(logs.std(), abs=1e-4)


def test_weibull_fit_runs():
    x = np.random.default_rng(5).weibull(1.5, 3000) * 2.0
    fit = fit_marginal(x, "weibull")
    assert fit.params["shape"] == pytest.approx(1.5, rel=0.05)
    assert fit.params["scale"] == pytest.approx(2.0, rel=0.05)


def test_degenerate_weights_do_not_crash():
    fit = fit_marginal(np.full(20, 1.5), "gamma")
    assert isinstance(fit.converged, bool)
    with pytest.raises(DomainError):
        fit_marginal([1.0], "gamma")
    with pytest.raises(DomainError):
        fit_marginal([1.0, -2.0], "gamma")
    with pytest.raises(DomainError):
        fit_marginal([1.0, 2.0], "pareto")


def test_select_marginal_prefers_gamma():
    picks = [select_marginal(np.random.default_rng(100 + s).gamma(2.0, 1 / 3.0, 5000))[0].tag for s in range(10)]
    assert picks.count("gamma") >= 9


def test_select_marginal_tie_break():
    x = np.random.default_rng(1).gamma(2.0, 1.0, 200)
    fam, _, _ = select_marginal(x, candidates=("gamma", "gamma"))
    assert fam.tag == "gamma"
    fam, _, ks = select_marginal(np.random.default_rng(2).lognormal(0, 1, 10))
    assert math.isfinite(ks)


def test_rate_estimates(clayton_obs):
    n1, n2, npar = clayton_obs.counts
    assert rate_estimates(clayton_obs) == ((n1 + npar) / 75.0, (n2 + npar) / 75.0)


def test_clayton_sigma_recovery(clayton_obs, variants):
    assert 900 < clayton_obs.counts[2] < 1200
    assert variants["clayton"].params["sigma"] == pytest.approx(0.5, rel=0.2)


def test_variant_parameter_counts(variants):
    assert set(variants["full"].params) == {"sigma", "alpha1", "alpha2"}
    sym = variants["symmetric"].params
    assert sym["alpha1"] == sym["alpha2"]
    assert list(variants["clayton"].params) == ["sigma"]
    assert variants["clayton"].fixed["alpha1"] == 1.0


def test_nested_ordering(variants):
    report = loglik_report(variants)
    assert report["nested_ok"]
    assert [r["variant"] for r in report["rows"]] == ["full", "symmetric", "clayton"]
    # the data are symmetric, so the extra asymmetry parameter buys little
    assert variants["full"].loglik - variants["symmetric"].loglik < 2.0
    assert "nested ordering holds: True" in format_report(report)


def test_loglik_report_flags_violation():
    mk = lambda ll: FitResult({"sigma": 1.0}, ll, True, 1)
    assert not loglik_report({"full": mk(1.0), "symmetric": mk(2.0), "clayton": mk(0.0)})["nested_ok"]


def test_reordering_invariance(clayton_obs):
    rev = ObservationSet(clayton_obs.T, clayton_obs.perp1[::-1], clayton_obs.perp2[::-1], clayton_obs.parallel[::-1])
    a = fit_copula_two_step(clayton_obs, G, L, "clayton")
    b = fit_copula_two_step(rev, G, L, "clayton")
    assert a.params["sigma"] == pytest.approx(b.params["sigma"], rel=1e-6)
    assert a.loglik == pytest.approx(b.loglik, rel=1e-10)


def test_copula_fit_needs_joint_jump():
    with pytest.raises(DomainError):
        fit_copula_two_step(ObservationSet(1.0, [1.0], [1.0], []), G, L)


def test_fit_result_json_round_trip(tmp_path, variants):
    fit = variants["full"]
    path = tmp_path / "fit.json"
    fit.write_json(path)
    data = json.loads(path.read_text())
    assert list(data) == ["params", "loglik", "converged", "iterations", "fixed"]
    back = FitResult.from_dict(data)
    assert back.params == pytest.approx(fit.params) and back.loglik == fit.loglik
    assert [p.name for p in tmp_path.iterdir()] == ["fit.json"]


def test_write_json_leaves_nothing_on_failure(tmp_path):
    bad = FitResult({"x": 1.0}, 0.0, True, 1, {"obj": object()})
    with pytest.raises(TypeError):
        bad.write_json(tmp_path / "fit.json")
    assert list(tmp_path.iterdir()) == []


def test_threshold_fit_small_sample():
    truth = CompoundModel.from_params(0.5, 1.0, 1.0, 2.0, 10.0, 5.0)
    obs = threshold_observations(compound_path(truth, 1.0, TruncationSpec(1e-8), 7), 1e-6, 1e-5)
    full = fit_threshold_model(obs, 1e-6, 1e-5)
    sym = fit_threshold_model(obs, 1e-6, 1e-5, variant="symmetric")
    assert set(full.params) == {"alpha1", "beta1", "alpha2", "beta2", "sigma"}
    assert full.fixed["K"] == 1.0 and sym.fixed["beta1"] == 1.0
    assert 0 < full.params["sigma"] < 1
    assert full.loglik > sym.loglik
    assert full.params["sigma"] == pytest.approx(0.5, rel=0.2)
    with pytest.raises(DomainError):
        fit_threshold_model(ObservationSet(1.0, [], [], []), 1e-6, 1e-5)
