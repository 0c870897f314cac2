"""Tests for deficit_lab.scenarios."""

import time

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from deficit_lab.engine.optimizer import OptimizerConfig, maximize_c_hv, maximize_delta_cl
from deficit_lab.errors import DimensionMismatchError
from deficit_lab.quantum.channel import identity_channel, make_sw99_channel
from deficit_lab.quantum.measurement import computational_measurement, support_basis
from deficit_lab.quantum.measures import c_hv
from deficit_lab.quantum.state import holevo_chi, partial_trace
from deficit_lab.scenarios import (
    PublishedComparison,
    ScenarioReport,
    ScenarioRunner,
    diagram_check,
    knr01_ensemble,
    lemma1_report,
    lemma2_demo,
    orthogonal_ensemble_scan,
    orthogonal_ensemble_search,
    sw99_ensemble,
)

from .conftest import random_kraus_channel, rng_for, seeds

SW99_ORTHOGONAL_CHI = 0.456694
SW99_ORTHOGONAL_CHI_DEFAULT_GRID = 0.456621


@pytest.fixture(scope="module")
def runner() -> ScenarioRunner:
    return ScenarioRunner(OptimizerConfig(grid_points_per_angle=24, restarts=4))


def _report(reports, name):
    return next(r for r in reports if r.name == name)


class TestConstructions:
    def test_sw99_sign(self):
        assert sw99_ensemble().states[1][1] == pytest.approx(-0.6)
        assert sw99_ensemble(relative_sign=1).states[1][1] == pytest.approx(0.6)
        with pytest.raises(ValueError):
            sw99_ensemble(relative_sign=0)

    def test_sw99_state(self, sw99):
        assert sw99.dims == (2, 2)

    def test_knr01_default_amplitude(self):
        construction = knr01_ensemble()
        assert construction.constants["a_used"] == pytest.approx(0.5701581, abs=1e-7)
        assert construction.constants["raw_norm"] == pytest.approx(1.0, abs=1e-12)
        assert construction.weights.sum() == pytest.approx(1.0, abs=1e-12)

    def test_knr01_printed_amplitude_is_normalized(self):
        construction = knr01_ensemble(a=0.0701579)
        assert construction.constants["raw_norm"] == pytest.approx(0.824525, abs=1e-6)
        for state in construction.states:
            assert np.linalg.norm(state) == pytest.approx(1.0, abs=1e-12)

    def test_knr01_alice_rank(self, knr01):
        assert knr01.dims == (3, 2)
        support, kernel = support_basis(partial_trace(knr01, "A"))
        assert support.shape[1] == 2
        assert kernel.shape[1] == 1

    @pytest.mark.parametrize("construction", [sw99_ensemble(), knr01_ensemble()], ids=["sw99", "knr01"])
    def test_computational_c_hv_is_output_chi(self, construction):
        m = computational_measurement(len(construction.states))
        assert c_hv(construction.state(), m) == pytest.approx(holevo_chi(construction.output_ensemble()), abs=1e-9)


class TestScenarioReport:
    def test_checks(self):
        report = ScenarioReport("demo")
        assert report.check_close("close", 1.0, 1.0005, 1e-3)
        assert report.check_greater("greater", 1.0, 1.5, margin=0.1)
        assert not report.check_greater("greater with margin", 1.0, 1.05, margin=0.1)
        assert report.check_less("less", 1.0, 0.5)
        assert report.check_at_least("at least", 1.0, 0.9999, 1e-3)
        assert report.check_at_most("at most", 1.0, 1.0)
        assert report.check_flag("flag", True, True)
        assert not report.overall
        assert [c.passed for c in report.checks] == [True, True, False, True, True, True, True]

    def test_empty_report_passes(self):
        assert ScenarioReport("empty").overall

    def test_comparisons_do_not_fail(self):
        report = ScenarioReport("demo")
        report.compare("value", 0.45667, 0.467595)
        assert report.overall
        data = report.to_dict()
        assert data["comparisons"][0]["status"] == "DEVIATES"
        assert data["comparisons"][0]["deviation"] == pytest.approx(0.010925)

    def test_published_comparison(self):
        assert PublishedComparison("x", 0.32499, 0.32470).matches
        assert not PublishedComparison("x", 0.3356, 0.3245).matches

    def test_quantity(self):
        report = ScenarioReport("demo")
        assert report.quantity("rank", np.int64(2)) == 2.0
        assert report.to_dict()["quantities"] == {"rank": 2.0}


class TestDiagram:
    @pytest.mark.parametrize("construction", [sw99_ensemble(), knr01_ensemble()], ids=["sw99", "knr01"])
    def test_paths_commute(self, construction):
        report = diagram_check(construction.weights, construction.states, construction.channel)
        assert report.overall
        assert report.quantities["max member deviation"] <= 1e-9

    def test_identity_channel(self):
        report = diagram_check([0.5, 0.5], [[1, 0], [0, 1]], identity_channel(2))
        assert report.overall
        assert report.quantities["holevo chi of output ensemble"] == pytest.approx(1.0, abs=1e-12)

    @given(seeds, st.integers(min_value=2, max_value=4), st.integers(min_value=2, max_value=3))
    def test_random_ensembles_and_channels(self, seed, n_states, d):
        rng = rng_for(seed)
        weights = rng.dirichlet(np.ones(n_states)) + 0.1
        vectors = rng.standard_normal((n_states, d)) + 1j * rng.standard_normal((n_states, d))
        vectors /= np.linalg.norm(vectors, axis=1, keepdims=True)
        report = diagram_check(weights / weights.sum(), list(vectors), random_kraus_channel(d, rng))
        assert report.overall


class TestOrthogonalScan:
    def test_sw99_channel(self):
        scan = orthogonal_ensemble_search(make_sw99_channel())
        assert scan.value <= SW99_ORTHOGONAL_CHI + 1e-6
        assert scan.value == pytest.approx(SW99_ORTHOGONAL_CHI_DEFAULT_GRID, abs=1e-5)
        assert 0.0 <= scan.weight <= 1.0

    def test_identity_channel_reaches_one_bit(self):
        assert orthogonal_ensemble_scan(identity_channel(2), grid_points=16) == pytest.approx(1.0, abs=1e-9)

    def test_non_orthogonal_inputs_do_better(self):
        chi = holevo_chi(sw99_ensemble().output_ensemble())
        assert orthogonal_ensemble_scan(make_sw99_channel(), grid_points=32) < chi

    def test_requires_qubit_channel(self):
        with pytest.raises(DimensionMismatchError):
            orthogonal_ensemble_scan(identity_channel(3))


class TestLemmas:
    def test_lemma1_bell(self, bell, small_config):
        report = lemma1_report(bell, small_config)
        assert report.overall
        assert report.quantities["gap"] == pytest.approx(0.0, abs=1e-6)
        assert report.notes

    def test_lemma1_product(self, product, small_config):
        report = lemma1_report(product, small_config)
        assert report.overall
        assert report.quantities["C_HV"] == pytest.approx(0.0, abs=1e-9)

    def test_lemma1_sw99(self, sw99, small_config):
        report = lemma1_report(sw99, small_config)
        assert report.overall
        assert report.quantities["gap"] > 1e-3

    def test_lemma2_sw99(self, sw99, small_config):
        report = lemma2_demo(sw99, computational_measurement(2), small_config)
        assert report.overall
        before = report.quantities["Delta_cl(rho)"]
        after = report.quantities["Delta_cl(rho') [given basis]"]
        assert after == pytest.approx(0.467595, abs=2e-3)
        assert after - before > 5e-3

    def test_lemma2_reuses_given_optima(self, sw99, small_config):
        chv = maximize_c_hv(sw99, small_config)
        dcl = maximize_delta_cl(sw99, small_config, initial_bases=[chv.basis])
        report = lemma2_demo(sw99, computational_measurement(2), small_config, optima=(chv, dcl))
        assert report.overall
        assert report.quantities["C_HV(rho)"] == chv.value
        assert report.quantities["Delta_cl(rho)"] == dcl.value

    def test_lemma2_classical(self, classical, small_config):
        report = lemma2_demo(classical, computational_measurement(2), small_config)
        assert report.overall
        assert report.quantities["Delta_cl(rho') [given basis]"] == pytest.approx(1.0, abs=1e-8)


class TestScenarioRunner:
    def test_targets(self, runner):
        assert runner.targets == ["chi-scan", "diagram", "knr01", "lemma1", "lemma2", "sw99"]

    def test_unknown_target(self, runner):
        with pytest.raises(ValueError):
            runner.run("nope")

    def test_light_config(self):
        assert ScenarioRunner(OptimizerConfig(restarts=32)).light_config.restarts == 2
        assert ScenarioRunner(OptimizerConfig(restarts=1)).light_config.restarts == 1

    def test_default_budget(self):
        config = ScenarioRunner().config
        assert config.restarts == 8
        assert config.refine_tolerance == 1e-7
        assert config.max_refine_iterations == 800
        assert config.grid_points_per_angle == 64

    def test_sw99_optima_are_shared(self, runner):
        (sw99_report,) = runner.run("sw99")
        lemma1 = _report(runner.run("lemma1"), "lemma1/sw99")
        lemma2 = _report(runner.run("lemma2"), "lemma2/sw99")
        assert lemma1.quantities["C_HV"] == sw99_report.quantities["C_HV (optimizer)"]
        assert lemma2.quantities["C_HV(rho)"] == sw99_report.quantities["C_HV (optimizer)"]
        assert lemma2.quantities["Delta_cl(rho)"] == sw99_report.quantities["Delta_cl (optimizer)"]

    def test_sw99(self, runner):
        (report,) = runner.run("sw99")
        assert report.overall
        assert report.quantities["c_HV(computational)"] == pytest.approx(0.467595, abs=1e-5)
        assert report.quantities["c_HV(eigenbasis)"] == pytest.approx(0.324521, abs=1e-5)
        statuses = {c.label: c.matches for c in report.comparisons}
        assert statuses["c_HV(computational)"] is False

    def test_knr01(self, runner):
        (report,) = runner.run("knr01")
        assert report.overall
        assert report.quantities["rank(rho_A)"] == 2.0
        assert report.quantities["c_HV(computational)"] == pytest.approx(0.32499, abs=5e-4)

    def test_diagram(self, runner):
        reports = runner.run("diagram")
        assert [r.name for r in reports] == ["diagram/sw99", "diagram/knr01", "diagram/identity"]
        assert all(r.overall for r in reports)

    def test_chi_scan(self, runner):
        (report,) = runner.run("chi-scan")
        assert report.overall

    def test_lemma2(self, runner):
        reports = runner.run("lemma2")
        assert all(r.overall for r in reports)
        assert _report(reports, "lemma2/bell").quantities["C_HV(rho)"] == pytest.approx(1.0, abs=1e-8)


class TestDeskScale:
    @pytest.mark.parametrize("target", ["sw99", "knr01", "lemma1", "lemma2", "diagram", "chi-scan"])
    def test_target_finishes_within_ten_seconds(self, target):
        runner = ScenarioRunner()
        start = time.perf_counter()
        reports = runner.run(target)
        elapsed = time.perf_counter() - start
        assert all(r.overall for r in reports)
        assert elapsed < 10.0
