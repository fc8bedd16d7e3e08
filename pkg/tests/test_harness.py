import csv
import json

import numpy as np
import pytest

from mafa import FaConfig, InvalidArgumentError, NumericFailureError
from mafa import harness
from mafa.array_model import angle_grid
from mafa.harness import CampaignSpec, audit, run_campaign, run_seed, sample_directions, write_outputs

BASE = {"n_antennas": 4, "segment_length_wl": 4.0, "min_spacing_wl": 0.5, "interference_threshold": 0.1}
SMALL = FaConfig(population=6, max_generations=8)


class TestSampleDirections:
    def test_standard_grid(self):
        grid = angle_grid(5.0)
        assert grid.size == 37
        intended, unintended = sample_directions(2, 2, grid, np.random.default_rng(0))
        angles = intended + unintended
        assert len(set(angles)) == 4 and len(intended) == 2
        assert all(a % 5 == 0 and 0 <= a <= 180 for a in angles)

    def test_exhaustion(self):
        intended, unintended = sample_directions(37, 0, angle_grid(5.0), np.random.default_rng(1))
        assert sorted(intended) == list(angle_grid(5.0)) and unintended == []

    def test_reproducible(self):
        a = sample_directions(3, 4, angle_grid(5.0), np.random.default_rng(9))
        b = sample_directions(3, 4, angle_grid(5.0), np.random.default_rng(9))
        assert a == b

    def test_too_many(self):
        with pytest.raises(InvalidArgumentError):
            sample_directions(30, 8, angle_grid(5.0), np.random.default_rng(0))


def test_run_seed_independent_streams():
    seeds = {run_seed(0, d, r) for d in range(5) for r in range(5)}
    assert len(seeds) == 25
    assert run_seed(0, 1, 2) == run_seed(0, 1, 2) != run_seed(1, 1, 2)


def _spec(**kw):
    params = dict(base_scenario=BASE, n_distributions=2, runs_per_distribution=3, fa_config=SMALL, master_seed=7)
    params.update(kw)
    return CampaignSpec(**params)


class TestCampaignSpec:
    def test_points_cartesian(self):
        spec = _spec(sweep={"n_antennas": [4, 5], "interference_threshold": [0.1, 0.01]})
        pts = spec.points()
        assert len(pts) == 4
        assert [(p["n_antennas"], p["interference_threshold"]) for p in pts] == [
            (4, 0.1), (4, 0.01), (5, 0.1), (5, 0.01)]

    def test_from_dict(self):
        spec = CampaignSpec.from_dict({
            "base_scenario": BASE, "n_distributions": 1, "runs_per_distribution": 2,
            "angle_grid": {"start": 0, "stop": 180, "step": 5},
            "fa_config": {"population": 5, "max_generations": 4},
            "sweep": {"population": [5, 6]},
        })
        assert spec.angle_grid == (0.0, 180.0, 5.0)
        assert spec.fa_config.population == 5

    @pytest.mark.parametrize(
        "kw",
        [
            dict(sweep={"colour": [1]}),
            dict(sweep={"population": []}),
            dict(t_intended=30, q_unintended=10),
            dict(intended_deg=[10.0]),
            dict(intended_deg=[10.0], unintended_deg=[20.0]),  # n_distributions = 2
            dict(base_scenario={"n_antennas": 4}),
        ],
    )
    def test_invalid(self, kw):
        with pytest.raises(InvalidArgumentError):
            _spec(**kw)

    def test_unknown_key(self):
        with pytest.raises(InvalidArgumentError, match="bogus"):
            CampaignSpec.from_dict({"base_scenario": BASE, "bogus": 1})


class TestRunCampaign:
    def test_aggregation(self):
        res = run_campaign(_spec(), workers=1)
        [point] = res.points
        assert len(point.runs) == 6 and len(point.distributions) == 2
        means = [d.mean for d in point.distributions]
        assert point.overall_mean == pytest.approx(np.mean(means), abs=1e-9)
        assert point.pooled_mean == pytest.approx(np.mean([r.best_min_gain for r in point.runs]), abs=1e-9)
        for d in point.distributions:
            assert d.min <= d.mean <= d.max
            assert len(set(d.intended) | set(d.unintended)) == 4

    def test_deterministic_and_order_independent(self):
        spec = _spec(sweep={"population": [4, 6]})
        a = run_campaign(spec, workers=1)
        b = run_campaign(spec, workers=2)
        key = lambda res: [(r.point_index, r.distribution_index, r.run_index, r.seed, r.best_min_gain, r.feasible)
                           for r in res.runs]
        assert key(a) == key(b)
        assert [p.overall_mean for p in a.points] == [p.overall_mean for p in b.points]

    def test_fixed_directions(self):
        spec = _spec(n_distributions=1, intended_deg=[100.0, 145.0], unintended_deg=[125.0, 165.0])
        [point] = run_campaign(spec, workers=1).points
        assert point.distributions[0].intended == (100.0, 145.0)
        assert point.params["q_unintended"] == 2

    def test_failed_runs_recorded(self, monkeypatch):
        real = harness.run

        def flaky(s, cfg):
            if cfg.rng_seed == run_seed(7, 0, 1):
                raise NumericFailureError("boom", generation=3)
            return real(s, cfg)

        monkeypatch.setattr(harness, "run", flaky)
        [point] = run_campaign(_spec(), workers=1).points
        assert point.failures == 1
        failed = [r for r in point.runs if r.failed]
        assert len(failed) == 1 and "boom" in failed[0].error
        assert point.distributions[0].n_ok == 2
        ok = [r.best_min_gain for r in point.runs if r.distribution_index == 0 and not r.failed]
        assert point.distributions[0].mean == pytest.approx(np.mean(ok))

    def test_feasible_records_pass_audit(self):
        spec = _spec(base_scenario=dict(BASE, interference_threshold=3.0),
                     fa_config=FaConfig(population=6, max_generations=8, penalty_schedule=1e6))
        res = run_campaign(spec, workers=1)
        for r in res.runs:
            if r.feasible:
                assert audit(r, spec).feasible


def test_write_outputs(tmp_path):
    spec = _spec(sweep={"n_antennas": [4, 5]})
    res = run_campaign(spec, workers=1)
    write_outputs(spec, res, tmp_path)
    with open(tmp_path / "gain_vs_na.csv") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["na", "i0", "mean_gain"]
    assert [r[0] for r in rows[1:]] == ["4", "5"]
    assert float(rows[1][2]) == pytest.approx(res.points[0].overall_mean)
    for name, header in [("gain_vs_q.csv", "q,i0,mean_gain"), ("gain_vs_omega.csv", "omega,na,i0,mean_gain"),
                         ("gain_vs_r.csv", "r,omega,i0,mean_gain"), ("pattern.csv", "angle_deg,gain")]:
        assert (tmp_path / name).read_text().splitlines()[0] == header
    assert len((tmp_path / "pattern.csv").read_text().splitlines()) == 182
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert len(summary["points"]) == 2


def test_workers_env(monkeypatch):
    monkeypatch.setenv("MAA_WORKERS", "3")
    assert harness.default_workers() == 3
    monkeypatch.setenv("MAA_WORKERS", "x")
    with pytest.raises(InvalidArgumentError):
        harness.default_workers()
