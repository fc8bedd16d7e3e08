"""Monte Carlo campaigns over random direction sets and seeded runs."""

import csv
import itertools
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .array_model import angle_grid, pattern_sweep
from .errors import InvalidArgumentError, MafaError
from .firefly import FaConfig, run
from .problem import Candidate, Scenario, evaluate_feasibility
from .validation import check_int

SWEEP_PARAMETERS = ("n_antennas", "q_unintended", "interference_threshold", "population", "max_generations")
FIGURE_FILES = {
    "gain_vs_na.csv": ("na", "i0"),
    "gain_vs_q.csv": ("q", "i0"),
    "gain_vs_omega.csv": ("omega", "na", "i0"),
    "gain_vs_r.csv": ("r", "omega", "i0"),
}
_COLUMN_SOURCE = {
    "na": "n_antennas",
    "q": "q_unintended",
    "i0": "interference_threshold",
    "omega": "population",
    "r": "max_generations",
}


def sample_directions(t, q, grid, rng):
    """Draw ``t`` intended and ``q`` unintended distinct angles from ``grid``."""
    grid = np.asarray(grid, dtype=float)
    t = check_int(t, "t", 0)
    q = check_int(q, "q", 0)
    if t + q > grid.size:
        raise InvalidArgumentError(f"t + q = {t + q} exceeds the {grid.size} grid angles")
    picks = rng.choice(grid.size, size=t + q, replace=False)
    angles = [float(a) for a in grid[picks]]
    return angles[:t], angles[t:]


def run_seed(master_seed, distribution_index, run_index):
    """Independent 64-bit seed for one run of a campaign."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(1, distribution_index, run_index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _directions_rng(master_seed, distribution_index):
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(0, distribution_index)))


@dataclass(frozen=True)
class CampaignSpec:
    """Experiment description.

    ``base_scenario`` holds the scenario fields other than the direction
    sets (``n_antennas``, ``segment_length_wl``, ``min_spacing_wl``,
    ``interference_threshold``). Directions are either sampled per
    distribution or fixed via ``intended_deg``/``unintended_deg``.
    ``sweep`` maps parameter names from :data:`SWEEP_PARAMETERS` to value
    lists; the campaign runs over their Cartesian product.
    """

    base_scenario: dict
    n_distributions: int = 50
    runs_per_distribution: int = 50
    t_intended: int = 2
    q_unintended: int = 2
    angle_grid: tuple = (0.0, 180.0, 5.0)
    fa_config: FaConfig = field(default_factory=FaConfig)
    sweep: dict = field(default_factory=dict)
    master_seed: int = 0
    intended_deg: tuple = None
    unintended_deg: tuple = None

    def __post_init__(self):
        check_int(self.n_distributions, "n_distributions", 1)
        check_int(self.runs_per_distribution, "runs_per_distribution", 1)
        check_int(self.t_intended, "t_intended", 1)
        check_int(self.q_unintended, "q_unintended", 0)
        check_int(self.master_seed, "master_seed", 0)
        if len(self.angle_grid) != 3:
            raise InvalidArgumentError("angle_grid must be [start, stop, step]")
        object.__setattr__(self, "angle_grid", tuple(float(a) for a in self.angle_grid))
        for key in self.sweep:
            if key not in SWEEP_PARAMETERS:
                raise InvalidArgumentError(f"sweep key '{key}' is not one of {SWEEP_PARAMETERS}")
            if not self.sweep[key]:
                raise InvalidArgumentError(f"sweep key '{key}' has no values")
        fixed = (self.intended_deg is not None, self.unintended_deg is not None)
        if any(fixed) and not all(fixed):
            raise InvalidArgumentError("intended_deg and unintended_deg must be given together")
        if all(fixed):
            object.__setattr__(self, "intended_deg", tuple(float(a) for a in self.intended_deg))
            object.__setattr__(self, "unintended_deg", tuple(float(a) for a in self.unintended_deg))
            if self.n_distributions != 1:
                raise InvalidArgumentError("fixed directions require n_distributions = 1")
            if "q_unintended" in self.sweep:
                raise InvalidArgumentError("cannot sweep q_unintended with fixed directions")
        start, stop, step = self.angle_grid
        grid = angle_grid(step, start, stop)
        for point in self.points():
            if not all(fixed) and point["t_intended"] + point["q_unintended"] > grid.size:
                raise InvalidArgumentError("t_intended + q_unintended exceeds the angle grid")
        self._scenario_for(self.points()[0], [90.0], [])  # validates base_scenario

    @property
    def fixed_directions(self):
        return self.intended_deg is not None

    def grid(self):
        start, stop, step = self.angle_grid
        return angle_grid(step, start, stop)

    def points(self):
        """Sweep points as dicts of effective parameter values."""
        base = {
            "n_antennas": self.base_scenario.get("n_antennas"),
            "q_unintended": len(self.unintended_deg) if self.fixed_directions else self.q_unintended,
            "t_intended": len(self.intended_deg) if self.fixed_directions else self.t_intended,
            "interference_threshold": self.base_scenario.get("interference_threshold"),
            "population": self.fa_config.population,
            "max_generations": self.fa_config.max_generations,
        }
        keys = [k for k in SWEEP_PARAMETERS if k in self.sweep]
        out = []
        for values in itertools.product(*(self.sweep[k] for k in keys)):
            point = dict(base)
            point.update(zip(keys, values))
            out.append(point)
        return out

    def _scenario_for(self, point, intended, unintended):
        data = dict(self.base_scenario)
        data["n_antennas"] = point["n_antennas"]
        data["interference_threshold"] = point["interference_threshold"]
        data["intended_deg"] = list(intended)
        data["unintended_deg"] = list(unintended)
        return Scenario.from_dict(data)

    def directions(self, point, distribution_index):
        if self.fixed_directions:
            return list(self.intended_deg), list(self.unintended_deg)
        rng = _directions_rng(self.master_seed, distribution_index)
        return sample_directions(point["t_intended"], point["q_unintended"], self.grid(), rng)

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise InvalidArgumentError("campaign spec must be a JSON object")
        known = {
            "base_scenario", "n_distributions", "runs_per_distribution", "t_intended", "q_unintended",
            "angle_grid", "fa_config", "sweep", "master_seed", "intended_deg", "unintended_deg",
        }
        unknown = sorted(set(data) - known)
        if unknown:
            raise InvalidArgumentError(f"campaign spec has unknown key '{unknown[0]}'")
        if "base_scenario" not in data:
            raise InvalidArgumentError("campaign spec is missing key 'base_scenario'")
        params = dict(data)
        params["fa_config"] = FaConfig.from_dict(data.get("fa_config", {}))
        if "angle_grid" in data:
            grid = data["angle_grid"]
            if isinstance(grid, dict):
                grid = (grid["start"], grid["stop"], grid["step"])
            try:
                params["angle_grid"] = tuple(grid)
            except (KeyError, TypeError):
                raise InvalidArgumentError("campaign spec key 'angle_grid' must be [start, stop, step]") from None
        return cls(**params)


@dataclass(frozen=True)
class RunRecord:
    point_index: int
    distribution_index: int
    run_index: int
    seed: int
    intended: tuple
    unintended: tuple
    best_min_gain: float = float("nan")
    feasible: bool = False
    max_violation: float = float("nan")
    evaluations: int = 0
    wall_clock: float = 0.0
    error: str = None
    best: Candidate = None

    @property
    def failed(self):
        return self.error is not None


@dataclass(frozen=True)
class DistributionStats:
    intended: tuple
    unintended: tuple
    mean: float
    min: float
    max: float
    n_ok: int


@dataclass(frozen=True)
class PointResult:
    params: dict
    distributions: tuple
    overall_mean: float
    pooled_mean: float
    feasibility_rate: float
    failures: int
    runs: tuple


@dataclass(frozen=True)
class CampaignResult:
    points: tuple

    @property
    def runs(self):
        return tuple(r for p in self.points for r in p.runs)


def _job(args):
    point_index, dist_index, run_index, seed, scenario, cfg = args
    start = time.perf_counter()
    base = dict(
        point_index=point_index, distribution_index=dist_index, run_index=run_index, seed=seed,
        intended=scenario.intended, unintended=scenario.unintended,
    )
    try:
        res = run(scenario, cfg)
    except MafaError as exc:
        return RunRecord(**base, wall_clock=time.perf_counter() - start, error=f"{type(exc).__name__}: {exc}")
    return RunRecord(
        **base,
        best_min_gain=res.best_min_gain,
        feasible=res.feasible,
        max_violation=res.feasibility.max_violation(),
        evaluations=res.evaluations,
        wall_clock=time.perf_counter() - start,
        best=res.best,
    )


def default_workers():
    env = os.environ.get("MAA_WORKERS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidArgumentError(f"MAA_WORKERS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _aggregate(point_index, params, records):
    dists = []
    for dist_index in sorted({r.distribution_index for r in records}):
        rows = [r for r in records if r.distribution_index == dist_index]
        ok = np.array([r.best_min_gain for r in rows if not r.failed])
        dists.append(DistributionStats(
            intended=rows[0].intended,
            unintended=rows[0].unintended,
            mean=float(ok.mean()) if ok.size else float("nan"),
            min=float(ok.min()) if ok.size else float("nan"),
            max=float(ok.max()) if ok.size else float("nan"),
            n_ok=int(ok.size),
        ))
    ok_runs = [r for r in records if not r.failed]
    means = [d.mean for d in dists if d.n_ok]
    return PointResult(
        params=params,
        distributions=tuple(dists),
        overall_mean=float(np.mean(means)) if means else float("nan"),
        pooled_mean=float(np.mean([r.best_min_gain for r in ok_runs])) if ok_runs else float("nan"),
        feasibility_rate=float(np.mean([r.feasible for r in ok_runs])) if ok_runs else 0.0,
        failures=len(records) - len(ok_runs),
        runs=tuple(records),
    )


def run_campaign(spec, workers=None):
    """Execute every sweep point, distribution and seeded run of ``spec``.

    Results are assembled in (point, distribution, run) order whatever the
    completion order. Failed runs are kept as records with ``error`` set
    and excluded from the means.
    """
    workers = default_workers() if workers is None else max(1, int(workers))
    jobs = []
    points = spec.points()
    for pi, point in enumerate(points):
        cfg = spec.fa_config.replace(population=point["population"], max_generations=point["max_generations"])
        for di in range(spec.n_distributions):
            intended, unintended = spec.directions(point, di)
            scenario = spec._scenario_for(point, intended, unintended)
            for ri in range(spec.runs_per_distribution):
                seed = run_seed(spec.master_seed, di, ri)
                jobs.append((pi, di, ri, seed, scenario, cfg.replace(rng_seed=seed)))
    if workers == 1 or len(jobs) == 1:
        records = [_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    results = []
    for pi, point in enumerate(points):
        results.append(_aggregate(pi, point, [r for r in records if r.point_index == pi]))
    return CampaignResult(points=tuple(results))


def _fmt(x):
    return repr(float(x)) if isinstance(x, (float, np.floating)) else str(x)


def write_outputs(spec, result, out_dir, pattern_step=1.0):
    """Write the figure CSVs, ``runs.csv``, ``pattern.csv`` and ``summary.json``."""
    os.makedirs(out_dir, exist_ok=True)
    for name, columns in FIGURE_FILES.items():
        with open(os.path.join(out_dir, name), "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns + ("mean_gain",))
            for p in result.points:
                writer.writerow([_fmt(p.params[_COLUMN_SOURCE[c]]) for c in columns] + [_fmt(p.overall_mean)])

    with open(os.path.join(out_dir, "runs.csv"), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["point", "distribution", "run", "seed", "intended_deg", "unintended_deg",
                         "best_min_gain", "feasible", "max_violation", "evaluations", "error"])
        for r in result.runs:
            writer.writerow([
                r.point_index, r.distribution_index, r.run_index, r.seed,
                " ".join(_fmt(a) for a in r.intended), " ".join(_fmt(a) for a in r.unintended),
                _fmt(r.best_min_gain), "true" if r.feasible else "false", _fmt(r.max_violation),
                r.evaluations, r.error or "",
            ])

    # Radiation pattern of the best run at the first sweep point.
    first = [r for r in result.points[0].runs if not r.failed]
    with open(os.path.join(out_dir, "pattern.csv"), "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["angle_deg", "gain"])
        if first:
            top = max(first, key=lambda r: r.best_min_gain)
            for angle, g in pattern_sweep(top.best.w, top.best.d, angle_grid(pattern_step)):
                writer.writerow([_fmt(angle), _fmt(g)])

    summary = {
        "points": [
            {
                "params": p.params,
                "overall_mean": p.overall_mean,
                "pooled_mean": p.pooled_mean,
                "feasibility_rate": p.feasibility_rate,
                "failures": p.failures,
                "distributions": [
                    {"intended_deg": list(d.intended), "unintended_deg": list(d.unintended),
                     "mean": d.mean, "min": d.min, "max": d.max, "n_ok": d.n_ok}
                    for d in p.distributions
                ],
            }
            for p in result.points
        ],
    }
    with open(os.path.join(out_dir, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def audit(record, spec):
    """Re-check a feasible-flagged record against its scenario."""
    point = spec.points()[record.point_index]
    scenario = spec._scenario_for(point, record.intended, record.unintended)
    return evaluate_feasibility(record.best, scenario)
