"""Command-line interface: ``mafa <subcommand> ...``.

Exit codes: 0 success, 1 usage or input error, 2 the run completed but the
returned solution is infeasible (outputs are still written).
"""

import argparse
import json
import os
import sys
import time

import numpy as np

from .array_model import angle_grid, pattern_sweep
from .errors import MafaError
from .firefly import FaConfig, count_operations, run, write_trace_csv
from .harness import CampaignSpec, run_campaign, write_outputs
from .oracle import GridSpec, brute_force_solve, fixture_dict
from .problem import Candidate, Scenario

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INFEASIBLE = 2

CASE1 = {
    "n_antennas": 8,
    "segment_length_wl": 8.0,
    "min_spacing_wl": 0.5,
    "intended_deg": [100.0, 145.0],
    "unintended_deg": [125.0, 165.0],
    "interference_threshold": 0.1,
}


class InputError(Exception):
    pass


def _load_json(path, what):
    if not os.path.isfile(path):
        raise InputError(f"{what} file not found: {path}")
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} file {path} is not valid JSON: {exc}") from None


def _write_json(path, data):
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_pattern(path, candidate, step):
    with open(path, "w") as fh:
        fh.write("angle_deg,gain\n")
        for angle, g in pattern_sweep(candidate.w, candidate.d, angle_grid(step)):
            fh.write(f"{angle!r},{g!r}\n")


def cmd_optimize(args):
    scenario = Scenario.from_dict(_load_json(args.scenario, "scenario"))
    cfg_data = _load_json(args.config, "config") if args.config else {}
    cfg = FaConfig.from_dict(cfg_data)
    overrides = {}
    if args.seed is not None:
        overrides["rng_seed"] = args.seed
    if args.omega is not None:
        overrides["population"] = args.omega
    if args.generations is not None:
        overrides["max_generations"] = args.generations
    if overrides:
        cfg = cfg.replace(**overrides)
    if args.i0 is not None:
        scenario = scenario.replace(interference_threshold=args.i0)

    result = run(scenario, cfg)
    os.makedirs(args.out, exist_ok=True)
    payload = result.to_dict()
    payload["scenario"] = scenario.to_dict()
    payload["config"] = cfg.to_dict()
    _write_json(os.path.join(args.out, "result.json"), payload)
    with open(os.path.join(args.out, "trace.csv"), "w", newline="") as fh:
        write_trace_csv(result.trace, fh)
    _write_pattern(os.path.join(args.out, "pattern.csv"), result.best, 1.0)
    status = "feasible" if result.feasible else "INFEASIBLE"
    print(f"best_min_gain={result.best_min_gain:.6f} ({status}, "
          f"max violation {result.feasibility.max_violation():.3e})")
    return EXIT_OK if result.feasible else EXIT_INFEASIBLE


def cmd_campaign(args):
    spec = CampaignSpec.from_dict(_load_json(args.spec, "campaign spec"))
    start = time.perf_counter()
    result = run_campaign(spec, workers=args.workers)
    write_outputs(spec, result, args.out)
    for p in result.points:
        swept = {k: p.params[k] for k in spec.sweep} or "single point"
        print(f"{swept}: mean_gain={p.overall_mean:.4f} pooled={p.pooled_mean:.4f} "
              f"feasible={p.feasibility_rate:.0%} failures={p.failures}")
    print(f"{len(result.runs)} runs in {time.perf_counter() - start:.1f}s", file=sys.stderr)
    return EXIT_OK


def cmd_pattern(args):
    if not args.step > 0:
        raise InputError(f"--step must be positive, got {args.step}")
    data = _load_json(args.result, "result")
    if "best" not in data:
        raise InputError("result file is missing key 'best'")
    _write_pattern(args.out, Candidate.from_dict(data["best"]), args.step)
    return EXIT_OK


def cmd_oracle(args):
    scenario = Scenario.from_dict(_load_json(args.scenario, "scenario"))
    grid = GridSpec.from_dict(_load_json(args.grid, "grid")) if args.grid else GridSpec()
    candidate, value = brute_force_solve(scenario, grid)
    _write_json(args.out, fixture_dict(scenario, grid, candidate, value))
    print(f"oracle min gain {value:.6f}")
    return EXIT_OK


def cmd_complexity(args):
    cfg = FaConfig.from_dict(_load_json(args.config, "config"))
    scenario = Scenario.from_dict(_load_json(args.scenario, "scenario") if args.scenario else CASE1)
    omegas = [int(x) for x in args.omegas.split(",")] if args.omegas else [cfg.population]
    rows = []
    for omega in omegas:
        c = cfg.replace(population=omega)
        rows.append((omega, count_operations(scenario, c), run(scenario, c).evaluations))
    predicted = np.array([r[1] for r in rows], dtype=float)
    measured = np.array([r[2] for r in rows], dtype=float)
    scale = float(predicted @ measured / (predicted @ predicted))
    print(f"R={cfg.max_generations} N_A={scenario.n_antennas}  fitted constant {scale:.5g}")
    print("omega  predicted  measured_evaluations  measured/(c*predicted)")
    for (omega, p, m) in rows:
        print(f"{omega:5d}  {p:9d}  {m:20d}  {m / (scale * p):.3f}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="mafa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize", help="run the firefly search once")
    p.add_argument("--scenario", required=True)
    p.add_argument("--config")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--omega", type=int)
    p.add_argument("--generations", type=int)
    p.add_argument("--i0", type=float)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("campaign", help="run a Monte Carlo campaign")
    p.add_argument("--spec", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, help="defaults to $MAA_WORKERS or the CPU count")
    p.set_defaults(func=cmd_campaign)

    p = sub.add_parser("pattern", help="sweep the gain pattern of a saved result")
    p.add_argument("--result", required=True)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("oracle", help="brute-force a tiny scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--grid")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("complexity", help="compare predicted and measured work")
    p.add_argument("--config", required=True)
    p.add_argument("--scenario")
    p.add_argument("--omegas", help="comma-separated population sizes, e.g. 10,20,40")
    p.set_defaults(func=cmd_complexity)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, MafaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
