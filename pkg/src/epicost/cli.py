"""Command-line interface: scenario ingestion, dispatch, report emission.

Commands: ``import-dist``, ``optimize``, ``game``, ``simulate``,
``compare-schedules``, ``validate``. Reports are CSV for tables and JSON
for solution objects (``--format`` overrides). Floats are written with 12
significant digits and reports carry no timestamps, so identical inputs
produce byte-identical files. Every report echoes the scenario config it
was produced from (JSON key ``config``; leading ``# config:`` comment line
in CSV).

Exit codes: 0 success, 1 config error, 2 numerical failure, 3 runtime
invariant violation.
"""

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import ScenarioConfig, load_config
from .costs import validate_curve_set
from .errors import ConfigError, DomainError, InvariantViolation, NumericalFailure
from .game import GameState, best_response, solve_game
from .importation import ImportScenario, expected_imports, pmf_support, sample_imports
from .optimize import OptimizationResult, minimize_over_imports
from .trajectory import compare_monotone_vs_relax, simulate

COMMANDS = ("import-dist", "optimize", "game", "simulate",
            "compare-schedules", "validate")
_DEFAULT_FORMAT = {
    "import-dist": "csv",
    "optimize": "json",
    "game": "json",
    "simulate": "csv",
    "compare-schedules": "csv",
    "validate": "json",
}


def _sig(v: float) -> float:
    return float(f"{float(v):.12g}")


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.12g}"
    return str(v)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        return _sig(v) if np.isfinite(v) else _cell(v)  # "inf"/"nan" as strings
    return obj


def _write_json(path: Path, obj: dict) -> Path:
    path.write_text(json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n")
    return path


def _write_csv(path: Path, header, rows, config_raw: dict, comments=()) -> Path:
    with open(path, "w", newline="") as fh:
        fh.write("# config: "
                 + json.dumps(_jsonable(config_raw), sort_keys=True,
                              separators=(",", ":")) + "\n")
        for line in comments:
            fh.write(line + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_cell(v) for v in row])
    return path


def _result_dict(res: OptimizationResult) -> dict:
    return {
        "variable": res.variable,
        "argument": res.argument,
        "cost": res.cost,
        "classification": res.classification,
        "foc_residual": res.foc_residual,
    }


def _decision_dict(d) -> dict:
    return {
        "domestic_cases": d.domestic_cases,
        "screening": d.screening,
        "import_threat": d.import_threat,
        "imports": d.imports,
        "classification": d.classification,
        "costs": {
            "transmission": d.costs.transmission,
            "border": d.costs.border,
            "outbreak": d.costs.outbreak,
            "total": d.costs.total,
            "net_total": d.costs.net_total,
        },
        "objective": d.objective,
    }


def cmd_validate(cfg: ScenarioConfig, out: Path, fmt: str, args) -> int:
    regions = {}
    all_pass = True
    for region in cfg.regions:
        report = validate_curve_set(region.curves)
        all_pass &= report.all_pass
        regions[region.name] = {
            "all_pass": report.all_pass,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                       for c in report.checks],
        }
    if fmt == "json":
        path = _write_json(out / "validate.json",
                           {"config": cfg.raw, "all_pass": all_pass,
                            "regions": regions})
    else:
        rows = [(name, c["name"], c["passed"], c["detail"])
                for name, rep in regions.items() for c in rep["checks"]]
        path = _write_csv(out / "validate.csv",
                          ("region", "check", "passed", "detail"), rows, cfg.raw)
    print(f"wrote {path}")
    return 0 if all_pass else 1


def cmd_import_dist(cfg: ScenarioConfig, out: Path, fmt: str, args) -> int:
    if not cfg.links:
        raise ConfigError(["links: import-dist needs at least one travel link"])
    trials = args.mc_trials or 0
    seed = cfg.solver.seed
    if trials > 0 and seed is None:
        raise ConfigError(
            ["solver.seed: required when Monte Carlo sampling is requested"])

    header = ["origin", "destination", "nu", "pmf", "tail_sum"]
    if trials > 0:
        header.append("mc_freq")
    rows = []
    link_reports = []
    for link in cfg.links:
        origin = cfg.region(link.origin)
        scenario = ImportScenario.from_prevalence(
            origin.population, origin.prevalence, link.travelers)
        nus, probs = pmf_support(scenario)
        tails = np.cumsum(np.where(nus >= 1, probs, 0.0))
        freq = None
        if trials > 0:
            draws = sample_imports(scenario, seed, trials)
            counts = np.bincount(draws, minlength=int(nus[-1]) + 1)
            freq = counts[nus] / trials
        table = []
        for j, nu in enumerate(nus):
            row = [link.origin, link.destination, int(nu),
                   float(probs[j]), float(tails[j])]
            if freq is not None:
                row.append(float(freq[j]))
            rows.append(row)
            table.append(dict(zip(header[2:], row[2:])))
        link_reports.append({"origin": link.origin, "destination": link.destination,
                             "travelers": link.travelers,
                             "expected_imports": expected_imports(
                                 link.travelers, origin.prevalence),
                             "rows": table})

    if fmt == "csv":
        path = _write_csv(out / "import_dist.csv", header, rows, cfg.raw)
    else:
        path = _write_json(out / "import_dist.json",
                           {"config": cfg.raw, "links": link_reports})
    print(f"wrote {path}")
    return 0


def cmd_optimize(cfg: ScenarioConfig, out: Path, fmt: str, args) -> int:
    per_region = {}
    for region in cfg.regions:
        entry = {"imports": _result_dict(
            minimize_over_imports(region.curves,
                                  grid_points=cfg.solver.grid_points,
                                  foc_tol=cfg.solver.foc_tol))}
        link = cfg.inbound_link(region.name)
        if link is not None:
            decision = best_response(region, cfg.region(link.origin), link,
                                     grid_points=cfg.solver.grid_points)
            entry["screening"] = _decision_dict(decision)
        else:
            entry["screening"] = None
        per_region[region.name] = entry

    if fmt == "json":
        path = _write_json(out / "optimize.json",
                           {"config": cfg.raw, "regions": per_region})
    else:
        rows = []
        for name, entry in per_region.items():
            imp = entry["imports"]
            rows.append((name, "imports", imp["argument"], imp["cost"],
                         imp["classification"], imp["foc_residual"]))
            scr = entry["screening"]
            if scr is not None:
                rows.append((name, "screening", scr["screening"],
                             scr["objective"], scr["classification"], ""))
        path = _write_csv(out / "optimize.csv",
                          ("region", "variable", "argument", "cost",
                           "classification", "foc_residual"), rows, cfg.raw)
    print(f"wrote {path}")
    return 0


def cmd_game(cfg: ScenarioConfig, out: Path, fmt: str, args) -> int:
    if len(cfg.regions) != 2:
        raise ConfigError(
            [f"regions: the game command needs exactly 2 regions, got {len(cfg.regions)}"])
    state = GameState(tuple(cfg.regions), cfg.links)
    solution = solve_game(state,
                          max_iters=cfg.solver.max_iterations,
                          tol=cfg.solver.nash_tol,
                          coop_grid_points=cfg.solver.coop_grid_points,
                          infectious_days=cfg.solver.infectious_days,
                          damping=cfg.solver.damping,
                          grid_points=cfg.solver.grid_points)
    report = {
        "config": cfg.raw,
        "nash": {
            "regions": {d.region: _decision_dict(d)
                        for d in solution.nash.outcome.decisions},
            "total": solution.nash.outcome.total,
        },
        "cooperative": {
            "regions": {d.region: _decision_dict(d)
                        for d in solution.cooperative.outcome.decisions},
            "total": solution.cooperative.outcome.total,
            "steady_prevalences": list(solution.cooperative.steady_prevalences),
        },
        "gap": solution.gap,
        "ratio": solution.ratio,
        "converged": solution.converged,
        "iterations": solution.iterations,
    }
    if fmt == "json":
        path = _write_json(out / "game.json", report)
    else:
        rows = []
        for concept in ("nash", "cooperative"):
            for name, d in report[concept]["regions"].items():
                rows.append((concept, name, d["domestic_cases"], d["screening"],
                             d["import_threat"], d["imports"],
                             d["costs"]["transmission"], d["costs"]["border"],
                             d["costs"]["outbreak"], d["costs"]["total"]))
        summary = (f"# summary: gap={_cell(solution.gap)} ratio={_cell(solution.ratio)} "
                   f"converged={_cell(solution.converged)} "
                   f"iterations={solution.iterations}")
        path = _write_csv(out / "game.csv",
                          ("solution", "region", "domestic_cases", "screening",
                           "import_threat", "imports", "cost_transmission",
                           "cost_border", "cost_outbreak", "cost_total"),
                          rows, cfg.raw, comments=[summary])
    print(f"wrote {path}")
    return 0


def cmd_simulate(cfg: ScenarioConfig, out: Path, fmt: str, args) -> int:
    region = cfg.dynamics_region()
    schedule = cfg.dynamics.schedule()
    link = cfg.inbound_link(region.name)
    threat = None
    if link is not None:
        threat = expected_imports(link.travelers,
                                  cfg.region(link.origin).prevalence)
    traj = simulate(schedule, region.domestic_cases, region.curves, threat)

    header = ("day", "cases", "cost_transmission", "cost_border",
              "cost_outbreak", "cost_total", "cumulative")
    rows = [(t, traj.cases[t], traj.transmission_costs[t], traj.border_costs[t],
             traj.outbreak_costs[t], traj.total_costs[t], traj.cumulative[t])
            for t in range(schedule.horizon)]
    if fmt == "csv":
        path = _write_csv(out / "simulate.csv", header, rows, cfg.raw,
                          comments=[f"# final_cases: {_cell(traj.final_cases)}"])
    else:
        path = _write_json(out / "simulate.json", {
            "config": cfg.raw,
            "region": region.name,
            "days": [dict(zip(header, row)) for row in rows],
            "final_cases": traj.final_cases,
            "cumulative_cost": traj.cumulative_cost,
        })
    print(f"wrote {path}")
    return 0


def cmd_compare(cfg: ScenarioConfig, out: Path, fmt: str, args) -> int:
    region = cfg.dynamics_region()
    dyn = cfg.dynamics
    cmp_ = compare_monotone_vs_relax(region.domestic_cases, dyn.target_cases,
                                     dyn.horizon, region.curves, dyn.params,
                                     r_step=dyn.r_grid_step)
    summary = {
        "degenerate": cmp_.degenerate,
        "n_schedules": cmp_.n_schedules,
        "best_cost": cmp_.best_cost,
        "best_index": cmp_.best_index,
        "best_monotone_index": cmp_.best_monotone_index,
        "cheapest_growth_index": cmp_.cheapest_growth_index,
        "cheapest_relax_then_tighten_index": cmp_.cheapest_relax_then_tighten_index,
        "monotone_dominates": cmp_.monotone_dominates,
        "monotone_beats_relax_then_tighten": cmp_.monotone_beats_relax_then_tighten,
    }
    header = ("index", "r_first", "r_second", "switch_day", "total_cost",
              "final_cases", "max_cases", "feasible", "runaway",
              "contains_growth", "relax_then_tighten")
    rows = [(i, cmp_.r_first[i], cmp_.r_second[i], int(cmp_.switch_day[i]),
             cmp_.total_cost[i], cmp_.final_cases[i], cmp_.max_cases[i],
             bool(cmp_.feasible[i]), bool(cmp_.runaway[i]),
             bool(cmp_.contains_growth[i]), bool(cmp_.relax_then_tighten[i]))
            for i in range(cmp_.n_schedules)]
    if fmt == "csv":
        comment = "# summary: " + json.dumps(_jsonable(summary), sort_keys=True,
                                             separators=(",", ":"))
        path = _write_csv(out / "compare_schedules.csv", header, rows, cfg.raw,
                          comments=[comment])
    else:
        path = _write_json(out / "compare_schedules.json", {
            "config": cfg.raw,
            "summary": summary,
            "schedules": [dict(zip(header, row)) for row in rows],
        })
    print(f"wrote {path}")
    return 0


_HANDLERS = {
    "validate": cmd_validate,
    "import-dist": cmd_import_dist,
    "optimize": cmd_optimize,
    "game": cmd_game,
    "simulate": cmd_simulate,
    "compare-schedules": cmd_compare,
}


class _Parser(argparse.ArgumentParser):
    # usage problems are config errors under the exit-code contract
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError([f"arguments: {message}"])


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="epicost",
                     description="Cost-of-policy toolkit for epidemic suppression")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, help="scenario JSON path")
    parser.add_argument("--out", default=".", help="output directory")
    parser.add_argument("--format", choices=("csv", "json"), default=None)
    parser.add_argument("--seed", type=int, default=None,
                        help="override solver.seed")
    parser.add_argument("--grid", type=int, default=None,
                        help="override solver.grid_points")
    parser.add_argument("--tol", type=float, default=None,
                        help="override solver.foc_tol")
    parser.add_argument("--mc-trials", type=int, default=0,
                        help="append Monte Carlo frequencies to import-dist")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config, shape_gate=args.command != "validate")

    solver = cfg.solver
    if args.seed is not None:
        solver = replace(solver, seed=args.seed)
    if args.grid is not None:
        if args.grid < 3:
            raise ConfigError([f"arguments: --grid must be >= 3, got {args.grid}"])
        solver = replace(solver, grid_points=args.grid)
    if args.tol is not None:
        if args.tol <= 0:
            raise ConfigError([f"arguments: --tol must be > 0, got {args.tol}"])
        solver = replace(solver, foc_tol=args.tol)
    if solver is not cfg.solver:
        cfg = replace(cfg, solver=solver)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    fmt = args.format or _DEFAULT_FORMAT[args.command]
    return _HANDLERS[args.command](cfg, out, fmt, args)


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)
    except ConfigError as exc:
        for diag in exc.diagnostics:
            print(f"config error: {diag}", file=sys.stderr)
        return 1
    except DomainError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
