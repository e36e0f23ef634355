"""Command-line interface.

Subcommands: classify, optimize, simulate, ensemble, sweep-noise,
sweep-harvest, verify. All take a JSON config via --config (verify also runs
without one, using its bundled scenarios) plus value overrides (--h1, --h2,
--seed, --dt, --t-end, --n-paths).

Exit codes: 0 success; 1 usage or config error; 2 assumption violation
(competition matrix outside the Delta > 0 regime, or a persistence
hypothesis gate); 3 verification mismatch. Errors are emitted as one JSON
object on stderr.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

import numpy as np

from . import __version__
from .classify import classify
from .config import RunConfig, load_config
from .errors import (
    AssumptionViolation,
    LVHarvestError,
    InvalidConfig,
)
from .harvest import (
    noise_sensitivity,
    optimal_policy,
    sensitivity_to_csv,
    surface_to_csv,
    yield_surface,
)
from .mc import EnsembleConfig, empirical_yield, run_ensemble, stats_to_json
from .model import HarvestEffort
from .reference import DEFAULT_MC_BUDGET, run_reference_checks
from .sde import log_growth_rate, simulate, time_average, trajectory_to_csv


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _fail(kind: str, message: str, code: int) -> int:
    json.dump({"error": kind, "message": message, "exit_code": code}, sys.stderr)
    sys.stderr.write("\n")
    return code


def _print_json(obj) -> None:
    print(json.dumps(obj, indent=2))


def _parse_scales(text: str) -> np.ndarray:
    """Parse 'a:b:n' into n evenly spaced scales from a to b inclusive."""
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        a, b, n = float(parts[0]), float(parts[1]), int(parts[2])
        if n < 1:
            raise ValueError
    except ValueError:
        raise InvalidConfig(
            f"--scales expects the form a:b:n with n >= 1, got {text!r}"
        ) from None
    return np.linspace(a, b, n)


def _apply_overrides(rc: RunConfig, args) -> RunConfig:
    h = rc.harvest
    if args.h1 is not None or args.h2 is not None:
        h = HarvestEffort(
            args.h1 if args.h1 is not None else h.h1,
            args.h2 if args.h2 is not None else h.h2,
        )
    sim_changes = {}
    if args.seed is not None:
        sim_changes["seed"] = args.seed
    if args.dt is not None:
        sim_changes["dt"] = args.dt
    if args.t_end is not None:
        sim_changes["t_end"] = args.t_end
    sim = dataclasses.replace(rc.sim, **sim_changes) if sim_changes else rc.sim
    ensemble = rc.ensemble
    if sim is not rc.sim or args.n_paths is not None:
        ensemble = EnsembleConfig(
            n_paths=args.n_paths if args.n_paths is not None else ensemble.n_paths,
            sim=sim,
            master_seed=ensemble.master_seed,
        )
    return dataclasses.replace(rc, harvest=h, sim=sim, ensemble=ensemble)


def _require_config(args) -> RunConfig:
    if args.config is None:
        raise _UsageError(f"lvharvest {args.command}: --config is required")
    return _apply_overrides(load_config(args.config), args)


def _out_path(rc: RunConfig, name: str) -> str:
    if os.path.isabs(name):
        return name
    return os.path.join(rc.output_dir, name)


def _cmd_classify(args) -> int:
    rc = _require_config(args)
    rep = classify(rc.params, rc.harvest, tol=args.tol)
    _print_json(
        {
            "regime": str(rep.regime),
            "predicted_averages": (
                list(rep.predicted_averages) if rep.predicted_averages else None
            ),
            "assumptions": dataclasses.asdict(rep.assumptions),
            "margins": dict(
                zip(("b_int1", "b_int2", "delta1", "delta2"), rep.margins)
            ),
        }
    )
    return 0


def _cmd_optimize(args) -> int:
    rc = _require_config(args)
    pol = optimal_policy(rc.params)
    _print_json(
        {
            "h_star": list(pol.H_star),
            "y_star": pol.Y_star,
            "valid": pol.valid,
            "conditions": dataclasses.asdict(pol.conditions),
        }
    )
    return 0


def _cmd_simulate(args) -> int:
    rc = _require_config(args)
    traj = simulate(rc.params, rc.harvest, rc.sim)
    out = _out_path(rc, args.out)
    trajectory_to_csv(traj, out)
    summary = {"out": out, "points": len(traj.times)}
    try:
        summary["time_average"] = time_average(traj).tolist()
        summary["log_growth_rate"] = log_growth_rate(traj).tolist()
    except LVHarvestError as exc:
        summary["diagnostics_note"] = str(exc)
    _print_json(summary)
    return 0


def _cmd_ensemble(args) -> int:
    rc = _require_config(args)
    stats = run_ensemble(rc.params, rc.harvest, rc.ensemble)
    doc = stats_to_json(stats)
    out = _out_path(rc, args.out)
    with open(out, "w", encoding="utf-8") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")
    est, se = empirical_yield(rc.params, rc.harvest, rc.ensemble, stats=stats)
    _print_json(
        {
            "out": out,
            "empirical_yield": {"est": est, "se": se},
            "n_surviving": stats.n_surviving,
        }
    )
    return 0


def _cmd_sweep_noise(args) -> int:
    rc = _require_config(args)
    rows = noise_sensitivity(rc.params, args.species, _parse_scales(args.scales))
    out = _out_path(rc, args.out)
    sensitivity_to_csv(rows, out)
    _print_json({"out": out, "rows": len(rows)})
    return 0


def _cmd_sweep_harvest(args) -> int:
    rc = _require_config(args)
    table = yield_surface(
        rc.params, h_max=args.h_max, step=args.step, formula_only=args.formula_only
    )
    out = _out_path(rc, args.out)
    surface_to_csv(table, out)
    _print_json({"out": out, "rows": int(table.shape[0])})
    return 0


def _cmd_verify(args) -> int:
    budget = DEFAULT_MC_BUDGET
    if args.config is not None:
        rc = _apply_overrides(load_config(args.config), args)
        budget = rc.ensemble
    elif args.n_paths is not None or args.dt is not None or args.t_end is not None:
        sim_changes = {}
        if args.dt is not None:
            sim_changes["dt"] = args.dt
        if args.t_end is not None:
            sim_changes["t_end"] = args.t_end
        sim = dataclasses.replace(budget.sim, **sim_changes)
        budget = EnsembleConfig(
            n_paths=args.n_paths if args.n_paths is not None else budget.n_paths,
            sim=sim,
            master_seed=budget.master_seed,
        )
    checks = run_reference_checks(mc_budget=budget, with_mc=not args.no_mc)
    failed = []
    for c in checks:
        status = "PASS" if c.ok else "FAIL"
        if c.tol is None:
            print(f"{status} {c.name}: got {c.got!r}, expected {c.expected!r}")
        else:
            print(f"{status} {c.name}: got {c.got:.6f}, expected {c.expected} +/- {c.tol}")
        if not c.ok:
            failed.append(c.name)
    print(f"{len(checks) - len(failed)}/{len(checks)} checks passed")
    if failed:
        return _fail(
            "VerificationMismatch",
            "reference checks failed: " + ", ".join(failed),
            3,
        )
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="lvharvest",
        description=(
            "Seasonal stochastic competition model: simulate, classify long-run "
            "regimes, and compute optimal harvesting policies."
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    common = _Parser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON run configuration")
    common.add_argument("--h1", type=float, help="override harvest effort on species 1")
    common.add_argument("--h2", type=float, help="override harvest effort on species 2")
    common.add_argument("--seed", type=int, help="override the simulation seed")
    common.add_argument("--dt", type=float, help="override the step size")
    common.add_argument("--t-end", dest="t_end", type=float, help="override the horizon")
    common.add_argument(
        "--n-paths", dest="n_paths", type=int, help="override the ensemble path count"
    )

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser(
        "classify", parents=[common],
        help="report the long-run regime at the configured efforts",
    )
    p.add_argument("--tol", type=float, default=1e-9, help="indeterminacy band around 0")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser(
        "optimize", parents=[common],
        help="closed-form optimal efforts and maximum sustainable yield",
    )
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("simulate", parents=[common], help="integrate one path to CSV")
    p.add_argument("--out", default="trajectory.csv", help="output CSV path")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser(
        "ensemble", parents=[common], help="Monte Carlo ensemble statistics to JSON"
    )
    p.add_argument("--out", default="ensemble.json", help="output JSON path")
    p.set_defaults(func=_cmd_ensemble)

    p = sub.add_parser(
        "sweep-noise", parents=[common],
        help="optimal policy as one species' noise intensity is rescaled",
    )
    p.add_argument("--species", type=int, choices=(1, 2), required=True)
    p.add_argument(
        "--scales", default="0:2:9", help="scale grid a:b:n (n points from a to b)"
    )
    p.add_argument("--out", default="noise_sweep.csv", help="output CSV path")
    p.set_defaults(func=_cmd_sweep_noise)

    p = sub.add_parser(
        "sweep-harvest", parents=[common],
        help="yield over an effort lattice (surface data)",
    )
    p.add_argument("--h-max", dest="h_max", type=float, help="lattice bound (default: auto)")
    p.add_argument("--step", type=float, default=0.1, help="lattice spacing")
    p.add_argument(
        "--formula-only", action="store_true",
        help="emit the bilinear formula everywhere, ignoring the persistence gate",
    )
    p.add_argument("--out", default="yield_surface.csv", help="output CSV path")
    p.set_defaults(func=_cmd_sweep_harvest)

    p = sub.add_parser(
        "verify", parents=[common],
        help="recompute bundled reference results; nonzero exit on mismatch",
    )
    p.add_argument(
        "--no-mc", action="store_true", help="skip the Monte Carlo bridge checks"
    )
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return _fail("UsageError", str(exc), 1)
    try:
        return args.func(args)
    except _UsageError as exc:
        return _fail("UsageError", str(exc), 1)
    except AssumptionViolation as exc:
        return _fail(type(exc).__name__, str(exc), 2)
    except LVHarvestError as exc:
        return _fail(type(exc).__name__, str(exc), 1)
    except OSError as exc:
        return _fail(type(exc).__name__, str(exc), 1)


if __name__ == "__main__":
    sys.exit(main())
