"""Command-line front end: verification suites and worldline simulations.

Exit codes: 0 all checks pass, 1 any check fails, 2 usage or configuration error.
The COSREL_CONFIG environment variable overrides the --config path.
"""

from __future__ import annotations

import argparse
import configparser
import json
import os
import sys

import numpy as np

from . import suites, weyssenhoff
from .minkowski import ETA

SIMULATION_KINDS = ("weyssenhoff-worldline",)


def _load_config(path):
    cfg = configparser.ConfigParser()
    if path is None:
        return cfg
    read = cfg.read(path)
    if not read:
        raise FileNotFoundError(f"config file not readable: {path}")
    return cfg


def _floats(text: str) -> list:
    return [float(tok) for tok in text.replace(",", " ").split()]


def _suite_options(cfg, args) -> dict:
    options = {}
    if cfg.has_section("forms"):
        if cfg.has_option("forms", "grids"):
            options["grids"] = tuple(int(v) for v in _floats(cfg.get("forms", "grids")))
    if cfg.has_section("worldline"):
        for key, cast in (("steps", int), ("dtau", float)):
            if cfg.has_option("worldline", key):
                options[key] = cast(cfg.get("worldline", key))
    if args.grid:
        options["grids"] = tuple(int(v) for v in args.grid.split(","))
    if args.steps is not None:
        options["steps"] = args.steps
    if args.dtau is not None:
        options["dtau"] = args.dtau
    return options


def _print_report(report: suites.SuiteReport, stream=sys.stdout):
    head = "PASS" if report.passed else "FAIL"
    print(f"suite {report.suite}: {head} (seed {report.seed})", file=stream)
    for c in sorted(report.checks, key=lambda c: c.check_id):
        mark = "ok  " if c.passed else "FAIL"
        print(f"  [{mark}] {c.check_id:44s} {c.law:36s} "
              f"value={c.value:.3e} tol={c.tolerance:.3e}", file=stream)


def _run_suites(args) -> int:
    cfg = _load_config(args.config)
    options = _suite_options(cfg, args)
    try:
        reports = suites.run_suite(args.suite, seed=args.seed, options=options)
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return 2
    for rep in reports:
        _print_report(rep)
    if args.json:
        payload = {"seed": args.seed,
                   "reports": [rep.as_dict() for rep in reports],
                   "passed": all(rep.passed for rep in reports)}
        with open(args.json, "w") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
            fh.write("\n")
    return 0 if all(rep.passed for rep in reports) else 1


def _element_from_config(cfg) -> tuple:
    if not cfg.has_section("worldline"):
        raise ValueError("config needs a [worldline] section with initial conditions")
    sec = cfg["worldline"]
    c = float(sec.get("c", "1.0"))
    x = np.array(_floats(sec.get("x", "0 0 0 0")))
    u = np.array(_floats(sec["u"]))
    s = weyssenhoff.spin_matrix_from_components(_floats(sec.get("s", "0 0 0 0 0 0")))
    if "g" in sec:
        g = np.array(_floats(sec["g"]))
    else:
        rho0 = float(sec.get("rho0", "1.0"))
        g = rho0 * (ETA @ u)
    element = weyssenhoff.WeyssenhoffElement(x, u, g, s, c=c)
    params = {
        "steps": int(sec.get("steps", "1000")),
        "dtau": float(sec.get("dtau", "0.01")),
        "project": sec.get("projection", "off").lower() in ("on", "true", "1", "yes"),
        "solver_tol": float(sec.get("solver_tol", "1e-3")),
        "invariant_tol": float(sec.get("invariant_tol", "1e-9")),
    }
    if sec.get("drift_max", "").strip():
        params["drift_max"] = float(sec["drift_max"])
    return element, params


def _run_simulation(args) -> int:
    if args.simulate not in SIMULATION_KINDS:
        print(f"error: unknown simulation kind {args.simulate!r}; "
              f"choose from {SIMULATION_KINDS}", file=sys.stderr)
        return 2
    cfg = _load_config(args.config)
    try:
        element, params = _element_from_config(cfg)
    except (ValueError, KeyError) as exc:
        print(f"error: bad worldline config: {exc}", file=sys.stderr)
        return 2
    if args.steps is not None:
        params["steps"] = args.steps
    if args.dtau is not None:
        params["dtau"] = args.dtau
    try:
        element.validate(params["invariant_tol"])
    except ValueError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        print(f"residuals: {element.invariant_defects()}", file=sys.stderr)
        return 2
    invariant_tol = params.pop("invariant_tol")
    traj = weyssenhoff.integrate_worldline(element, invariant_tol=invariant_tol, **params)
    out = args.output or "trajectory.csv"
    traj.write_csv(out)
    summary_path = args.json or (out + ".json")
    traj.write_json(summary_path)
    print(f"wrote {len(traj.tau)} records to {out}; diagnostics in {summary_path}")
    print(f"drift summary: {traj.drift_summary()}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosrel",
        description="Verification suites and simulations for the relativistic "
                    "Cosserat toolkit.")
    parser.add_argument("--suite", choices=suites.SUITE_NAMES + ("all",),
                        help="run a named verification suite")
    parser.add_argument("--simulate", metavar="KIND",
                        help="run a simulation (weyssenhoff-worldline)")
    parser.add_argument("--config", metavar="PATH", default=None,
                        help="key = value config file (INI sections)")
    parser.add_argument("--json", metavar="PATH", default=None,
                        help="write the machine-readable report here")
    parser.add_argument("--output", metavar="PATH", default=None,
                        help="trajectory output path for simulations")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized property checks (default 0)")
    parser.add_argument("--grid", metavar="N[,N...]", default=None,
                        help="override refinement grid sizes")
    parser.add_argument("--steps", type=int, default=None, help="integrator steps")
    parser.add_argument("--dtau", type=float, default=None, help="integrator step size")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    env_config = os.environ.get("COSREL_CONFIG")
    if env_config:
        args.config = env_config
    if (args.suite is None) == (args.simulate is None):
        parser.print_usage(sys.stderr)
        print("error: pass exactly one of --suite or --simulate", file=sys.stderr)
        return 2
    try:
        if args.suite:
            return _run_suites(args)
        return _run_simulation(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (weyssenhoff.ClosureError, RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
