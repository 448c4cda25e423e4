"""Command-line entry point: ``multirrt plan|derive|bench|plot|metrics|schema``."""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import fields, replace
from pathlib import Path

from . import bench as bench_mod
from .dynamics import DEFAULT_GAMMA_MAX_DEG, UavParams, derivation_report
from .errors import InsufficientThrust, InvalidResult, InvalidScenario, MetricsMismatch
from .pipeline import audit_result, load_result, result_document, run_pipeline, write_result
from .render import render_svg
from .scenario import BUNDLED, SCENARIO_SCHEMA, bundled_path, load_scenario, parse_scenario

EXIT_OK = 0
EXIT_PARTIAL = 2
EXIT_INVALID = 3
EXIT_MISMATCH = 4

OUT_DIR_ENV = "MULTIRRT_OUT_DIR"


def default_out_dir() -> Path:
    return Path(os.environ.get(OUT_DIR_ENV, "out"))


def _resolve_scenario(arg: str):
    p = Path(arg)
    if not p.exists() and (arg in BUNDLED or arg == "scalability"):
        return parse_scenario(json.loads(bundled_path(arg).read_text())), arg
    return load_scenario(p), p.stem


def _err(msg: str) -> None:
    print(f"error: {msg}", file=sys.stderr)


def cmd_plan(args) -> int:
    try:
        sc, stem = _resolve_scenario(args.scenario)
    except (InvalidScenario, OSError) as exc:
        _err(f"invalid scenario: {exc}")
        return EXIT_INVALID
    seed = sc.planner.seed if args.seed is None else args.seed
    run = run_pipeline(sc, seed)
    doc = result_document(run, record_timing=args.timing, include_tree=args.tree)
    out = Path(args.output) if args.output else default_out_dir() / f"{stem}_seed{seed}.json"
    write_result(doc, out)
    n_ok = sum(g.reached for g in run.plan.goals)
    print(f"{out}: {n_ok}/{len(sc.goals)} goals reached in {run.plan.iterations_used} iterations")
    if doc["metrics"]["smoothed"]:
        m = doc["metrics"]["smoothed"]
        print(f"smoothed F_L={m['F_L']:.3f} m  F_S={m['F_S']:.4f} rad  planner time={run.plan.wall_time:.4f} s")
    return EXIT_OK if run.all_reached else EXIT_PARTIAL


def _params_from_args(args) -> tuple[UavParams, float]:
    params, gamma_deg = UavParams(), DEFAULT_GAMMA_MAX_DEG
    if args.scenario:
        sc, _ = _resolve_scenario(args.scenario)
        params, gamma_deg = sc.uav, sc.planner.gamma_max_deg
    overrides = {f.name: getattr(args, f.name) for f in fields(UavParams) if getattr(args, f.name) is not None}
    if overrides:
        params = replace(params, **overrides)
    if args.gamma_max_deg is not None:
        gamma_deg = args.gamma_max_deg
    return params, gamma_deg


def cmd_derive(args) -> int:
    try:
        params, gamma_deg = _params_from_args(args)
        rep = derivation_report(params, gamma_deg)
    except InsufficientThrust as exc:
        _err(f"insufficient thrust: {exc}")
        return EXIT_INVALID
    except (InvalidScenario, ValueError, OSError) as exc:
        _err(str(exc))
        return EXIT_INVALID
    if args.json:
        safe = {k: (None if isinstance(v, float) and not math.isfinite(v) else v) for k, v in rep.items()}
        print(json.dumps(safe, indent=2, sort_keys=True))
        return EXIT_OK
    g = rep["gamma_max_curvature_per_m"]
    print(f"max total thrust f_Tmax     : {rep['max_total_thrust_N']:.6g} N")
    print(f"cruise pitch angle theta    : {rep['pitch_angle_rad']:.6g} rad")
    print(f"minimum turning radius R_min: {rep['min_turning_radius_m']:.6g} m")
    print(f"gamma_max = 1/R_min         : {g:.6g} 1/m")
    print(f"  read as radians           : {rep['gamma_max_read_as_deg']:.4f} deg")
    print(f"configured gamma_max        : {rep['configured_gamma_max_deg']:g} deg (used by the planner)")
    if g == 0.0:
        print("zero turning authority: full thrust only just balances gravity and drag")
    print(f"note: {rep['note']}")
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sc, stem = _resolve_scenario(args.scenario)
    except (InvalidScenario, OSError) as exc:
        _err(f"invalid scenario: {exc}")
        return EXIT_INVALID
    if args.trials < 1:
        _err("--trials must be >= 1")
        return EXIT_INVALID
    rows = bench_mod.run_bench(sc, args.trials, parallel=args.parallel, base_seed=args.seed, workers=args.workers)
    out_dir = Path(args.output) if args.output else default_out_dir()
    csv_path, json_path = bench_mod.write_bench(rows, out_dir, f"{stem}_bench")
    summary = bench_mod.summarize(rows)
    print(f"{csv_path}\n{json_path}")
    print(f"{summary['succeeded']}/{summary['trials']} trials reached every goal")
    for m in ("F_L", "F_S", "F_T"):
        s = summary["stats"][m]
        if s["n"]:
            print(
                f"{m}: min={s['min']:.4f} max={s['max']:.4f} mean={s['mean']:.4f} "
                f"std={s['stddev']:.4f} median={s['median']:.4f}"
            )
    return EXIT_OK


def cmd_plot(args) -> int:
    try:
        doc = load_result(args.result)
        svg = render_svg(doc, show_tree=not args.no_tree)
    except InvalidResult as exc:
        _err(str(exc))
        return EXIT_INVALID
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(svg)
    print(out)
    return EXIT_OK


def cmd_metrics(args) -> int:
    try:
        doc = load_result(args.result)
        fresh = audit_result(doc)
    except InvalidResult as exc:
        _err(str(exc))
        return EXIT_INVALID
    except MetricsMismatch as exc:
        _err("self-audit failed")
        for line in exc.mismatches:
            print(f"  {line}", file=sys.stderr)
        return EXIT_MISMATCH
    for rep in ("raw", "reduced", "smoothed"):
        m = fresh["metrics"][rep]
        if m:
            print(f"{rep:9s} F_L={m['F_L']:.4f} m  F_S={m['F_S']:.5f} rad")
    if "timing" in doc:
        print(f"F_T={doc['timing']['F_T']:.5f} s")
    for idx, g in sorted(fresh["goals"].items()):
        L = g["length"]
        print(
            f"goal {idx}: length raw={L['raw']:.3f} reduced={L['reduced']:.3f} smoothed={L['smoothed']:.3f}"
            f"  speed={fresh['speeds'][idx]:.4f} m/s"
        )
    unreached = [g["index"] for g in doc["goals"] if g["status"] != "reached"]
    if unreached:
        print(f"unreached goals: {unreached}")
    print("self-audit: OK")
    return EXIT_OK


def cmd_schema(args) -> int:
    print(json.dumps(SCENARIO_SCHEMA, indent=2))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multirrt", description="Multi-goal RRT planner for cooperative UAV missions.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("plan", help="plan, reduce and smooth paths for a scenario")
    sp.add_argument("scenario", help="scenario JSON file or bundled name (scenario1..4, scalability)")
    sp.add_argument("-o", "--output", help=f"result JSON path (default: ${OUT_DIR_ENV}/<name>_seed<N>.json)")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--timing", action="store_true", help="record wall-clock timings (output no longer byte-stable)")
    sp.add_argument("--tree", action="store_true", help="embed the full RRT in the result")
    sp.set_defaults(func=cmd_plan)

    sp = sub.add_parser("derive", help="report the turning limit implied by the UAV parameters")
    sp.add_argument("--scenario", help="take UAV parameters from this scenario")
    for f in fields(UavParams):
        sp.add_argument("--" + f.name.replace("_", "-"), dest=f.name, type=float)
    sp.add_argument("--gamma-max-deg", type=float)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_derive)

    sp = sub.add_parser("bench", help="run seeded trials and summarise F_L / F_S / F_T")
    sp.add_argument("scenario")
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, help="base seed (default: scenario seed)")
    sp.add_argument("--parallel", action="store_true")
    sp.add_argument("--workers", type=int)
    sp.add_argument("-o", "--output", help=f"output directory (default: ${OUT_DIR_ENV})")
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("plot", help="render a result file to SVG")
    sp.add_argument("result")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--no-tree", action="store_true")
    sp.set_defaults(func=cmd_plot)

    sp = sub.add_parser("metrics", help="recompute and cross-check metrics of a result file")
    sp.add_argument("result")
    sp.set_defaults(func=cmd_metrics)

    sp = sub.add_parser("schema", help="print the scenario JSON schema")
    sp.set_defaults(func=cmd_schema)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
