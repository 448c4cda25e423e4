"""Seeded benchmark harness: repeated trials on one scenario plus box-plot statistics."""

from __future__ import annotations

import csv
import io
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .pipeline import metric_block, run_pipeline
from .scenario import Scenario

CSV_FIELDS = [
    "trial", "seed", "status", "goals_reached", "iterations",
    "F_L", "F_S", "F_L_reduced", "F_S_reduced", "F_L_raw", "F_S_raw", "F_T", "error",
]
# Wall-clock columns; everything else in a row is a pure function of (scenario, seed).
TIMING_FIELDS = ("F_T",)
SUMMARY_METRICS = ("F_L", "F_S", "F_T", "F_L_reduced", "F_S_reduced", "F_L_raw", "F_S_raw")


def run_trial(sc: Scenario, trial: int, seed: int) -> dict:
    row = dict.fromkeys(CSV_FIELDS, "")
    row.update(trial=trial, seed=seed)
    try:
        run = run_pipeline(sc, seed)
    except Exception as exc:  # a failed trial is recorded, not fatal
        row.update(status="error", error=f"{type(exc).__name__}: {exc}")
        return row
    n_ok = sum(g.reached for g in run.plan.goals)
    row.update(
        status="ok" if run.all_reached else "partial",
        goals_reached=n_ok,
        iterations=run.plan.iterations_used,
        F_T=run.plan.wall_time,
    )
    if run.all_reached:
        for rep, suffix in (("smoothed", ""), ("reduced", "_reduced"), ("raw", "_raw")):
            block = metric_block([p for _, p in sorted(run.paths(rep).items())])
            row["F_L" + suffix] = block["F_L"]
            row["F_S" + suffix] = block["F_S"]
    return row


def _trial_args(sc, trials, base_seed):
    return [(sc, t, base_seed + t) for t in range(trials)]


def _star(args):
    return run_trial(*args)


def run_bench(sc: Scenario, trials: int, *, parallel: bool = False, base_seed: int | None = None,
              workers: int | None = None) -> list[dict]:
    """Run ``trials`` plans with seeds ``base_seed .. base_seed + trials - 1``."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    base = sc.planner.seed if base_seed is None else base_seed
    jobs = _trial_args(sc, trials, base)
    if parallel:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_star, jobs))
    else:
        rows = [run_trial(*j) for j in jobs]
    return sorted(rows, key=lambda r: r["trial"])


def box_stats(values) -> dict:
    vals = [float(v) for v in values]
    if not vals:
        return {"n": 0, "min": None, "max": None, "mean": None, "stddev": None, "median": None}
    return {
        "n": len(vals),
        "min": min(vals),
        "max": max(vals),
        "mean": statistics.fmean(vals),
        "stddev": statistics.pstdev(vals),
        "median": statistics.median(vals),
    }


def summarize(rows: list[dict]) -> dict:
    ok = [r for r in rows if r["status"] == "ok"]
    return {
        "trials": len(rows),
        "succeeded": len(ok),
        "partial": sum(r["status"] == "partial" for r in rows),
        "errors": sum(r["status"] == "error" for r in rows),
        "seeds": [r["seed"] for r in rows],
        "stats": {m: box_stats(r[m] for r in ok) for m in SUMMARY_METRICS},
    }


def rows_to_csv(rows: list[dict], *, drop: tuple = ()) -> str:
    fields = [f for f in CSV_FIELDS if f not in drop]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.items()})
    return buf.getvalue()


def write_bench(rows: list[dict], out_dir, stem: str = "bench") -> tuple[Path, Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / f"{stem}_trials.csv"
    json_path = out_dir / f"{stem}_summary.json"
    csv_path.write_text(rows_to_csv(rows))
    json_path.write_text(json.dumps(summarize(rows), indent=2, sort_keys=True) + "\n")
    return csv_path, json_path
