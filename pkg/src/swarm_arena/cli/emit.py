"""CSV/JSON writers and readers for run directories."""
from __future__ import annotations

import csv
import json
import os
from collections import defaultdict
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .. import __version__, profiling
from ..harness import RunMatrix, Tolerance, compare, plan_from_echo, success, success_rates
from ..optimizers import RunRecord
from ..stats import descriptive

RUNS_HEADER = ["problem", "algorithm", "variant", "run", "seed", "best_fitness", "evaluations",
               "wall_time_s", "peak_memory_bytes", "success"]
TRACE_HEADER = ["iteration", "best_so_far"]
WILCOXON_HEADER = ["variant", "problem", "rival", "p_value", "t_plus", "t_minus", "verdict"]
SUMMARY_HEADER = ["rival", "variant", "plus", "equal", "minus"]
SUCCESS_HEADER = ["problem", "algorithm", "variant", "success_fraction"]
COSTS_HEADER = ["problem", "algorithm", "mean_wall_time_s", "mean_peak_memory_bytes", "time_winner", "memory_winner"]
DESCRIPTIVE_HEADER = ["problem", "algorithm", "variant", "mean", "std", "best", "worst", "avg_time_s",
                      "n_success", "n_fail"]
MANIFEST = "manifest.json"


def fmt(x) -> str:
    """Shortest repr that round-trips through ``float()``."""
    return repr(float(x))


def _write_csv(path: Path, header, rows) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def _read_csv(path: Path):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return list(csv.DictReader(fh))
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc


def trace_name(rec: RunRecord) -> str:
    return f"trace_{rec.problem_id}_{rec.algorithm_id}_{rec.variant}_{rec.run_index}.csv"


def emit_runs(matrix: RunMatrix, out_dir) -> list:
    out_dir = Path(out_dir)
    tol = matrix.plan.tolerance
    rows = [[r.problem_id, r.algorithm_id, r.variant, r.run_index, r.seed, fmt(r.best_fitness), r.evaluations,
             fmt(r.wall_time_s), r.peak_memory_bytes, "true" if success(r, tol=tol) else "false"]
            for r in matrix.records]
    files = [_write_csv(out_dir / "runs.csv", RUNS_HEADER, rows)]
    for r in matrix.records:
        trace_rows = ([i + 1, fmt(v)] for i, v in enumerate(r.trace))
        files.append(_write_csv(out_dir / "traces" / trace_name(r), TRACE_HEADER, trace_rows))
    return files


def read_runs(out_dir) -> list:
    """Parse runs.csv into dicts with typed scalar fields."""
    rows = []
    for row in _read_csv(Path(out_dir) / "runs.csv"):
        rows.append({
            "problem": row["problem"], "algorithm": row["algorithm"], "variant": row["variant"],
            "run": int(row["run"]), "seed": int(row["seed"]), "best_fitness": float(row["best_fitness"]),
            "evaluations": int(row["evaluations"]), "wall_time_s": float(row["wall_time_s"]),
            "peak_memory_bytes": int(row["peak_memory_bytes"]), "success": row["success"] == "true",
        })
    return rows


def load_matrix(out_dir) -> RunMatrix:
    """Rebuild a RunMatrix from a run directory (best positions are not stored)."""
    out_dir = Path(out_dir)
    manifest = read_manifest(out_dir)
    plan = plan_from_echo(manifest["plan"])
    spaces = {(p, v.label): v.space for p in plan.problems for v in plan.variants[p]}
    records = []
    for row in read_runs(out_dir):
        space = spaces[row["problem"], row["variant"]]
        rec = RunRecord(
            algorithm_id=row["algorithm"], problem_id=row["problem"], dim=space.dim, space=space,
            seed=row["seed"], best_fitness=row["best_fitness"], best_position=None, trace=np.empty(0),
            evaluations=row["evaluations"], wall_time_s=row["wall_time_s"],
            peak_memory_bytes=row["peak_memory_bytes"], variant=row["variant"], run_index=row["run"],
        )
        trace_file = out_dir / "traces" / trace_name(rec)
        if trace_file.exists():
            rec.trace = np.array([float(r["best_so_far"]) for r in _read_csv(trace_file)])
        records.append(rec)
    return RunMatrix(plan, records, manifest.get("started_at", ""))


def emit_comparison(matrix: RunMatrix, baseline: str, alpha: float, out_dir, metric="fitness", rivals=None) -> list:
    out_dir = Path(out_dir)
    rows, summaries = compare(matrix, baseline, alpha, metric, rivals)
    w_rows = [[r.variant, r.problem, r.rival, fmt(r.result.p_value), fmt(r.result.t_plus), fmt(r.result.t_minus),
               r.result.verdict.value] for r in rows]
    s_rows = [[s.rival, s.variant, s.plus, s.equal, s.minus] for s in summaries]
    return [_write_csv(out_dir / "wilcoxon.csv", WILCOXON_HEADER, w_rows),
            _write_csv(out_dir / "summary.csv", SUMMARY_HEADER, s_rows)]


def emit_success(table, out_dir, name="success.csv") -> Path:
    def order(key):
        prob, alg, var = key
        return int(prob[1:]), alg, var
    rows = [[p, a, v, fmt(table.fractions[p, a, v])] for p, a, v in sorted(table.fractions, key=order)]
    return _write_csv(Path(out_dir) / name, SUCCESS_HEADER, rows)


def emit_success_and_costs(matrix: RunMatrix, out_dir, tol: Tolerance = None) -> list:
    out_dir = Path(out_dir)
    files = [emit_success(success_rates(matrix, tol), out_dir)]
    report = profiling.cost_report(matrix.records, matrix.plan.algorithms)
    by_problem = defaultdict(dict)
    for row in report:
        by_problem[row.problem][row.metric] = row
    rows = []
    for prob, metrics in by_problem.items():
        t, m = metrics["running_time"], metrics["memory_usage"]
        for alg in t.means:
            rows.append([prob, alg, fmt(t.means[alg]), fmt(m.means[alg]), t.winner, m.winner])
    files.append(_write_csv(out_dir / "costs.csv", COSTS_HEADER, rows))
    return files


def emit_descriptive(matrix: RunMatrix, out_dir, tol: Tolerance = None) -> Path:
    tol = tol or matrix.plan.tolerance
    rows = []
    for prob in matrix.plan.problems:
        for alg in matrix.plan.algorithms:
            for var in matrix.variant_labels(prob):
                recs = matrix.select(prob, alg, var)
                if not recs:
                    continue
                d = descriptive([r.best_fitness for r in recs], [r.wall_time_s for r in recs],
                                [success(r, tol=tol) for r in recs])
                rows.append([prob, alg, var, fmt(d.mean), fmt(d.std), fmt(d.best), fmt(d.worst), fmt(d.avg_time_s),
                             d.n_success, d.n_fail])
    return _write_csv(Path(out_dir) / "descriptive.csv", DESCRIPTIVE_HEADER, rows)


def emit_convergence(matrix: RunMatrix, out_dir) -> list:
    """One file per (problem, algorithm): the run-averaged best-so-far trace, one column per variant."""
    out_dir = Path(out_dir)
    files = []
    for prob in matrix.plan.problems:
        labels = matrix.variant_labels(prob)
        for alg in matrix.plan.algorithms:
            columns = []
            for var in labels:
                traces = [r.trace for r in matrix.select(prob, alg, var) if len(r.trace)]
                if not traces:
                    raise ValueError(f"no traces for {prob}/{alg}/{var}; were trace files removed?")
                columns.append(np.mean(np.vstack(traces), axis=0))
            rows = ([i + 1] + [fmt(c[i]) for c in columns] for i in range(len(columns[0])))
            files.append(_write_csv(out_dir / "convergence" / f"convergence_{prob}_{alg}.csv",
                                    ["iteration"] + labels, rows))
    return files


def read_manifest(out_dir) -> dict:
    path = Path(out_dir) / MANIFEST
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc.strerror or exc}") from exc


def write_manifest(out_dir, plan, command, files, started_at, previous=None) -> Path:
    """Write manifest.json last; its presence marks the directory complete.

    Keys: tool, version, command (list of commands applied so far), plan,
    master_seed, started_at, finished_at, files (paths relative to the dir).
    """
    out_dir = Path(out_dir)
    rel = {os.path.relpath(f, out_dir) for f in files}
    commands = [command]
    if previous:
        rel |= set(previous.get("files", []))
        commands = previous.get("command", []) + commands
    manifest = {
        "tool": "swarm-arena",
        "version": __version__,
        "command": commands,
        "plan": plan.echo(),
        "master_seed": plan.master_seed,
        "started_at": previous.get("started_at", started_at) if previous else started_at,
        "finished_at": datetime.now(timezone.utc).isoformat(),
        "files": sorted(rel),
    }
    path = out_dir / MANIFEST
    try:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path
