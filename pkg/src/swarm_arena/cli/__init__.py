"""Command-line front end: ``swarm-arena {run,stats,compare,report,convergence}``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .. import benchfns
from ..harness import EvalKind, Tolerance, evaluation3, execute, plan_evaluation
from ..optimizers import ALGORITHM_IDS
from . import emit

log = logging.getLogger("swarm_arena")

DESK = {"runs": 5, "iterations": 200}
FULL = {"runs": 30, "iterations": 2000}
COMMANDS = ("run", "stats", "compare", "report", "convergence")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _nonneg_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _alpha(text):
    value = _nonneg_float(text)
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError("alpha must lie in (0, 1)")
    return value


def _algorithms(text):
    items = [t.strip().lower() for t in text.split(",") if t.strip()]
    bad = [t for t in items if t not in ALGORITHM_IDS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"unknown algorithm(s) {bad}; choose from {','.join(ALGORITHM_IDS)}")
    return items


def _problems(text):
    items = [t.strip().upper() for t in text.split(",") if t.strip()]
    bad = [t for t in items if t not in benchfns.PROBLEM_IDS]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"unknown problem(s) {bad}; choose from P1..P16")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swarm-arena", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", default=None, help="results directory (default: $SWARM_ARENA_OUT or ./results)")
        p.add_argument("--tol-abs", type=_nonneg_float, default=None)
        p.add_argument("--tol-rel", type=_nonneg_float, default=None)
        p.add_argument("-v", "--verbose", action="store_true")

    run = sub.add_parser("run", help="execute an evaluation and write runs.csv plus traces")
    common(run)
    run.add_argument("--eval", type=int, choices=(1, 2, 3), default=None)
    run.add_argument("--algorithms", type=_algorithms, default=None)
    run.add_argument("--problems", type=_problems, default=None)
    run.add_argument("--runs", type=_positive_int, default=None)
    run.add_argument("--iters", type=_positive_int, default=None)
    run.add_argument("--pop", type=_positive_int, default=None)
    run.add_argument("--seed", type=_seed, default=None)
    run.add_argument("--parallel", type=_positive_int, default=None)
    run.add_argument("--profile-memory", action="store_true", default=None,
                     help="record peak allocation per trial (forces sequential trials)")
    run.add_argument("--profile-time", action="store_true", default=None,
                     help="record wall time per trial (makes runs.csv non-reproducible)")
    run.add_argument("--full", action="store_true", help="full-scale profile: 30 runs x 2000 iterations")
    run.add_argument("--config", default=None, help="JSON file with defaults; flags override it")

    common(sub.add_parser("stats", help="descriptive statistics per cell"))

    cmp_ = sub.add_parser("compare", help="pairwise Wilcoxon signed-rank tests against a baseline")
    common(cmp_)
    cmp_.add_argument("--baseline", type=str.lower, choices=ALGORITHM_IDS, default="woa")
    cmp_.add_argument("--alpha", type=_alpha, default=0.05)
    cmp_.add_argument("--metric", choices=("fitness", "time"), default="fitness")

    common(sub.add_parser("report", help="success fractions and cost report"))
    common(sub.add_parser("convergence", help="run-averaged convergence traces"))
    return parser


@dataclass
class Invocation:
    command: str
    args: argparse.Namespace
    overrides: dict = field(default_factory=dict)
    kind: EvalKind = EvalKind.EVAL2
    out_dir: Path = Path("results")


_CONFIG_KEYS = {"eval", "algorithms", "problems", "runs", "iters", "pop", "seed", "tol_abs", "tol_rel",
                "parallel", "profile_memory", "profile_time", "optimizer", "dims", "spaces"}


def _load_config(path):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ValueError(f"unknown keys in {path}: {', '.join(sorted(unknown))}")
    return data


def parse_args(argv=None) -> Invocation:
    """Parse ``argv`` into a command plus evaluation-plan overrides.

    Precedence: explicit flags, then the ``--config`` file, then the desk
    (or ``--full``) profile defaults.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    out = args.out or os.environ.get("SWARM_ARENA_OUT") or "results"
    inv = Invocation(args.command, args, out_dir=Path(out))
    tol = {"tol_abs": args.tol_abs, "tol_rel": args.tol_rel}
    inv.overrides.update({k: v for k, v in tol.items() if v is not None})
    if args.command != "run":
        return inv

    try:
        cfg = _load_config(args.config) if args.config else {}
    except (OSError, ValueError) as exc:
        parser.error(f"--config: {exc}")
    profile = FULL if args.full else DESK

    def pick(flag_value, cfg_key, default=None):
        if flag_value is not None:
            return flag_value
        return cfg.get(cfg_key, default)

    inv.kind = EvalKind(pick(args.eval, "eval", 2))
    ov = {
        "runs": pick(args.runs, "runs", profile["runs"]),
        "iterations": pick(args.iters, "iters", profile["iterations"]),
        "master_seed": pick(args.seed, "seed", 0),
    }
    for flag, key, name in ((args.algorithms, "algorithms", "algorithms"), (args.problems, "problems", "problems"),
                            (args.pop, "pop", "population_size"), (args.tol_abs, "tol_abs", "tol_abs"),
                            (args.tol_rel, "tol_rel", "tol_rel")):
        value = pick(flag, key)
        if value is not None:
            ov[name] = value
    for key in ("dims", "spaces"):
        if key in cfg:
            ov[key] = cfg[key]
    if "optimizer" in cfg:
        ov["config"] = cfg["optimizer"]
    if not isinstance(ov["runs"], int) or ov["runs"] < 1:
        parser.error("runs must be >= 1")
    inv.overrides = ov
    args.parallel = pick(args.parallel, "parallel", 1)
    args.profile_memory = bool(pick(args.profile_memory, "profile_memory", False))
    args.profile_time = bool(pick(args.profile_time, "profile_time", False))
    return inv


def _now():
    return datetime.now(timezone.utc).isoformat()


def _progress(done, total, rec):
    if done == total or done % max(1, total // 20) == 0:
        log.info("%d/%d cells done (last: %s %s %s run %d)", done, total, rec.problem_id, rec.algorithm_id,
                 rec.variant, rec.run_index)


def _execute_into(plan, out_dir, args, label):
    started = _now()
    matrix = execute(plan, progress=_progress, parallel=args.parallel,
                     measure_time=args.profile_time, measure_memory=args.profile_memory)
    files = emit.emit_runs(matrix, out_dir)
    emit.write_manifest(out_dir, plan, label, files, started)
    return matrix


def _reuse_or_run(plan, out_dir, args, label):
    manifest_path = out_dir / emit.MANIFEST
    if manifest_path.exists():
        if emit.read_manifest(out_dir).get("plan") == json.loads(json.dumps(plan.echo())):
            log.info("reusing completed %s in %s", label, out_dir)
            return emit.load_matrix(out_dir)
        log.info("plan in %s differs; re-running %s", out_dir, label)
    return _execute_into(plan, out_dir, args, label)


def cmd_run(inv: Invocation) -> None:
    plan = plan_evaluation(inv.kind, inv.overrides)
    out = inv.out_dir
    if plan.kind != EvalKind.EVAL3:
        _execute_into(plan, out, inv.args, f"run --eval {int(plan.kind)}")
        return
    started = _now()
    matrices = [_reuse_or_run(src, out / f"eval{int(src.kind)}", inv.args, f"run --eval {int(src.kind)}")
                for src in plan.sources]
    files = [emit.emit_success(evaluation3(matrices, plan.tolerance), out)]
    files += [out / f"eval{int(src.kind)}" / emit.MANIFEST for src in plan.sources]
    emit.write_manifest(out, plan, "run --eval 3", files, started)


def _tolerance(inv, matrix):
    base = matrix.plan.tolerance
    return Tolerance(inv.overrides.get("tol_abs", base.abs), inv.overrides.get("tol_rel", base.rel))


def _analyse(inv: Invocation, name, produce) -> None:
    out = inv.out_dir
    previous = emit.read_manifest(out)
    matrix = emit.load_matrix(out)
    files = produce(matrix)
    emit.write_manifest(out, matrix.plan, name, files, _now(), previous=previous)


def main(argv=None) -> int:
    inv = parse_args(argv)
    logging.basicConfig(level=logging.INFO if getattr(inv.args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if inv.command == "run":
            cmd_run(inv)
        elif inv.command == "stats":
            _analyse(inv, "stats", lambda m: [emit.emit_descriptive(m, inv.out_dir, _tolerance(inv, m))])
        elif inv.command == "compare":
            a = inv.args
            _analyse(inv, f"compare --baseline {a.baseline} --alpha {a.alpha} --metric {a.metric}",
                     lambda m: emit.emit_comparison(m, a.baseline, a.alpha, inv.out_dir, a.metric))
        elif inv.command == "report":
            _analyse(inv, "report", lambda m: emit.emit_success_and_costs(m, inv.out_dir, _tolerance(inv, m)))
        elif inv.command == "convergence":
            _analyse(inv, "convergence", lambda m: emit.emit_convergence(m, inv.out_dir))
    except (OSError, ValueError, KeyError) as exc:
        print(f"swarm-arena {inv.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0
