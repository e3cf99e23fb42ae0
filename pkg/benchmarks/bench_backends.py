"""Compare the numba kernels with their numpy twins.

    python benchmarks/bench_backends.py [--repeat 5] [--quick]

Prints the best-of-N wall time per workload and backend, plus the speedup.
"""
import argparse
import sys
import timeit

import numpy as np

from swarm_arena import _backend, benchfns
from swarm_arena.optimizers import OptimizerConfig, minimize
from swarm_arena.optimizers._kernels import ff_move


def workloads(quick):
    rng = np.random.default_rng(0)
    n = 2_000 if quick else 100_000
    X = rng.uniform(-5, 5, (n, 30))

    pop = 30 if quick else 100
    F = rng.uniform(-5, 5, (pop, 10))
    fit = rng.random(pop)
    u = rng.random(F.shape)
    scale = np.full(10, 10.0)
    moved = np.empty_like(F)

    cfg = OptimizerConfig(population_size=30, iterations=20 if quick else 300)
    space = benchfns.default_space("P11", 10)

    def eval_all():
        for pid in ("P1", "P9", "P11", "P12", "P15"):
            benchfns.evaluate_batch(pid, X)

    return {
        f"evaluate_batch 5 fns, {n}x30": eval_all,
        f"ff_move pop={pop}, dim=10": lambda: ff_move(F, fit, 0.2, 1.0, 1.0, u, scale, moved),
        f"minimize ff on P11, {cfg.iterations} iters": lambda: minimize("ff", "P11", space, cfg, seed=1),
        f"minimize woa on P11, {cfg.iterations} iters": lambda: minimize("woa", "P11", space, cfg, seed=1),
    }


def measure(task, repeat):
    task()  # warm-up, also triggers compilation
    return min(timeit.repeat(task, number=1, repeat=repeat))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--quick", action="store_true", help="tiny sizes, for smoke testing")
    args = parser.parse_args(argv)

    backends = ["numpy"] + (["numba"] if _backend.HAS_NUMBA else [])
    previous = _backend.get_backend()
    results = {}
    try:
        for name in backends:
            _backend.set_backend(name)
            for label, task in workloads(args.quick).items():
                results[label, name] = measure(task, args.repeat)
    finally:
        _backend.set_backend(previous)

    width = max(len(label) for label, _ in results)
    print(f"{'workload':<{width}}  {'numpy s':>10}  {'numba s':>10}  speedup")
    for label in dict.fromkeys(label for label, _ in results):
        t_np = results[label, "numpy"]
        t_nb = results.get((label, "numba"))
        if t_nb is None:
            print(f"{label:<{width}}  {t_np:>10.4f}  {'n/a':>10}")
        else:
            print(f"{label:<{width}}  {t_np:>10.4f}  {t_nb:>10.4f}  {t_np / t_nb:6.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
