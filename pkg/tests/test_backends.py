"""The numba kernels and their numpy twins must agree."""
import numpy as np
import pytest

from swarm_arena import _backend, benchfns
from swarm_arena._functions import KERNELS
from swarm_arena.optimizers import OptimizerConfig, minimize
from swarm_arena.optimizers._kernels import fdo_pace, ff_move, woa_move

pytestmark = pytest.mark.skipif(not _backend.HAS_NUMBA, reason="numba not installed")


@pytest.mark.parametrize("pid", benchfns.PROBLEM_IDS)
def test_objective_kernels_agree(pid):
    spec = benchfns.problem(pid)
    dim = spec.fixed_dim or 7
    lo, hi = benchfns.default_space(pid, dim).arrays()
    X = lo + (hi - lo) * np.random.default_rng(3).random((500, dim))
    a, b = np.empty(500), np.empty(500)
    KERNELS[pid].numba(X, a)
    KERNELS[pid].numpy(X, b)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def _draws(n, d, seed=0):
    rng = np.random.default_rng(seed)
    return rng, rng.normal(size=(n, d))


def test_woa_move_agrees():
    rng, X = _draws(30, 5)
    leader = X[3].copy()
    A = rng.uniform(-2, 2, 30)
    C = rng.uniform(0, 2, 30)
    p = rng.random(30)
    l = rng.uniform(-1, 1, 30)
    ridx = rng.integers(0, 30, 30).astype(np.int64)
    a, b = np.empty_like(X), np.empty_like(X)
    woa_move.numba(X, leader, A, C, p, l, ridx, 1.0, 0.5, a)
    woa_move.numpy(X, leader, A, C, p, l, ridx, 1.0, 0.5, b)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def test_ff_move_agrees():
    rng, X = _draws(25, 4)
    f = rng.random(25)
    u = rng.random(X.shape)
    scale = np.full(4, 3.0)
    a, b = np.empty_like(X), np.empty_like(X)
    ff_move.numba(X, f, 0.2, 1.0, 0.7, u, scale, a)
    ff_move.numpy(X, f, 0.2, 1.0, 0.7, u, scale, b)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)


def test_fdo_pace_agrees():
    rng, X = _draws(30, 3)
    f = rng.normal(size=30)
    f[4] = 0.0
    best = int(np.argmin(f))
    r = rng.uniform(-1, 1, X.shape)
    for wf in (0.0, 0.3):
        a, b = np.empty_like(X), np.empty_like(X)
        fdo_pace.numba(X, f, X[best], f[best], wf, r, a)
        fdo_pace.numpy(X, f, X[best], f[best], wf, r, b)
        np.testing.assert_array_equal(a, b)


@pytest.mark.parametrize("algo", ["woa", "bsa", "fdo", "pso", "ff"])
def test_short_runs_agree_across_backends(algo):
    cfg = OptimizerConfig(population_size=10, iterations=5)
    space = benchfns.default_space("P14")
    previous = _backend.get_backend()
    try:
        _backend.set_backend("numba")
        a = minimize(algo, "P14", space, cfg, seed=11)
        _backend.set_backend("numpy")
        b = minimize(algo, "P14", space, cfg, seed=11)
    finally:
        _backend.set_backend(previous)
    np.testing.assert_allclose(a.trace, b.trace, rtol=1e-9, atol=1e-300)


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        _backend.set_backend("cuda")
