"""Row-wise objective kernels: every function maps ``X`` (n, d) into ``out`` (n,).

Each benchmark exists as a loop kernel (compiled by numba) and a numpy twin.
"""
import math

import numpy as np

from ._backend import KernelPair

TWO_PI = 2.0 * math.pi
SCHWEFEL_OFFSET = 418.9828872724338


def _ackley_loop(X, out):
    n, d = X.shape
    for i in range(n):
        sq = 0.0
        cs = 0.0
        for j in range(d):
            x = X[i, j]
            sq += x * x
            cs += math.cos(TWO_PI * x)
        out[i] = -20.0 * math.exp(-0.2 * math.sqrt(sq / d)) - math.exp(cs / d) + 20.0 + math.e


def _ackley_np(X, out):
    d = X.shape[1]
    sq = np.sum(X * X, axis=1)
    cs = np.sum(np.cos(TWO_PI * X), axis=1)
    out[:] = -20.0 * np.exp(-0.2 * np.sqrt(sq / d)) - np.exp(cs / d) + 20.0 + math.e


def _alpine01_loop(X, out):
    n, d = X.shape
    for i in range(n):
        s = 0.0
        for j in range(d):
            x = X[i, j]
            s += abs(x * math.sin(x) + 0.1 * x)
        out[i] = s


def _alpine01_np(X, out):
    out[:] = np.sum(np.abs(X * np.sin(X) + 0.1 * X), axis=1)


def _bird_loop(X, out):
    for i in range(X.shape[0]):
        x1 = X[i, 0]
        x2 = X[i, 1]
        out[i] = (math.sin(x1) * math.exp((1.0 - math.cos(x2)) ** 2)
                  + math.cos(x2) * math.exp((1.0 - math.sin(x1)) ** 2)
                  + (x1 - x2) ** 2)


def _bird_np(X, out):
    x1 = X[:, 0]
    x2 = X[:, 1]
    out[:] = (np.sin(x1) * np.exp((1.0 - np.cos(x2)) ** 2)
              + np.cos(x2) * np.exp((1.0 - np.sin(x1)) ** 2)
              + (x1 - x2) ** 2)


def _leon_loop(X, out):
    for i in range(X.shape[0]):
        x1 = X[i, 0]
        x2 = X[i, 1]
        out[i] = 100.0 * (x2 - x1 ** 3) ** 2 + (1.0 - x1) ** 2


def _leon_np(X, out):
    x1 = X[:, 0]
    x2 = X[:, 1]
    out[:] = 100.0 * (x2 - x1 ** 3) ** 2 + (1.0 - x1) ** 2


def _cross_in_tray_loop(X, out):
    for i in range(X.shape[0]):
        x1 = X[i, 0]
        x2 = X[i, 1]
        r = math.sqrt(x1 * x1 + x2 * x2)
        g = abs(math.sin(x1) * math.sin(x2) * math.exp(abs(100.0 - r / math.pi)))
        out[i] = -0.0001 * (g + 1.0) ** 0.1


def _cross_in_tray_np(X, out):
    x1 = X[:, 0]
    x2 = X[:, 1]
    r = np.sqrt(x1 * x1 + x2 * x2)
    g = np.abs(np.sin(x1) * np.sin(x2) * np.exp(np.abs(100.0 - r / math.pi)))
    out[:] = -0.0001 * (g + 1.0) ** 0.1


def _easom_loop(X, out):
    for i in range(X.shape[0]):
        x1 = X[i, 0]
        x2 = X[i, 1]
        out[i] = -math.cos(x1) * math.cos(x2) * math.exp(-((x1 - math.pi) ** 2) - (x2 - math.pi) ** 2)


def _easom_np(X, out):
    x1 = X[:, 0]
    x2 = X[:, 1]
    out[:] = -np.cos(x1) * np.cos(x2) * np.exp(-((x1 - math.pi) ** 2) - (x2 - math.pi) ** 2)


def _whitley_loop(X, out):
    n, d = X.shape
    for i in range(n):
        s = 0.0
        for a in range(d):
            xa2 = X[i, a] * X[i, a]
            for b in range(d):
                xb = X[i, b]
                y = 100.0 * (xa2 - xb) ** 2 + (1.0 - xb) ** 2
                s += y * y / 4000.0 - math.cos(y) + 1.0
        out[i] = s


def _whitley_np(X, out):
    xa2 = (X * X)[:, :, None]
    xb = X[:, None, :]
    y = 100.0 * (xa2 - xb) ** 2 + (1.0 - xb) ** 2
    out[:] = np.sum(y * y / 4000.0 - np.cos(y) + 1.0, axis=(1, 2))


def _egg_crate_loop(X, out):
    for i in range(X.shape[0]):
        x1 = X[i, 0]
        x2 = X[i, 1]
        s1 = math.sin(x1)
        s2 = math.sin(x2)
        out[i] = x1 * x1 + x2 * x2 + 25.0 * (s1 * s1 + s2 * s2)


def _egg_crate_np(X, out):
    x1 = X[:, 0]
    x2 = X[:, 1]
    s1 = np.sin(x1)
    s2 = np.sin(x2)
    out[:] = x1 * x1 + x2 * x2 + 25.0 * (s1 * s1 + s2 * s2)


def _griewank_loop(X, out):
    n, d = X.shape
    for i in range(n):
        s = 0.0
        p = 1.0
        for j in range(d):
            x = X[i, j]
            s += x * x
            p *= math.cos(x / math.sqrt(j + 1.0))
        out[i] = s / 4000.0 - p + 1.0


def _griewank_np(X, out):
    d = X.shape[1]
    idx = np.sqrt(np.arange(1.0, d + 1.0))
    out[:] = np.sum(X * X, axis=1) / 4000.0 - np.prod(np.cos(X / idx), axis=1) + 1.0


def _holder_table_loop(X, out):
    for i in range(X.shape[0]):
        x1 = X[i, 0]
        x2 = X[i, 1]
        r = math.sqrt(x1 * x1 + x2 * x2)
        out[i] = -abs(math.sin(x1) * math.cos(x2) * math.exp(abs(1.0 - r / math.pi)))


def _holder_table_np(X, out):
    x1 = X[:, 0]
    x2 = X[:, 1]
    r = np.sqrt(x1 * x1 + x2 * x2)
    out[:] = -np.abs(np.sin(x1) * np.cos(x2) * np.exp(np.abs(1.0 - r / math.pi)))


def _rastrigin_loop(X, out):
    n, d = X.shape
    for i in range(n):
        s = 10.0 * d
        for j in range(d):
            x = X[i, j]
            s += x * x - 10.0 * math.cos(TWO_PI * x)
        out[i] = s


def _rastrigin_np(X, out):
    d = X.shape[1]
    out[:] = 10.0 * d + np.sum(X * X - 10.0 * np.cos(TWO_PI * X), axis=1)


def _rosenbrock_loop(X, out):
    n, d = X.shape
    for i in range(n):
        s = 0.0
        for j in range(d - 1):
            x = X[i, j]
            s += 100.0 * (X[i, j + 1] - x * x) ** 2 + (1.0 - x) ** 2
        out[i] = s


def _rosenbrock_np(X, out):
    head = X[:, :-1]
    out[:] = np.sum(100.0 * (X[:, 1:] - head * head) ** 2 + (1.0 - head) ** 2, axis=1)


def _salomon_loop(X, out):
    n, d = X.shape
    for i in range(n):
        s = 0.0
        for j in range(d):
            s += X[i, j] * X[i, j]
        r = math.sqrt(s)
        out[i] = 1.0 - math.cos(TWO_PI * r) + 0.1 * r


def _salomon_np(X, out):
    r = np.sqrt(np.sum(X * X, axis=1))
    out[:] = 1.0 - np.cos(TWO_PI * r) + 0.1 * r


def _sphere_loop(X, out):
    n, d = X.shape
    for i in range(n):
        s = 0.0
        for j in range(d):
            s += X[i, j] * X[i, j]
        out[i] = s


def _sphere_np(X, out):
    out[:] = np.sum(X * X, axis=1)


def _styblinski_tang_loop(X, out):
    n, d = X.shape
    for i in range(n):
        s = 0.0
        for j in range(d):
            x = X[i, j]
            x2 = x * x
            s += x2 * x2 - 16.0 * x2 + 5.0 * x
        out[i] = 0.5 * s


def _styblinski_tang_np(X, out):
    X2 = X * X
    out[:] = 0.5 * np.sum(X2 * X2 - 16.0 * X2 + 5.0 * X, axis=1)


def _schwefel26_loop(X, out):
    n, d = X.shape
    for i in range(n):
        s = 0.0
        for j in range(d):
            x = X[i, j]
            s += x * math.sin(math.sqrt(abs(x)))
        out[i] = SCHWEFEL_OFFSET * d - s


def _schwefel26_np(X, out):
    d = X.shape[1]
    out[:] = SCHWEFEL_OFFSET * d - np.sum(X * np.sin(np.sqrt(np.abs(X))), axis=1)


KERNELS = {
    "P1": KernelPair(_ackley_loop, _ackley_np),
    "P2": KernelPair(_alpine01_loop, _alpine01_np),
    "P3": KernelPair(_bird_loop, _bird_np),
    "P4": KernelPair(_leon_loop, _leon_np),
    "P5": KernelPair(_cross_in_tray_loop, _cross_in_tray_np),
    "P6": KernelPair(_easom_loop, _easom_np),
    "P7": KernelPair(_whitley_loop, _whitley_np),
    "P8": KernelPair(_egg_crate_loop, _egg_crate_np),
    "P9": KernelPair(_griewank_loop, _griewank_np),
    "P10": KernelPair(_holder_table_loop, _holder_table_np),
    "P11": KernelPair(_rastrigin_loop, _rastrigin_np),
    "P12": KernelPair(_rosenbrock_loop, _rosenbrock_np),
    "P13": KernelPair(_salomon_loop, _salomon_np),
    "P14": KernelPair(_sphere_loop, _sphere_np),
    "P15": KernelPair(_styblinski_tang_loop, _styblinski_tang_np),
    "P16": KernelPair(_schwefel26_loop, _schwefel26_np),
}
