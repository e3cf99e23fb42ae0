"""Per-iteration move kernels with branchy or quadratic inner loops."""
import math

import numpy as np

from .._backend import KernelPair


def _woa_move_loop(X, leader, A, C, p, l, ridx, spiral_b, branch_prob, out):
    n, d = X.shape
    for i in range(n):
        if p[i] < branch_prob:
            if abs(A[i]) < 1.0:
                for k in range(d):
                    dist = abs(C[i] * leader[k] - X[i, k])
                    out[i, k] = leader[k] - A[i] * dist
            else:
                r = ridx[i]
                for k in range(d):
                    dist = abs(C[i] * X[r, k] - X[i, k])
                    out[i, k] = X[r, k] - A[i] * dist
        else:
            coil = math.exp(spiral_b * l[i]) * math.cos(2.0 * math.pi * l[i])
            for k in range(d):
                out[i, k] = abs(leader[k] - X[i, k]) * coil + leader[k]


def _woa_move_np(X, leader, A, C, p, l, ridx, spiral_b, branch_prob, out):
    A_ = A[:, None]
    C_ = C[:, None]
    target = np.where((np.abs(A_) < 1.0), leader[None, :], X[ridx])
    encircle = target - A_ * np.abs(C_ * target - X)
    coil = (np.exp(spiral_b * l) * np.cos(2.0 * math.pi * l))[:, None]
    spiral = np.abs(leader[None, :] - X) * coil + leader[None, :]
    out[:] = np.where((p < branch_prob)[:, None], encircle, spiral)


def _ff_move_loop(X, fitness, alpha, beta0, gamma, u, scale, out):
    n, d = X.shape
    for i in range(n):
        for k in range(d):
            out[i, k] = X[i, k]
        for j in range(n):
            if fitness[j] < fitness[i]:
                r2 = 0.0
                for k in range(d):
                    diff = out[i, k] - X[j, k]
                    r2 += diff * diff
                beta = beta0 * math.exp(-gamma * r2)
                for k in range(d):
                    out[i, k] += beta * (X[j, k] - out[i, k])
        for k in range(d):
            out[i, k] += alpha * (u[i, k] - 0.5) * scale[k]


def _ff_move_np(X, fitness, alpha, beta0, gamma, u, scale, out):
    n = X.shape[0]
    out[:] = X
    for i in range(n):
        xi = out[i]
        for j in np.flatnonzero(fitness < fitness[i]):
            diff = xi - X[j]
            beta = beta0 * math.exp(-gamma * float(diff @ diff))
            xi += beta * (X[j] - xi)
    out += alpha * (u - 0.5) * scale


def _fdo_pace_loop(X, fitness, best_x, best_f, weight_factor, r, out):
    n, d = X.shape
    for i in range(n):
        fi = fitness[i]
        big = max(abs(best_f), abs(fi))
        fw = -1.0
        if fi != 0.0 and big > 0.0:
            fw = min(abs(best_f), abs(fi)) / big - weight_factor
        if fw <= 0.0 or fw >= 1.0:
            for k in range(d):
                out[i, k] = X[i, k] * r[i, k]
        else:
            for k in range(d):
                step = (X[i, k] - best_x[k]) * fw
                out[i, k] = -step if r[i, k] < 0.0 else step


def _fdo_pace_np(X, fitness, best_x, best_f, weight_factor, r, out):
    a = abs(best_f)
    c = np.abs(fitness)
    big = np.maximum(a, c)
    ok = (fitness != 0.0) & (big > 0.0)
    fw = np.full(fitness.shape, -1.0)
    fw[ok] = np.minimum(a, c[ok]) / big[ok] - weight_factor
    walk = (fw <= 0.0) | (fw >= 1.0)
    step = (X - best_x[None, :]) * fw[:, None]
    directed = np.where(r < 0.0, -step, step)
    out[:] = np.where(walk[:, None], X * r, directed)


woa_move = KernelPair(_woa_move_loop, _woa_move_np)
ff_move = KernelPair(_ff_move_loop, _ff_move_np)
fdo_pace = KernelPair(_fdo_pace_loop, _fdo_pace_np)
