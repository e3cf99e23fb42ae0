"""Descriptive statistics, the exact Wilcoxon signed-rank test, and +/=/- tallies."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import rankdata


class Verdict(str, enum.Enum):
    PLUS = "+"
    EQUAL = "="
    MINUS = "-"


@dataclass(frozen=True)
class DescriptiveStats:
    mean: float
    std: float
    best: float
    worst: float
    avg_time_s: float
    n_success: int
    n_fail: int


def descriptive(fitness_values, times_s, success_flags) -> DescriptiveStats:
    values = np.asarray(fitness_values, dtype=float)
    times = np.asarray(times_s, dtype=float)
    flags = np.asarray(success_flags, dtype=bool)
    if values.size == 0:
        raise ValueError("descriptive statistics need at least one run")
    if not (values.shape == times.shape == flags.shape):
        raise ValueError("fitness, time and success vectors must have equal length")
    std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
    n_success = int(flags.sum())
    return DescriptiveStats(
        mean=float(values.mean()),
        std=std,
        best=float(values.min()),
        worst=float(values.max()),
        avg_time_s=float(times.mean()),
        n_success=n_success,
        n_fail=int(values.size) - n_success,
    )


def _subset_sum_counts(weights):
    """Number of sign assignments reaching each positive-rank total (integer weights)."""
    counts = np.zeros(sum(weights) + 1, dtype=object)
    counts[0] = 1
    top = 0
    for w in weights:
        counts[w:top + w + 1] = counts[w:top + w + 1] + counts[:top + 1]
        top += w
    return counts


def exact_signed_rank_distribution(n: int) -> dict:
    """Frequencies of the positive-rank sum ``T`` over all 2**n sign patterns of ranks 1..n."""
    if not (isinstance(n, (int, np.integer)) and 1 <= n <= 30):
        raise ValueError(f"n must be an integer in [1, 30], got {n!r}")
    counts = _subset_sum_counts(list(range(1, n + 1)))
    return {t: int(c) for t, c in enumerate(counts)}


@dataclass(frozen=True)
class WilcoxonResult:
    t_plus: float
    t_minus: float
    n_effective: int
    p_value: float
    alpha: float
    verdict: Verdict


def _two_sided_p(ranks, t_plus) -> float:
    # Ranks are integers or half-integers; doubling makes the DP integral.
    doubled = [int(round(2 * r)) for r in ranks]
    counts = _subset_sum_counts(doubled)
    t2 = int(round(2 * t_plus))
    total = sum(counts)
    lower = sum(counts[: t2 + 1])
    upper = sum(counts[t2:])
    p = Fraction(2 * min(lower, upper), total)
    return float(min(Fraction(1), p))


def wilcoxon_signed_rank(a, b, alpha: float = 0.05) -> WilcoxonResult:
    """Paired two-sided signed-rank test of ``a`` against ``b`` (smaller is better).

    Zero differences are dropped and tied magnitudes get average ranks. The
    p-value is exact, from the permutation distribution of the realised ranks.
    ``PLUS`` means ``a`` is significantly smaller, ``MINUS`` significantly larger.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("paired samples must be 1-d and of equal length")
    d = a - b
    d = d[d != 0]
    n = int(d.size)
    if n == 0:
        return WilcoxonResult(0.0, 0.0, 0, 1.0, alpha, Verdict.EQUAL)
    ranks = rankdata(np.abs(d))
    t_plus = float(ranks[d > 0].sum())
    t_minus = float(ranks[d < 0].sum())
    p = _two_sided_p(ranks, t_plus)
    if p >= alpha:
        verdict = Verdict.EQUAL
    elif t_plus < t_minus:
        verdict = Verdict.PLUS
    else:
        verdict = Verdict.MINUS
    return WilcoxonResult(t_plus, t_minus, n, p, alpha, verdict)


_SYMBOLS = {"+": "plus", "=": "equal", "-": "minus", "−": "minus"}


def tally(verdicts) -> tuple:
    """Counts of ``(plus, equal, minus)``; accepts '+', '=', '-' (or a Unicode minus)."""
    counts = {"plus": 0, "equal": 0, "minus": 0}
    for v in verdicts:
        sym = v.value if isinstance(v, Verdict) else str(v)
        try:
            counts[_SYMBOLS[sym]] += 1
        except KeyError:
            raise ValueError(f"unknown verdict symbol {v!r}") from None
    return counts["plus"], counts["equal"], counts["minus"]


@dataclass(frozen=True)
class ComparisonSummary:
    rival: str
    variant: str
    verdicts: dict  # problem -> Verdict
    plus: int
    equal: int
    minus: int

    @property
    def label(self) -> str:
        return f"{self.plus}/{self.equal}/{self.minus}"
