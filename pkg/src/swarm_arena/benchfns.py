"""The sixteen-problem benchmark catalog and its objective functions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from ._functions import KERNELS
from .errors import DimensionMismatchError

# Search ranges used when every problem is solved in two variables.
NAMED_RANGES = {
    "R1": (-5.0, 5.0),
    "R2": (-250.0, 250.0),
    "R3": (-500.0, 500.0),
}


@dataclass(frozen=True)
class ProblemSpec:
    """One catalog row.

    ``global_minimum`` is the precise optimum used for success checks and
    lower-bound invariants; ``table_minimum`` is the rounded value kept for display.
    For Styblinski-Tang both are per-coordinate and scale with the dimension
    (see :meth:`minimum`).
    """

    id: str
    name: str
    global_minimum: float
    table_minimum: float
    default_lower: float
    default_upper: float
    fixed_dim: Optional[int]
    success_percent: float
    minimum_scales_with_dim: bool = False

    @property
    def is_variable(self) -> bool:
        return self.fixed_dim is None

    @property
    def index(self) -> int:
        return int(self.id[1:])

    def minimum(self, dim: int) -> float:
        if self.minimum_scales_with_dim:
            return self.global_minimum * dim
        return self.global_minimum

    def check_dim(self, dim: int) -> None:
        if self.fixed_dim is not None and dim != self.fixed_dim:
            raise DimensionMismatchError(f"{self.id} ({self.name}) is fixed at dimension {self.fixed_dim}, got {dim}")
        if dim < 1:
            raise DimensionMismatchError(f"{self.id} needs at least one variable, got {dim}")


@dataclass(frozen=True)
class SearchSpace:
    """Box bounds, one ``(lower, upper)`` pair per coordinate."""

    lower: tuple
    upper: tuple
    label: str = ""

    def __post_init__(self):
        lo = tuple(float(v) for v in self.lower)
        hi = tuple(float(v) for v in self.upper)
        if len(lo) != len(hi) or not lo:
            raise DimensionMismatchError("lower and upper bounds must be non-empty and equally long")
        if any(not (a < b) for a, b in zip(lo, hi)):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def box(cls, lower: float, upper: float, dim: int, label: str = "") -> "SearchSpace":
        if dim < 1:
            raise DimensionMismatchError(f"dimension must be positive, got {dim}")
        return cls((lower,) * dim, (upper,) * dim, label)

    @property
    def dim(self) -> int:
        return len(self.lower)

    def arrays(self):
        return np.asarray(self.lower), np.asarray(self.upper)

    def contains(self, x) -> bool:
        lo, hi = self.arrays()
        x = np.asarray(x)
        return bool(np.all((x >= lo) & (x <= hi)))


_TWO_PI = 2.0 * math.pi

_CATALOG = (
    ProblemSpec("P1", "Ackley", 0.0, 0.0, -32.0, 32.0, None, 48.25),
    ProblemSpec("P2", "Alpine01", 0.0, 0.0, 0.0, 10.0, 2, 65.17),
    ProblemSpec("P3", "Bird", -106.76453674926472, -106.76453, -_TWO_PI, _TWO_PI, 2, 59.00),
    ProblemSpec("P4", "Leon", 0.0, 0.0, 0.0, 10.0, 2, 41.17),
    ProblemSpec("P5", "CrossInTray", -2.0626118708227392, -2.062611, -10.0, 10.0, 2, 74.08),
    ProblemSpec("P6", "Easom", -1.0, -1.0, -100.0, 100.0, 2, 26.08),
    ProblemSpec("P7", "Whitley", 0.0, 0.0, -10.24, 10.24, 2, 4.92),
    ProblemSpec("P8", "EggCrate", 0.0, 0.0, -5.0, 5.0, 2, 64.92),
    ProblemSpec("P9", "Griewank", 0.0, 0.0, -600.0, 600.0, None, 6.08),
    ProblemSpec("P10", "HolderTable", -19.208502567886747, -19.2085, -10.0, 10.0, 2, 80.08),
    ProblemSpec("P11", "Rastrigin", 0.0, 0.0, -5.12, 5.12, None, 39.50),
    ProblemSpec("P12", "Rosenbrock", 0.0, 0.0, -5.0, 10.0, None, 44.17),
    ProblemSpec("P13", "Salomon", 0.0, 0.0, -100.0, 100.0, 2, 10.33),
    ProblemSpec("P14", "Sphere", 0.0, 0.0, -1.0, 1.0, 2, 82.75),
    ProblemSpec("P15", "StyblinskiTang", -39.16616570377142, -39.1661, -5.0, 5.0, None, 70.50,
                minimum_scales_with_dim=True),
    ProblemSpec("P16", "Schwefel26", 0.0, 0.0, -500.0, 500.0, 2, 62.67),
)

_BY_ID = {p.id: p for p in _CATALOG}
PROBLEM_IDS = tuple(p.id for p in _CATALOG)


def catalog() -> list:
    """All sixteen problems in id order."""
    return list(_CATALOG)


def problem(problem_id: str) -> ProblemSpec:
    key = str(problem_id).strip().upper()
    try:
        return _BY_ID[key]
    except KeyError:
        raise KeyError(f"unknown problem {problem_id!r}; expected one of P1..P16") from None


def evaluate_batch(problem_id: str, X) -> np.ndarray:
    """Objective values for each row of ``X`` (shape ``(n, d)``)."""
    spec = problem(problem_id)
    X = np.ascontiguousarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-d array of points, got shape {X.shape}")
    spec.check_dim(X.shape[1])
    out = np.empty(X.shape[0])
    KERNELS[spec.id](X, out)
    return out


def evaluate(problem_id: str, x: Sequence[float]) -> float:
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise DimensionMismatchError(f"expected a vector, got shape {x.shape}")
    return float(evaluate_batch(problem_id, x[None, :])[0])


def default_space(problem_id: str, dim: Optional[int] = None) -> SearchSpace:
    """Catalog bounds replicated across ``dim`` coordinates (native dim when omitted)."""
    spec = problem(problem_id)
    if dim is None:
        if spec.fixed_dim is None:
            raise DimensionMismatchError(f"{spec.id} has variable dimension; pass dim")
        dim = spec.fixed_dim
    spec.check_dim(dim)
    return SearchSpace.box(spec.default_lower, spec.default_upper, dim, label="default")


def named_space(label: str, dim: int = 2) -> SearchSpace:
    lo, hi = NAMED_RANGES[label]
    return SearchSpace.box(lo, hi, dim, label=label)


def _radius_range(space: SearchSpace):
    lo, hi = space.arrays()
    nearest = np.where((lo <= 0) & (hi >= 0), 0.0, np.minimum(np.abs(lo), np.abs(hi)))
    farthest = np.maximum(np.abs(lo), np.abs(hi))
    return float(np.sqrt(np.sum(nearest ** 2))), float(np.sqrt(np.sum(farthest ** 2)))


def lower_bound(problem_id: str, space: SearchSpace) -> float:
    """A value no point of ``space`` can beat.

    This is the catalog minimum, except for CrossInTray and HolderTable whose
    exponential envelopes grow with the radius: on wide boxes they dip far
    below the catalog optimum, so an envelope bound is returned instead.
    """
    spec = problem(problem_id)
    base = spec.minimum(space.dim)
    lo, hi = space.arrays()
    inside_default = bool(np.all(lo >= spec.default_lower) and np.all(hi <= spec.default_upper))
    if spec.id not in ("P5", "P10") or inside_default:
        return base
    r_min, r_max = _radius_range(space)
    if spec.id == "P10":
        expo = max(abs(1.0 - r_min / math.pi), abs(1.0 - r_max / math.pi))
        return min(base, -math.exp(expo))
    expo = max(abs(100.0 - r_min / math.pi), abs(100.0 - r_max / math.pi))
    return min(base, -0.0001 * (math.exp(expo) + 1.0) ** 0.1)
