"""Uniform-grid functions on [0, 1] and the comparisons the solver needs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "GridFunction",
    "sup_diff",
    "g_order",
    "pointwise_leq",
    "interpolate",
    "grid_to_csv",
]

DEFAULT_INTERVALS = 512


@dataclass
class GridFunction:
    """Values on the uniform nodes t_j = j / n_intervals, j = 0..n_intervals.

    Treated as immutable once built; comparisons and arithmetic go through
    the module functions rather than operator overloads.
    """

    n_intervals: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.n_intervals < 1:
            raise ValueError("n_intervals must be >= 1")
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.n_intervals + 1,):
            raise ValueError(
                f"need {self.n_intervals + 1} node values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("node values must be finite")
        self.values = vals

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n_intervals + 1) / self.n_intervals

    @property
    def step(self) -> float:
        return 1.0 / self.n_intervals

    @classmethod
    def from_callable(
        cls, fn: Callable[[float], float], n_intervals: int = DEFAULT_INTERVALS
    ) -> "GridFunction":
        nodes = np.arange(n_intervals + 1) / n_intervals
        return cls(n_intervals, np.array([float(fn(t)) for t in nodes]))

    @classmethod
    def zeros(cls, n_intervals: int = DEFAULT_INTERVALS) -> "GridFunction":
        return cls(n_intervals, np.zeros(n_intervals + 1))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridFunction):
            return NotImplemented
        return self.n_intervals == other.n_intervals and np.array_equal(
            self.values, other.values
        )

    __hash__ = None  # mutable ndarray payload


def _check_same_grid(u: GridFunction, v: GridFunction) -> None:
    if u.n_intervals != v.n_intervals:
        raise ValueError("grid functions live on different grids")


def sup_diff(u: GridFunction, v: GridFunction) -> float:
    """Sup-norm distance max_j |u_j - v_j| (a metric)."""
    _check_same_grid(u, v)
    return float(np.max(np.abs(u.values - v.values)))


def g_order(u: GridFunction, v: GridFunction) -> float:
    """Signed functional max_j (u_j - v_j).

    Not a metric: it vanishes on the diagonal but also whenever u <= v
    touches equality somewhere, and it is antisymmetric only up to sign on
    comparable pairs.
    """
    _check_same_grid(u, v)
    return float(np.max(u.values - v.values))


def pointwise_leq(u: GridFunction, v: GridFunction) -> bool:
    """Whether u_j <= v_j at every node (the order relation of the solver)."""
    _check_same_grid(u, v)
    return bool(np.all(u.values <= v.values))


def interpolate(u: GridFunction, t: float) -> float:
    """Piecewise-linear value at t in [0, 1]."""
    if not (0.0 <= t <= 1.0):
        raise ValueError(f"t={t} outside [0, 1]")
    x = t * u.n_intervals
    j = min(int(x), u.n_intervals - 1)
    w = x - j
    return float((1.0 - w) * u.values[j] + w * u.values[j + 1])


def grid_to_csv(u: GridFunction) -> str:
    """Node values as CSV with header t,value."""
    lines = ["t,value"]
    for t, v in zip(u.nodes, u.values):
        lines.append(f"{t:.16e},{v:.16e}")
    return "\n".join(lines) + "\n"
