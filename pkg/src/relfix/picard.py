"""Picard iteration with relation audits and certified error bounds.

The engine repeatedly applies a self-map, records the g-residual of every
step, audits whether consecutive iterates stay inside the declared relation,
and (when a contraction factor is supplied) attaches the geometric a-priori
bound alpha^m / (1 - alpha) * |g(r0, r1)| to every step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .gspace import GFunctional, SelfMap
from .relations import FiniteRelation, Path, RelationView, is_preserving_sequence, related

__all__ = [
    "StoppingPolicy",
    "IterationTrace",
    "PathDecayReport",
    "iterate",
    "a_priori_bound",
    "uniqueness_via_path",
    "trace_to_csv",
]


@dataclass(frozen=True)
class StoppingPolicy:
    """When to stop iterating: residual threshold or step budget."""

    residual_tol: float = 1e-12
    max_iterations: int = 1000

    def __post_init__(self) -> None:
        if not (self.residual_tol > 0.0 and math.isfinite(self.residual_tol)):
            raise ValueError("residual_tol must be positive and finite")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be a positive integer")


@dataclass
class IterationTrace:
    """Record of one Picard run.

    ``residuals[k]`` is |g(iterates[k], iterates[k+1])|, so there is one
    residual per map application. ``certified`` is False when the start
    point was not in the seed set (the run still proceeds). When a
    contraction factor was supplied, ``bound_certificates[m]`` is the
    a-priori bound on |g(r_m, r_n)| for every n > m.
    """

    iterates: list[Any]
    residuals: list[float]
    alpha_used: Optional[float]
    preserved: bool
    converged: bool
    certified: bool
    bound_certificates: Optional[list[float]] = None

    @property
    def fixed_point(self) -> Any:
        return self.iterates[-1]

    @property
    def steps(self) -> int:
        return len(self.residuals)


def a_priori_bound(alpha: float, g01: float, m: int) -> float:
    """Geometric tail bound alpha^m / (1 - alpha) * g01.

    Dominates |g(r_m, r_n)| for every n > m once the per-step residual
    contracts by alpha.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if g01 < 0.0:
        raise ValueError("g01 is an absolute residual, must be >= 0")
    if m < 0:
        raise ValueError("m must be nonnegative")
    return (alpha**m) / (1.0 - alpha) * g01


def iterate(
    smap: SelfMap,
    g: GFunctional,
    rel: FiniteRelation | RelationView,
    r0: Any,
    policy: StoppingPolicy = StoppingPolicy(),
    *,
    alpha: Optional[float] = None,
) -> IterationTrace:
    """Run the Picard orbit of ``smap`` from ``r0`` under ``policy``.

    A start point outside the seed set (its image is not related to it) is
    tolerated: the run proceeds but the trace is marked non-certified. A
    non-finite residual aborts with the offending step index.
    """
    iterates: list[Any] = [r0]
    residuals: list[float] = []
    converged = False
    current = r0
    for step in range(policy.max_iterations):
        nxt = smap.apply(current)
        value = abs(g.evaluate(current, nxt))
        if not math.isfinite(value):
            raise ArithmeticError(f"g diverged at step {step}")
        iterates.append(nxt)
        residuals.append(value)
        if value < policy.residual_tol:
            converged = True
            break
        current = nxt

    certified = related(rel, iterates[0], iterates[1])
    preserved = is_preserving_sequence(rel, iterates)

    certificates: Optional[list[float]] = None
    if alpha is not None:
        certificates = [
            a_priori_bound(alpha, residuals[0], m) for m in range(len(residuals))
        ]

    return IterationTrace(
        iterates=iterates,
        residuals=residuals,
        alpha_used=alpha,
        preserved=preserved,
        converged=converged,
        certified=certified,
        bound_certificates=certificates,
    )


@dataclass(frozen=True)
class PathDecayReport:
    """Bound sequence for two fixed points joined by a symmetric-closure path.

    ``bounds[k]`` is alpha^k times the total g-length of the path; it
    dominates |g(fp_a, fp_b)| after k map applications, so its decay to zero
    certifies the two fixed points coincide g-wise.
    """

    bounds: tuple[float, ...]
    measured: float
    coincide: bool


def uniqueness_via_path(
    smap: SelfMap,
    g: GFunctional,
    rel: FiniteRelation | RelationView,
    fp_a: Any,
    fp_b: Any,
    path_nodes: Sequence[Any],
    alpha: float,
    n_steps: int,
    *,
    fp_tol: float = 1e-9,
    tol: float = 1e-12,
) -> PathDecayReport:
    """Certify that two fixed points coincide via a connecting path.

    ``path_nodes`` must run from ``fp_a`` to ``fp_b`` with every consecutive
    pair related in the symmetric closure (either orientation). The bound
    sequence is alpha^k * sum of edge |g| values; the report concludes the
    fixed points coincide when the final bound falls below ``tol``.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if n_steps < 0:
        raise ValueError("n_steps must be nonnegative")
    if len(path_nodes) < 2:
        raise ValueError("a path needs at least two nodes (one edge)")
    if path_nodes[0] != fp_a or path_nodes[-1] != fp_b:
        raise ValueError("path endpoints must be the two fixed points")
    for point in (fp_a, fp_b):
        drift = abs(g.evaluate(point, smap.apply(point)))
        if drift > fp_tol:
            raise ValueError(f"candidate {point!r} is not fixed within {fp_tol}")
    total = 0.0
    for a, b in zip(path_nodes[:-1], path_nodes[1:]):
        if not (related(rel, a, b) or related(rel, b, a)):
            raise ValueError("not a path in the symmetric closure")
        total += abs(g.evaluate(a, b))
    bounds = tuple(total * alpha**k for k in range(n_steps + 1))
    measured = abs(g.evaluate(fp_a, fp_b))
    return PathDecayReport(
        bounds=bounds, measured=measured, coincide=bounds[-1] < tol
    )


def trace_to_csv(trace: IterationTrace) -> str:
    """Residual history as CSV, one row per map application."""
    lines = ["iteration,residual"]
    for k, r in enumerate(trace.residuals):
        lines.append(f"{k},{r:.16e}")
    return "\n".join(lines) + "\n"
