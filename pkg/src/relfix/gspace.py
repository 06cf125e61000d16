"""Generalized distance functionals and mechanical hypothesis checks.

A g-functional is a continuous real map on pairs of carrier points standing
in for a metric. It need not vanish only on the diagonal, need not be
symmetric in sign, and its triangle property may be asserted only on
relation-constrained triples. The checks here scan finite sample sets and
report the first violation found, so a degenerate functional is flagged with
a concrete witness instead of a bare boolean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from .relations import FiniteRelation, RelationView, related

__all__ = [
    "GFunctional",
    "SelfMap",
    "PropertyReport",
    "ContractionEstimate",
    "verify_g_properties",
    "relation_pattern_report",
    "estimate_contraction_factor",
    "check_limit_uniqueness",
    "low_discrepancy_points",
    "related_pairs",
]

_MODES = ("global", "relation_restricted")


@dataclass(frozen=True)
class GFunctional:
    """Pairwise functional with a declared domain for its axioms.

    ``declared_domain_mode`` records whether the vanishing, absolute-symmetry
    and triangle properties are claimed for all pairs ("global") or only for
    relation-constrained ones ("relation_restricted").
    """

    evaluate: Callable[[Any, Any], float]
    declared_domain_mode: str = "global"

    def __post_init__(self) -> None:
        if self.declared_domain_mode not in _MODES:
            raise ValueError(f"declared_domain_mode must be one of {_MODES}")


@dataclass(frozen=True)
class SelfMap:
    """A self-map of the carrier."""

    apply: Callable[[Any], Any]

    def __call__(self, x: Any) -> Any:
        return self.apply(x)


def _json_safe(x: Any) -> Any:
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    if isinstance(x, (int, float, str, bool)) or x is None:
        return x
    return str(x)


@dataclass
class PropertyReport:
    """Outcome of a g-functional property scan.

    Each witness field is None when the property held on every pattern
    scanned, otherwise it is the first violating pair/triple in scan order.
    """

    g1_witness: Optional[tuple[Any, Any]]
    g2_witness: Optional[tuple[Any, Any]]
    g3_witness: Optional[tuple[Any, Any, Any]]
    samples_checked: int

    @property
    def passed(self) -> bool:
        return (
            self.g1_witness is None
            and self.g2_witness is None
            and self.g3_witness is None
        )

    def to_json_dict(self) -> dict:
        return {
            "passed": self.passed,
            "g1_witness": _json_safe(self.g1_witness),
            "g2_witness": _json_safe(self.g2_witness),
            "g3_witness": _json_safe(self.g3_witness),
            "samples_checked": self.samples_checked,
        }


def _check_finite(value: float, a: Any, b: Any) -> float:
    if not math.isfinite(value):
        raise ArithmeticError(f"g not finite at ({a!r}, {b!r})")
    return value


def verify_g_properties(
    g: GFunctional,
    rel: FiniteRelation | RelationView,
    samples: Sequence[Any],
    tol: float = 1e-12,
) -> PropertyReport:
    """Scan a sample set for violations of the three g-functional properties.

    Vanishing (g1) and absolute symmetry (g2) are scanned over all sample
    pairs. The triangle property (g3) is scanned over triples ``(r, u, t)``
    with ``(r, u)`` and ``(t, u)`` related when the functional declares the
    relation-restricted mode, over all triples otherwise. Scan order is the
    nested index order of ``samples``; the first violation is reported.
    """
    ev = g.evaluate
    n = len(samples)

    g1_witness = None
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            r, u = samples[i], samples[j]
            if r == u:
                continue
            if abs(_check_finite(ev(r, u), r, u)) <= tol:
                g1_witness = (r, u)
                break
        if g1_witness is not None:
            break

    g2_witness = None
    for i in range(n):
        for j in range(i + 1, n):
            r, u = samples[i], samples[j]
            if abs(abs(ev(r, u)) - abs(ev(u, r))) > tol:
                g2_witness = (r, u)
                break
        if g2_witness is not None:
            break

    restricted = g.declared_domain_mode == "relation_restricted"
    g3_witness = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r, u, t = samples[i], samples[j], samples[k]
                if restricted and not (related(rel, r, u) and related(rel, t, u)):
                    continue
                if abs(ev(r, u)) > abs(ev(r, t)) + abs(ev(t, u)) + tol:
                    g3_witness = (r, u, t)
                    break
            if g3_witness is not None:
                break
        if g3_witness is not None:
            break

    return PropertyReport(g1_witness, g2_witness, g3_witness, n)


def relation_pattern_report(
    g: GFunctional,
    rel: FiniteRelation | RelationView,
    samples: Sequence[Any],
    tol: float = 1e-12,
) -> PropertyReport:
    """Scan only the patterns the relational fixed-point hypotheses demand.

    Vanishing and absolute symmetry are required on related sample pairs,
    the triangle property on triples ``(r, u, t)`` with both ``(r, u)`` and
    ``(t, u)`` related. A functional can fail the global scan of
    :func:`verify_g_properties` and still pass here; that gap is exactly
    what lets a degenerate functional support a fixed-point argument.
    """
    ev = g.evaluate
    n = len(samples)

    g1_witness = None
    for i in range(n):
        for j in range(n):
            r, u = samples[i], samples[j]
            if r == u or not related(rel, r, u):
                continue
            if abs(ev(r, u)) <= tol:
                g1_witness = (r, u)
                break
        if g1_witness is not None:
            break

    g2_witness = None
    for i in range(n):
        for j in range(n):
            r, u = samples[i], samples[j]
            if not related(rel, r, u):
                continue
            if abs(abs(ev(r, u)) - abs(ev(u, r))) > tol:
                g2_witness = (r, u)
                break
        if g2_witness is not None:
            break

    g3_witness = None
    for i in range(n):
        for j in range(n):
            for k in range(n):
                r, u, t = samples[i], samples[j], samples[k]
                if not (related(rel, r, u) and related(rel, t, u)):
                    continue
                if abs(ev(r, u)) > abs(ev(r, t)) + abs(ev(t, u)) + tol:
                    g3_witness = (r, u, t)
                    break
            if g3_witness is not None:
                break
        if g3_witness is not None:
            break

    return PropertyReport(g1_witness, g2_witness, g3_witness, n)


@dataclass(frozen=True)
class ContractionEstimate:
    """Largest observed ratio |g(S a, S b)| / |g(a, b)| and where it occurred."""

    factor: float
    worst_pair: tuple[Any, Any]

    def to_json_dict(self) -> dict:
        return {"factor": self.factor, "worst_pair": _json_safe(self.worst_pair)}


def estimate_contraction_factor(
    g: GFunctional,
    smap: SelfMap,
    rel: FiniteRelation | RelationView,
    pairs: Sequence[tuple[Any, Any]],
) -> ContractionEstimate:
    """Supremum of the image-to-source g-ratio over sampled related pairs.

    Pairs where the source value vanishes carry no ratio information and are
    skipped. Supplying a pair outside the relation is a caller error.
    """
    best = -math.inf
    worst_pair = None
    for a, b in pairs:
        if not related(rel, a, b):
            raise ValueError(f"pair ({a!r}, {b!r}) is not in the relation")
        denom = abs(_check_finite(g.evaluate(a, b), a, b))
        if denom == 0.0:
            continue
        num = abs(_check_finite(g.evaluate(smap.apply(a), smap.apply(b)), a, b))
        ratio = num / denom
        if ratio > best:
            best = ratio
            worst_pair = (a, b)
    if worst_pair is None:
        raise ValueError("no informative pairs")
    return ContractionEstimate(best, worst_pair)


def check_limit_uniqueness(
    g: GFunctional,
    seq: Sequence[Any],
    limit_a: Any,
    limit_b: Any,
    tol: float = 1e-12,
) -> bool:
    """Whether two candidate limits of one sequence coincide g-wise.

    Both candidates must actually be g-limits of the sequence tail, else
    this raises. The verdict is |g(limit_a, limit_b)| <= 2 tol, the bound
    the triangle property forces through the common tail; under a
    degenerate functional distinct points can legitimately both pass.
    """
    if len(seq) == 0:
        raise ValueError("empty sequence")
    tail = seq[-1]
    for limit in (limit_a, limit_b):
        if abs(_check_finite(g.evaluate(tail, limit), tail, limit)) > tol:
            raise ValueError("not a g-limit")
    return abs(g.evaluate(limit_a, limit_b)) <= 2.0 * tol


def low_discrepancy_points(
    bounds: tuple[tuple[float, float], tuple[float, float]],
    count: int,
) -> list[tuple[float, float]]:
    """Deterministic Halton points (bases 2 and 3) in a planar bounding box."""

    def halton(index: int, base: int) -> float:
        result = 0.0
        f = 1.0
        i = index
        while i > 0:
            f /= base
            result += f * (i % base)
            i //= base
        return result

    (x0, x1), (y0, y1) = bounds
    pts = []
    for k in range(1, count + 1):
        pts.append(
            (x0 + (x1 - x0) * halton(k, 2), y0 + (y1 - y0) * halton(k, 3))
        )
    return pts


def related_pairs(
    rel: FiniteRelation | RelationView, points: Sequence[Any]
) -> list[tuple[Any, Any]]:
    """All ordered related pairs of distinct probe points, in scan order."""
    out = []
    n = len(points)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if related(rel, points[i], points[j]):
                out.append((points[i], points[j]))
    return out
