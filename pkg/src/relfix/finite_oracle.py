"""Exhaustive model checking of the relational fixed-point claim.

Instances are tiny carriers {0, ..., n-1} with an integer pair matrix
standing in for the g-functional, an explicit relation, and a self-map given
as an index array. The checker enumerates instances deterministically,
tests every hypothesis of the fixed-point claim mechanically, and verifies
the conclusion (a fixed point exists and every seeded orbit reaches one
within n steps). Any instance satisfying the hypotheses but violating the
conclusion would be a counterexample; the sweep reports them all, sorted by
enumeration index.

Completeness and continuity are automatic on a finite carrier under the
discrete reading; the success reason records that explicitly rather than
silently assuming it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional, Sequence

from .relations import FiniteRelation, is_connected, symmetric_closure

__all__ = [
    "ALPHA_GRID",
    "FiniteInstance",
    "SweepSpec",
    "SweepResult",
    "OracleReport",
    "enumerate_instances",
    "fixed_points",
    "contraction_alpha",
    "hypotheses_hold",
    "conclusion_holds",
    "image_symmetric_connected",
    "run_oracle",
    "default_sweeps",
]

# contraction is existential over this grid; the grid is part of the
# instance-space definition, not a tunable
ALPHA_GRID: tuple[Fraction, ...] = (
    Fraction(1, 4),
    Fraction(1, 2),
    Fraction(3, 4),
)
_ALPHA_INT: tuple[tuple[int, int], ...] = ((1, 4), (2, 4), (3, 4))

MAX_GROUND_SIZE = 4
DEFAULT_G_MAX = 3


@dataclass(slots=True)
class FiniteInstance:
    """One model-check instance; treated as immutable once enumerated."""

    n: int
    g_matrix: tuple[tuple[int, ...], ...]
    rel: FiniteRelation
    mapping: tuple[int, ...]
    alpha: Optional[Fraction] = None
    index: int = -1

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "n": self.n,
            "pairs": [list(p) for p in self.rel.sorted_pairs],
            "map": list(self.mapping),
            "g": [list(row) for row in self.g_matrix],
            "alpha": None if self.alpha is None else str(self.alpha),
        }


def enumerate_instances(
    n: int,
    g_max: int = DEFAULT_G_MAX,
    rel_count_cap: Optional[int] = None,
) -> Iterator[FiniteInstance]:
    """Deterministic instance stream for one carrier size.

    Relations are enumerated by ascending bitmask over row-major pair
    indices (pair (r, s) is bit r*n + s) and capped at the first
    ``rel_count_cap`` masks; maps and integer matrices with entries in
    [-g_max, g_max] are enumerated exhaustively in lexicographic order.
    Stream nesting is relation -> map -> matrix, and every instance carries
    its stream index.
    """
    if n < 2:
        raise ValueError("ground size must be at least 2")
    if n > MAX_GROUND_SIZE:
        raise ValueError("instance space too large")
    if g_max < 0:
        raise ValueError("g_max must be nonnegative")

    total_masks = 1 << (n * n)
    mask_count = total_masks if rel_count_cap is None else min(rel_count_cap, total_masks)
    pair_of_bit = [(bit // n, bit % n) for bit in range(n * n)]

    entries = range(-g_max, g_max + 1)
    row_choices = list(product(entries, repeat=n))
    maps = list(product(range(n), repeat=n))

    index = 0
    for mask in range(mask_count):
        pairs = frozenset(
            pair_of_bit[bit] for bit in range(n * n) if mask >> bit & 1
        )
        rel = FiniteRelation(n, pairs)
        for mapping in maps:
            for g_matrix in product(row_choices, repeat=n):
                yield FiniteInstance(n, g_matrix, rel, mapping, None, index)
                index += 1


def fixed_points(inst: FiniteInstance) -> list[int]:
    return [i for i in range(inst.n) if inst.mapping[i] == i]


def contraction_alpha(inst: FiniteInstance) -> Optional[Fraction]:
    """Smallest grid factor under which every related pair contracts."""
    g = inst.g_matrix
    mapping = inst.mapping
    pairs = inst.rel.sorted_pairs
    for (num, den), frac in zip(_ALPHA_INT, ALPHA_GRID):
        for r, s in pairs:
            if den * abs(g[mapping[r]][mapping[s]]) > num * abs(g[r][s]):
                break
        else:
            return frac
    return None


def hypotheses_hold(inst: FiniteInstance) -> tuple[bool, str]:
    """Mechanically test every hypothesis on the patterns the claim uses.

    Vanishing and absolute symmetry are required on related pairs, the
    triangle property on triples (r, u, t) with (r, u) and (t, u) both
    related; then closedness of the relation under the map, a nonempty seed
    set, and contraction on related pairs for some grid factor.
    """
    n = inst.n
    g = inst.g_matrix
    mapping = inst.mapping
    pairs = inst.rel.sorted_pairs
    pair_set = inst.rel.pairs

    for r, s in pairs:
        if r != s and g[r][s] == 0:
            return False, f"(g1) fails: g[{r}][{s}] = 0 on related distinct pair ({r}, {s})"

    for r, s in pairs:
        if abs(g[r][s]) != abs(g[s][r]):
            return False, f"(g2) fails: |g[{r}][{s}]| != |g[{s}][{r}]| on related pair ({r}, {s})"

    in_nbrs: list[list[int]] = [[] for _ in range(n)]
    for r, s in pairs:
        in_nbrs[s].append(r)
    for u in range(n):
        ins = in_nbrs[u]
        for r in ins:
            gru = abs(g[r][u])
            for t in ins:
                if gru > abs(g[r][t]) + abs(g[t][u]):
                    return False, f"(g3) fails on constrained triple ({r}, {u}, {t})"

    for r, s in pairs:
        if (mapping[r], mapping[s]) not in pair_set:
            return False, f"relation not closed under the map: image of ({r}, {s}) escapes"

    for u in range(n):
        if (u, mapping[u]) in pair_set:
            break
    else:
        return False, "seed set empty: no u with (u, map(u)) related"

    alpha = contraction_alpha(inst)
    if alpha is None:
        return False, "contraction fails on a related pair for every alpha in {1/4, 1/2, 3/4}"

    return True, (
        f"hypotheses hold at alpha = {alpha}; completeness and continuity are "
        "automatic on a finite carrier (discrete reading)"
    )


def conclusion_holds(inst: FiniteInstance) -> bool:
    """A fixed point exists and every seeded orbit reaches one within n steps."""
    mapping = inst.mapping
    fixed = {i for i in range(inst.n) if mapping[i] == i}
    if not fixed:
        return False
    pair_set = inst.rel.pairs
    for r0 in range(inst.n):
        if (r0, mapping[r0]) not in pair_set:
            continue
        cur = r0
        if cur in fixed:
            continue
        for _ in range(inst.n):
            cur = mapping[cur]
            if cur in fixed:
                break
        else:
            return False
    return True


def image_symmetric_connected(inst: FiniteInstance) -> bool:
    """Whether the map image is path-connected in the symmetric closure."""
    return is_connected(symmetric_closure(inst.rel), set(inst.mapping))


@dataclass(frozen=True)
class SweepSpec:
    """One enumeration slice: carrier size, entry bound, relation cap."""

    n: int
    g_max: int = DEFAULT_G_MAX
    rel_count_cap: Optional[int] = None


@dataclass
class SweepResult:
    spec: SweepSpec
    instances_checked: int = 0
    hypotheses_satisfied: int = 0
    counterexamples: list[dict] = field(default_factory=list)
    uniqueness_candidates: int = 0
    uniqueness_violations: list[dict] = field(default_factory=list)
    completeness_note: str = (
        "completeness and continuity treated as automatic on finite carriers "
        "(discrete reading)"
    )
    elapsed_seconds: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "n": self.spec.n,
            "g_max": self.spec.g_max,
            "rel_count_cap": self.spec.rel_count_cap,
            "instances_checked": self.instances_checked,
            "hypotheses_satisfied": self.hypotheses_satisfied,
            "counterexamples": self.counterexamples,
            "uniqueness_candidates": self.uniqueness_candidates,
            "uniqueness_violations": self.uniqueness_violations,
            "completeness_note": self.completeness_note,
            "elapsed_seconds": round(self.elapsed_seconds, 3),
        }


@dataclass
class OracleReport:
    sweeps: list[SweepResult]

    @property
    def total_checked(self) -> int:
        return sum(s.instances_checked for s in self.sweeps)

    @property
    def counterexamples(self) -> list[dict]:
        out: list[dict] = []
        for s in self.sweeps:
            out.extend(s.counterexamples)
        return out

    @property
    def uniqueness_violations(self) -> list[dict]:
        out: list[dict] = []
        for s in self.sweeps:
            out.extend(s.uniqueness_violations)
        return out

    def to_json_dict(self) -> dict:
        return {
            "total_checked": self.total_checked,
            "counterexample_count": len(self.counterexamples),
            "uniqueness_violation_count": len(self.uniqueness_violations),
            "sweeps": [s.to_json_dict() for s in self.sweeps],
        }


def default_sweeps(n: int) -> list[SweepSpec]:
    """Per-size defaults keeping each sweep inside an interactive budget."""
    table = {
        2: SweepSpec(2, g_max=2, rel_count_cap=None),
        3: SweepSpec(3, g_max=1, rel_count_cap=8),
        4: SweepSpec(4, g_max=1, rel_count_cap=2),
    }
    if n not in table:
        raise ValueError("ground size must be 2, 3, or 4")
    return [table[n]]


def run_oracle(sweeps: Sequence[SweepSpec]) -> OracleReport:
    """Run the model check over every requested slice.

    Counterexamples (hypotheses hold, conclusion fails) come back sorted by
    enumeration index within each sweep. Hypothesis-satisfying instances
    whose map image is connected in the symmetric closure are additionally
    held to a unique fixed point; violations are reported separately.
    """
    results: list[SweepResult] = []
    for spec in sweeps:
        res = SweepResult(spec=spec)
        start = time.perf_counter()
        for inst in enumerate_instances(spec.n, spec.g_max, spec.rel_count_cap):
            res.instances_checked += 1
            ok, reason = hypotheses_hold(inst)
            if not ok:
                continue
            res.hypotheses_satisfied += 1
            inst.alpha = contraction_alpha(inst)
            if not conclusion_holds(inst):
                doc = inst.to_json_dict()
                doc["reason"] = reason
                res.counterexamples.append(doc)
            if image_symmetric_connected(inst):
                res.uniqueness_candidates += 1
                if len(fixed_points(inst)) != 1:
                    doc = inst.to_json_dict()
                    doc["fixed_points"] = fixed_points(inst)
                    res.uniqueness_violations.append(doc)
        res.elapsed_seconds = time.perf_counter() - start
        results.append(res)
    return OracleReport(results)
