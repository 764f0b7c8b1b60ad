#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Predicted cohomology of the antispherical Wakimoto complexes.

This module provides functionality to enumerate distinguished
partitions, to assemble the modules H_k and the predicted cohomology
of each index n, to specialize a prediction through its Koszul cubes
and to compare it with a directly computed report.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions

from src.dg import build_tilde_C
from src.exceptions import ArgError, RangeError
from src.homology import CohomologyReport, cohomology, merge_reports
from src.qnum import phi
from src.reduce import CubePiece, distinct_parts, is_divisibility_chain, placement_weight
from src.ring import BiPoly, Specialization

# Logger setup
logger = logging.getLogger(__name__)

Partition = Tuple[int, ...]

FREE_CELL = "K"


def distinguished_partitions(k: int) -> List[Partition]:
    """
    Partitions of k whose parts form a divisibility chain.

    Args:
        k: Positive integer

    Returns:
        (1,) for k = 1; otherwise the chains with all parts >= 2, in
        lexicographically descending order
    """
    if k < 1:
        raise RangeError(f"Distinguished partitions need k >= 1, got {k}")
    if k == 1:
        return [(1,)]

    def chains(remaining: int, bound: int) -> List[Partition]:
        if remaining == 0:
            return [()]
        found = []
        for part in range(min(remaining, bound), 1, -1):
            if bound % part:
                continue
            found.extend((part,) + rest for rest in chains(remaining - part, part))
        return found

    result = []
    for first in range(k, 1, -1):
        result.extend((first,) + rest for rest in chains(k - first, first))
    return result


def brute_force_partitions(k: int) -> List[Partition]:
    """All partitions of k filtered by the chain condition, lex descending."""
    if k == 1:
        return [(1,)]
    found = []
    for counts in partitions(k):
        parts = tuple(sorted((p for p, c in counts.items() for _ in range(c)), reverse=True))
        if min(parts) >= 2 and is_divisibility_chain(parts):
            found.append(parts)
    return sorted(found, reverse=True)


def partition_weight(partition: Sequence[int]) -> int:
    """2 * (number of parts) - (number of distinct parts)."""
    return placement_weight(partition, "distinct")


@dataclass(frozen=True)
class Summand:
    """
    k/I[shift] with I generated by phi_d for d in indices.

    A shift-0 class sits in degree 0 and [j] moves it to degree -j.
    i and partition record where the summand comes from.
    """

    shift: int
    indices: Tuple[int, ...] = ()
    partition: Partition = ()
    i: int = 0

    @property
    def degree(self) -> int:
        return -self.shift

    @property
    def generators(self) -> Tuple[BiPoly, ...]:
        return tuple(phi(d) for d in self.indices)

    @property
    def is_free(self) -> bool:
        return not self.indices

    def shifted(self, j: int) -> "Summand":
        return Summand(self.shift + j, self.indices, self.partition, self.i)

    def cell(self) -> str:
        return FREE_CELL if self.is_free else ",".join(str(d) for d in self.indices)

    def cube(self) -> CubePiece:
        return CubePiece(self.degree, self.indices)


@dataclass
class ModulePresentation:
    summands: List[Summand] = field(default_factory=list)

    def shifted(self, j: int) -> "ModulePresentation":
        return ModulePresentation([s.shifted(j) for s in self.summands])

    def by_degree(self) -> Dict[int, List[Summand]]:
        grouped: Dict[int, List[Summand]] = {}
        for summand in sorted(self.summands, key=_cell_order):
            grouped.setdefault(summand.degree, []).append(summand)
        return dict(sorted(grouped.items(), reverse=True))

    def cubes(self) -> List[CubePiece]:
        return [s.cube() for s in self.summands]


def _cell_order(summand: Summand) -> Tuple:
    return summand.i, tuple(-p for p in summand.partition)


def H_module(k: int, weight_rule: str = "distinct") -> ModulePresentation:
    """
    H_k = sum over distinguished partitions lambda of k of
    k/(phi_{lambda_1}, ..., phi_{lambda_r})[1 - |lambda|].

    Args:
        k: Positive integer
        weight_rule: "distinct" or "block", see placement_weight

    Returns:
        The presentation; H_1 is free of rank one with shift 0
    """
    summands = []
    for partition in distinguished_partitions(k):
        indices = tuple(d for d in distinct_parts(partition) if d >= 2)
        summands.append(Summand(1 - placement_weight(partition, weight_rule), indices, partition))
    return ModulePresentation(summands)


def i_range(n: int) -> range:
    if n < 0:
        raise RangeError(f"Index n must be >= 0, got {n}")
    if n == 0:
        return range(2, 3)
    return range(2, max(2 * n, 3) + 1)


def predicted_cohomology(n: int, weight_rule: str = "distinct") -> ModulePresentation:
    """
    Direct sum over i of H_{floor(i/2)}[i - 2].

    Args:
        n: Index, n >= 0
        weight_rule: "distinct" reproduces the published tables, "block"
            matches direct computation

    Returns:
        The presentation, summands tagged with their i
    """
    summands = []
    for i in i_range(n):
        for summand in H_module(i // 2, weight_rule).summands:
            summands.append(Summand(summand.shift + i - 2, summand.indices, summand.partition, i))
    logger.debug(f"Predicted cohomology for n={n} ({weight_rule}): {len(summands)} summands")
    return ModulePresentation(summands)


def ext_degree(degree: int, n: int) -> int:
    return degree + 2 * n


def ext_row(n: int, weight_rule: str = "distinct") -> Dict[int, List[Summand]]:
    """Summands of predicted_cohomology(n) indexed by j = degree + 2n."""
    return {ext_degree(d, n): cell for d, cell in predicted_cohomology(n, weight_rule).by_degree().items()}


def format_cell(summands: Sequence[Summand]) -> str:
    """Stacked generator-index lists, e.g. '6|2,4|2'; free summands print as K."""
    return "|".join(s.cell() for s in sorted(summands, key=_cell_order))


def ext_table(n_max: int, weight_rule: str = "distinct") -> Dict[int, Dict[int, List[List[int]]]]:
    """
    Ext-indexed prediction table.

    Returns:
        For each n in 0..n_max, the nonempty cells j -> list of
        generator-index lists ([] for a free summand)
    """
    table = {}
    for n in range(n_max + 1):
        row = ext_row(n, weight_rule)
        table[n] = {j: [list(s.indices) for s in sorted(cell, key=_cell_order)] for j, cell in sorted(row.items())}
    return table


def formatted_ext_table(n_max: int, weight_rule: str = "distinct") -> Dict[int, Dict[int, str]]:
    return {n: {j: format_cell(cell) for j, cell in sorted(ext_row(n, weight_rule).items())} for n in range(n_max + 1)}


def h_rows(n: int, weight_rule: str = "distinct") -> List[Tuple[str, Dict[int, str]]]:
    """
    The shifted copies H_{floor(i/2)}[i - 2] one per row, cells keyed by degree.
    """
    rows = []
    for i in i_range(n):
        cells: Dict[int, List[Summand]] = {}
        for summand in H_module(i // 2, weight_rule).summands:
            placed = Summand(summand.shift + i - 2, summand.indices, summand.partition, i)
            cells.setdefault(placed.degree, []).append(placed)
        rows.append((f"H_{i // 2}[{i - 2}]", {d: format_cell(c) for d, c in sorted(cells.items(), reverse=True)}))
    return rows


def specialize_prediction(p: ModulePresentation, s: Specialization, label: str = "") -> CohomologyReport:
    """
    Cohomology of the specialized cube model of a prediction.

    Every summand is replaced by the Koszul cube on its generators with
    the top vertex in the summand's degree; quotients are never
    specialized directly.
    """
    reports = [cohomology(piece.cube(), s) for piece in p.cubes()]
    if not reports:
        return CohomologyReport("field" if s.is_field else "integral", label=label)
    return merge_reports(reports, label=label or "predicted")


def _describe(report: CohomologyReport, degree: int) -> str:
    if report.kind == "integral":
        group = report.groups.get(degree)
        return str(group) if group is not None else "0"
    return str(report.dims.get(degree, 0))


def compare(predicted: CohomologyReport, computed: CohomologyReport) -> Dict[int, Tuple[str, str]]:
    """
    Per-degree differences between two reports.

    Returns:
        degree -> (predicted, computed) descriptions; empty when equal
    """
    if predicted.kind != computed.kind:
        raise ArgError(f"Cannot compare a {predicted.kind} report with a {computed.kind} report")
    left, right = predicted.nonzero(), computed.nonzero()
    diff = {}
    for degree in sorted(set(left) | set(right), reverse=True):
        if left.get(degree) != right.get(degree):
            diff[degree] = (_describe(predicted, degree), _describe(computed, degree))
    return diff


@dataclass
class VerificationResult:
    n: int
    specialization: Specialization
    computed: CohomologyReport
    predicted: CohomologyReport
    diff: Dict[int, Tuple[str, str]]

    @property
    def ok(self) -> bool:
        return not self.diff

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "specialization": self.specialization.describe(),
            "ok": self.ok,
            "computed": self.computed.to_json(),
            "predicted": self.predicted.to_json(),
            "diff": {str(d): {"predicted": p, "computed": c} for d, (p, c) in self.diff.items()},
        }


def verify_theorem(n: int, s: Specialization, weight_rule: str = "block", rule: str = "right",
                   sabotage: bool = False) -> VerificationResult:
    """
    Compare the direct cohomology of the antispherical complex of index n
    with the specialized prediction.

    Args:
        n: Index, n >= 0
        s: Specialization
        weight_rule: Placement rule for the prediction
        rule: Leibniz convention for the direct complex
        sabotage: Shift the prediction by one degree (negative control)

    Returns:
        The verification result
    """
    logger.info(f"Verifying n={n} at {s.describe()}")
    computed = cohomology(build_tilde_C(n, True, rule), s)
    prediction = predicted_cohomology(n, weight_rule)
    if sabotage:
        prediction = prediction.shifted(1)
    predicted = specialize_prediction(prediction, s)
    diff = compare(predicted, computed)
    if diff:
        logger.warning(f"Mismatch for n={n} at {s.describe()} in degrees {sorted(diff)}")
    return VerificationResult(n, s, computed, predicted, diff)


def first_rule_disagreement(n_max: int) -> Optional[int]:
    """Smallest n <= n_max where the two weight rules place some summand differently."""
    for n in range(n_max + 1):
        distinct = sorted((s.degree, s.indices) for s in predicted_cohomology(n, "distinct").summands)
        block = sorted((s.degree, s.indices) for s in predicted_cohomology(n, "block").summands)
        if distinct != block:
            return n
    return None
