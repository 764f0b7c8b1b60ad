#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Cohomology of complexes.

This module provides functionality to compute the cohomology of a
DgComplex after specialization: integral cohomology through Smith normal
forms, dimensions over the rationals and over prime fields through ranks,
and bigraded dimensions of complexes of free graded modules over
Q[a_s, a_t].
"""

import math
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.dg import DgComplex
from src.exceptions import ArgError, InhomogeneousEntry
from src.ring import Specialization, specialize

# Logger setup
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbGroup:
    """
    Finitely generated abelian group Z^free + sum of Z/d_i.

    Attributes:
        free_rank: Rank of the free part
        torsion: Invariant factors d_1 | d_2 | ..., each at least 2
    """

    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ArgError(f"Negative free rank: {self.free_rank}")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ArgError(f"Torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ArgError(f"Torsion factors must be >= 2: {self.torsion}")

    @classmethod
    def from_factors(cls, free_rank: int, factors: Sequence[int]) -> "AbGroup":
        """Build from arbitrary cyclic orders, normalizing to invariant factors."""
        return cls(free_rank, invariant_factors([abs(f) for f in factors if abs(f) != 1 and f != 0]))

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, other: "AbGroup") -> "AbGroup":
        return AbGroup.from_factors(self.free_rank + other.free_rank, self.torsion + other.torsion)

    def __str__(self):
        pieces = []
        if self.free_rank:
            pieces.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        pieces.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(pieces) if pieces else "0"


def invariant_factors(factors: Sequence[int]) -> Tuple[int, ...]:
    """
    Normalize a list of positive integers to a divisibility chain with the
    same direct sum of cyclic groups.
    """
    values = [f for f in factors if f > 1]
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            g = math.gcd(values[i], values[j])
            values[i], values[j] = g, values[i] * values[j] // g
    return tuple(sorted(v for v in values if v > 1))


@dataclass
class CohomologyReport:
    """
    Per-degree cohomology.

    Attributes:
        kind: "integral" (groups) or "field" (dims)
        groups: AbGroup per degree for integral reports
        dims: Dimension per degree for field reports
        label: Free-form description
    """

    kind: str
    groups: Dict[int, AbGroup] = field(default_factory=dict)
    dims: Dict[int, int] = field(default_factory=dict)
    label: str = ""

    def degrees(self) -> List[int]:
        return sorted(self.groups if self.kind == "integral" else self.dims)

    def nonzero(self) -> Dict[int, Any]:
        if self.kind == "integral":
            return {d: g for d, g in sorted(self.groups.items()) if not g.is_zero()}
        return {d: v for d, v in sorted(self.dims.items()) if v}

    def to_json(self) -> Dict[str, Any]:
        if self.kind == "integral":
            return {str(d): {"free": g.free_rank, "torsion": list(g.torsion)} for d, g in sorted(self.groups.items())}
        return {str(d): v for d, v in sorted(self.dims.items())}

    def __str__(self):
        values = self.nonzero()
        if not values:
            return "0"
        return ", ".join(f"H^{d} = {v}" for d, v in values.items())


def reports_equal(a: CohomologyReport, b: CohomologyReport) -> bool:
    """Equality of nonzero parts; degrees absent on one side count as zero."""
    return a.kind == b.kind and a.nonzero() == b.nonzero()


def merge_reports(reports: Sequence[CohomologyReport], label: str = "") -> CohomologyReport:
    """Cohomology of a direct sum."""
    if not reports:
        return CohomologyReport("integral", label=label)
    kind = reports[0].kind
    merged = CohomologyReport(kind, label=label)
    for report in reports:
        if report.kind != kind:
            raise ArgError("Cannot merge integral and field reports")
        if kind == "integral":
            for d, g in report.groups.items():
                merged.groups[d] = merged.groups.get(d, AbGroup()).direct_sum(g)
        else:
            for d, v in report.dims.items():
                merged.dims[d] = merged.dims.get(d, 0) + v
    return merged


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> Tuple[int, ...]:
    """
    Invariant factors of an integer matrix.

    Reduction by elementary row and column operations, pivoting on the
    entry of minimal absolute value, followed by normalization of the
    diagonal to a divisibility chain.

    Args:
        matrix: Rows of integers

    Returns:
        Nonzero invariant factors d_1 | d_2 | ... (including ones)
    """
    a = [[int(v) for v in row] for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diagonal = []
    t = 0
    while t < rows and t < cols:
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        _move_pivot(a, t, pivot)
        while True:
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    row_t, row_i = a[t], a[i]
                    for j in range(t, cols):
                        row_i[j] -= q * row_t[j]
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    for i in range(t, rows):
                        a[i][j] -= q * a[i][t]
            leftovers = [(i, t) for i in range(t + 1, rows) if a[i][t]]
            leftovers += [(t, j) for j in range(t + 1, cols) if a[t][j]]
            if not leftovers:
                break
            _move_pivot(a, t, min(leftovers, key=lambda ij: abs(a[ij[0]][ij[1]])))
        diagonal.append(abs(a[t][t]))
        t += 1
    return _chain(diagonal)


def _move_pivot(a: List[List[int]], t: int, position: Tuple[int, int]) -> None:
    i, j = position
    if i != t:
        a[t], a[i] = a[i], a[t]
    if j != t:
        for row in a:
            row[t], row[j] = row[j], row[t]


def _chain(diagonal: List[int]) -> Tuple[int, ...]:
    values = list(diagonal)
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            g = math.gcd(values[i], values[j])
            values[i], values[j] = g, values[i] * values[j] // g
    return tuple(sorted(values))


def specialized_matrix(c: DgComplex, degree: int, s: Specialization) -> List[List[Any]]:
    zero = Fraction(0) if s.target == "QQ" else 0
    return c.matrix(degree, lambda e: specialize(e, s), zero)


def integral_cohomology(c: DgComplex, s: Specialization) -> CohomologyReport:
    """
    Integral cohomology after specialization.

    Args:
        c: Complex with polynomial entries
        s: Specialization to the integers

    Returns:
        Report with one AbGroup per degree of the complex
    """
    if s.target != "ZZ":
        raise ArgError(f"Integral cohomology needs a ZZ specialization, got {s.describe()}")
    factors = {d: smith_normal_form(specialized_matrix(c, d, s)) for d in c.degrees}
    report = CohomologyReport("integral", label=f"{c.name} over {s.describe()}")
    for d in c.degrees:
        outgoing = factors.get(d, ())
        incoming = factors.get(d - 1, ())
        free = c.rank(d) - len(outgoing) - len(incoming)
        report.groups[d] = AbGroup(free, tuple(f for f in incoming if f > 1))
    return report


def finite_field_rank(mat: np.ndarray, p: int) -> int:
    """
    Rank over GF(p) by Gauss-Jordan elimination.

    Args:
        mat: Integer array; copied, not mutated
        p: Prime modulus

    Returns:
        The rank
    """
    if mat.size == 0:
        return 0
    mat = mat.copy() % p
    num_rows, num_cols = mat.shape
    row = 0
    for col in range(num_cols):
        if row >= num_rows:
            break
        pivot_rows = np.where(mat[row:, col] != 0)[0]
        if len(pivot_rows) == 0:
            continue
        pivot_row = pivot_rows[0] + row
        if pivot_row != row:
            mat[[row, pivot_row]] = mat[[pivot_row, row]]
        inv_pivot = pow(int(mat[row, col]), -1, p)
        mat[row] = (mat[row] * inv_pivot) % p
        for r in range(num_rows):
            if r != row and mat[r, col] != 0:
                mat[r] = (mat[r] - mat[r, col] * mat[row]) % p
        row += 1
    return row


def rational_rank(matrix: Sequence[Sequence[Any]]) -> int:
    """Rank over QQ through a sympy DomainMatrix."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if rows == 0 or cols == 0:
        return 0
    elements = [[QQ(int(Fraction(v).numerator), int(Fraction(v).denominator)) for v in row] for row in matrix]
    return DomainMatrix(elements, (rows, cols), QQ).rank()


def matrix_rank(matrix: Sequence[Sequence[Any]], s: Specialization) -> int:
    if s.target == "GF":
        rows = len(matrix)
        cols = len(matrix[0]) if rows else 0
        if rows == 0 or cols == 0:
            return 0
        return finite_field_rank(np.array(matrix, dtype=np.int64).reshape(rows, cols), s.p)
    if s.target == "QQ":
        return rational_rank(matrix)
    raise ArgError(f"Ranks need a field, got {s.describe()}")


def field_cohomology(c: DgComplex, s: Specialization) -> CohomologyReport:
    """
    Cohomology dimensions over QQ or GF(p).

    Args:
        c: Complex with polynomial entries
        s: Specialization to a field

    Returns:
        Report with one dimension per degree of the complex
    """
    if not s.is_field:
        raise ArgError(f"Field cohomology needs QQ or GF(p), got {s.describe()}")
    ranks = {d: matrix_rank(specialized_matrix(c, d, s), s) for d in c.degrees}
    report = CohomologyReport("field", label=f"{c.name} over {s.describe()}")
    for d in c.degrees:
        report.dims[d] = c.rank(d) - ranks.get(d, 0) - ranks.get(d - 1, 0)
    return report


def cohomology(c: DgComplex, s: Specialization) -> CohomologyReport:
    """Integral or field cohomology depending on the target."""
    return field_cohomology(c, s) if s.is_field else integral_cohomology(c, s)


def universal_coefficient_dims(report: CohomologyReport, p: int) -> Dict[int, int]:
    """
    Mod-p dimensions implied by an integral report.

    dim H^i(C; F_p) = free_i + #{p | d in torsion_i} + #{p | d in torsion_{i+1}}.
    """
    if report.kind != "integral":
        raise ArgError("Universal coefficients need an integral report")
    dims = {}
    for d, group in report.groups.items():
        above = report.groups.get(d + 1, AbGroup())
        dims[d] = (group.free_rank + sum(1 for f in group.torsion if f % p == 0)
                   + sum(1 for f in above.torsion if f % p == 0))
    return dims


def _monomials(internal: int, shift: int) -> List[Tuple[int, int]]:
    gap = internal - shift
    if gap < 0 or gap % 2:
        return []
    h = gap // 2
    return [(i, h - i) for i in range(h, -1, -1)]


def graded_field_cohomology(c: DgComplex, cutoff: int = 20,
                            shift_of: Callable[[Any], int] = lambda label: label.generator_degree,
                            low: Optional[int] = None) -> Dict[Tuple[int, int], int]:
    """
    Bigraded cohomology dimensions of a complex of free graded modules
    over Q[a_s, a_t], with a_s and a_t in internal degree 2.

    Args:
        c: Complex whose entries are polynomials in a_s, a_t only
        cutoff: Largest internal degree computed
        shift_of: Internal degree of the generator of a basis element
        low: Smallest internal degree computed (default: smallest shift)

    Returns:
        Map (cohomological degree, internal degree) -> dimension

    Raises:
        InhomogeneousEntry: if an entry does not have the degree fixed by
            the two shifts
    """
    shifts = graded_shifts(c, shift_of)
    if low is None:
        low = min((s for values in shifts.values() for s in values), default=0)
    result: Dict[Tuple[int, int], int] = {}
    for internal in range(low, cutoff + 1):
        spaces = graded_spaces(c, internal, shifts)
        ranks = {d: rational_rank(graded_matrix(c, d, spaces)) for d in c.degrees}
        for d in c.degrees:
            result[(d, internal)] = len(spaces[d]) - ranks.get(d, 0) - ranks.get(d - 1, 0)
    return result


def graded_shifts(c: DgComplex, shift_of: Callable[[Any], int] = lambda label: label.generator_degree
                  ) -> Dict[int, List[int]]:
    """
    Generator degrees per cohomological degree, after checking that every
    entry is a form in a_s, a_t of the degree fixed by the two shifts.

    Raises:
        InhomogeneousEntry: on the first entry that is not
    """
    shifts = {d: [shift_of(label) for label in c.basis[d]] for d in c.degrees}
    for d in c.degrees:
        for (row, col), value in c.entries(d).items():
            gap = shifts[d][col] - shifts[d + 1][row]
            if any(e[0] or e[1] for e, _ in value.items()):
                raise InhomogeneousEntry(f"Entry {value} still involves x or y")
            if gap % 2 or any(e[2] + e[3] != gap // 2 for e, _ in value.items()):
                raise InhomogeneousEntry(f"Entry {value} at degree {d} does not have internal degree {gap}")
    return shifts


def graded_spaces(c: DgComplex, internal: int,
                  shifts: Dict[int, List[int]]) -> Dict[int, Dict[Tuple[int, Tuple[int, int]], int]]:
    """
    Monomial bases of the pieces in one internal degree: (basis index,
    (power of a_s, power of a_t)) -> coordinate, per cohomological degree.
    """
    spaces = {}
    for d in c.degrees:
        index = {}
        for i, shift in enumerate(shifts[d]):
            for monomial in _monomials(internal, shift):
                index[(i, monomial)] = len(index)
        spaces[d] = index
    return spaces


def graded_matrix(c: DgComplex, d: int, spaces: Dict[int, Dict[Tuple[int, Tuple[int, int]], int]]) -> List[List[int]]:
    """Rational matrix of the differential from degree d within one internal degree; [] if a side is empty."""
    source, target = spaces.get(d, {}), spaces.get(d + 1, {})
    if not source or not target:
        return []
    matrix = [[0] * len(source) for _ in range(len(target))]
    for (row, col), value in c.entries(d).items():
        for (i, (ps, pt)), position in source.items():
            if i != col:
                continue
            for (_, _, es, et), coefficient in value.items():
                matrix[target[(row, (ps + es, pt + et))]][position] += coefficient
    return matrix


def rational_nullspace(matrix: Sequence[Sequence[Any]], cols: Optional[int] = None) -> List[List[Fraction]]:
    """
    Basis of the right kernel over QQ through a sympy DomainMatrix.

    Args:
        matrix: Rows of rationals
        cols: Number of columns, needed when matrix has no rows

    Returns:
        Kernel vectors; the standard basis when matrix has no rows
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else (cols or 0)
    if rows == 0:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    elements = [[QQ(int(Fraction(v).numerator), int(Fraction(v).denominator)) for v in row] for row in matrix]
    kernel = DomainMatrix(elements, (rows, cols), QQ).nullspace()
    return [[Fraction(int(v.numerator), int(v.denominator)) for v in row] for row in kernel.to_list()]
