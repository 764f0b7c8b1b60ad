#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Structural reductions of complexes.

This module provides functionality to cancel unit entries of a
differential by Gaussian elimination, to rewrite the pieces B_m in the
gamma variables, to split them into blocks, to rescale the blocks so
that their entries become cyclotomic polynomials or units, and to build
the Koszul cubes that carry the predicted cohomology.
"""

import math
import logging
import itertools
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from src.dg import DgComplex, GenMonomial
from src.exceptions import ArgError, NonIntegralAfterRescale, NotAUnit, NotDivisible
from src.qnum import phi, qbinomial, qnum
from src.ring import ONE, BiPoly, Frac, format_poly, identity_holds, poly_exact_div

# Logger setup
logger = logging.getLogger(__name__)

PLUS = 1
MINUS = -1


def gaussian_eliminate(c: DgComplex, degree: int, row: int, col: int) -> DgComplex:
    """
    Cancel a unit entry of the differential.

    With the differential from degree written as [[phi, f], [g, a]] where
    phi is the pivot, the remaining complex has differential
    a - g phi^-1 f and is homotopy equivalent to c.

    Args:
        c: Complex
        degree: Source degree of the pivot
        row: Target index of the pivot
        col: Source index of the pivot

    Returns:
        The complex without the two cancelled basis elements

    Raises:
        NotAUnit: if the pivot is not +1 or -1
    """
    pivot = c.entry(degree, row, col)
    if not pivot.is_unit():
        raise NotAUnit(f"Pivot {format_poly(pivot)} at degree {degree} ({row},{col}) is not a unit")
    inverse = pivot.constant_value()
    source_label = c.basis[degree][col]
    target_label = c.basis[degree + 1][row]
    basis = {d: list(labels) for d, labels in c.basis.items()}
    basis[degree].remove(source_label)
    basis[degree + 1].remove(target_label)

    def reindex(i: int, removed: int) -> int:
        return i - 1 if i > removed else i

    column_f = {j: v for (i, j), v in c.entries(degree).items() if i == row and j != col}
    column_g = {i: v for (i, j), v in c.entries(degree).items() if j == col and i != row}
    diff: Dict[int, Dict[Tuple[int, int], BiPoly]] = {}
    for d, entries in c.diff.items():
        new_entries: Dict[Tuple[int, int], BiPoly] = {}
        for (i, j), value in entries.items():
            if d == degree:
                if i == row or j == col:
                    continue
                new_entries[(reindex(i, row), reindex(j, col))] = value
            elif d == degree - 1:
                if i == col:
                    continue
                new_entries[(reindex(i, col), j)] = value
            elif d == degree + 1:
                if j == row:
                    continue
                new_entries[(i, reindex(j, row))] = value
            else:
                new_entries[(i, j)] = value
        diff[d] = new_entries
    correction = diff.setdefault(degree, {})
    for i, g in column_g.items():
        for j, f in column_f.items():
            key = (reindex(i, row), reindex(j, col))
            correction[key] = correction.get(key, BiPoly()) - g * f * inverse
    return DgComplex(basis, diff, c.name)


def find_unit_pivot(c: DgComplex) -> Optional[Tuple[int, int, int]]:
    for degree in c.degrees:
        for (row, col), value in sorted(c.entries(degree).items()):
            if value.is_unit():
                return degree, row, col
    return None


def eliminate_units(c: DgComplex) -> DgComplex:
    """Cancel unit entries until none is left."""
    current = c
    steps = 0
    while True:
        pivot = find_unit_pivot(current)
        if pivot is None:
            break
        current = gaussian_eliminate(current, *pivot)
        steps += 1
    logger.debug(f"Eliminated {steps} unit pairs from {c.name}, ranks now {current.ranks()}")
    return current


@dataclass(frozen=True, order=True)
class GammaFactor:
    """gamma_k^+ (sign 1), gamma_k^- (sign -1) or gamma_1 (k = 1, sign 0)."""

    k: int
    sign: int = 0

    def __post_init__(self):
        if self.k == 1 and self.sign != 0:
            raise ArgError("gamma_1 carries no sign")
        if self.k >= 2 and self.sign not in (PLUS, MINUS):
            raise ArgError(f"gamma_{self.k} needs sign +1 or -1")

    @property
    def degree(self) -> int:
        return 2 - 2 * self.k if self.sign == MINUS else 1 - 2 * self.k

    @property
    def parity(self) -> int:
        return self.degree % 2

    def flipped(self) -> "GammaFactor":
        return GammaFactor(self.k, MINUS)

    def __str__(self):
        if self.k == 1:
            return "g1"
        return f"g{self.k}{'+' if self.sign == PLUS else '-'}"


@dataclass(frozen=True)
class GammaMonomial:
    factors: Tuple[GammaFactor, ...] = ()

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    @property
    def total(self) -> int:
        return sum(f.k for f in self.factors)

    @property
    def shape(self) -> Tuple[Tuple[int, ...], bool]:
        """(parts >= 2, whether a trailing gamma_1 is present)."""
        tail = bool(self.factors) and self.factors[-1].k == 1
        parts = tuple(f.k for f in self.factors if f.k >= 2)
        return parts, tail

    def leading_composition(self) -> Tuple[int, ...]:
        """Composition carrying coefficient 1 in the beta expansion."""
        parts: List[int] = []
        for f in self.factors:
            if f.sign == MINUS:
                parts.extend((1, f.k - 1))
            else:
                parts.append(f.k)
        return tuple(parts)

    def __str__(self):
        return "".join(str(f) for f in self.factors) or "1"


def compositions(m: int, min_part: int = 1) -> List[Tuple[int, ...]]:
    """Compositions of m with all parts >= min_part, lexicographic order."""
    if m == 0:
        return [()]
    found = []
    for first in range(min_part, m + 1):
        for rest in compositions(m - first, min_part):
            found.append((first,) + rest)
    return found


def block_shapes(m: int) -> List[Tuple[Tuple[int, ...], bool]]:
    """
    Shapes of the blocks of B_m.

    Compositions of m into parts >= 2, then compositions of m - 1 into
    parts >= 2 followed by gamma_1 (the empty one only for m = 1).
    """
    shapes = [(parts, False) for parts in compositions(m, 2)]
    if m >= 1:
        shapes += [(parts, True) for parts in compositions(m - 1, 2)]
    return shapes


def shape_monomials(parts: Tuple[int, ...], tail: bool) -> List[GammaMonomial]:
    monomials = []
    for signs in itertools.product((PLUS, MINUS), repeat=len(parts)):
        factors = tuple(GammaFactor(k, s) for k, s in zip(parts, signs))
        if tail:
            factors += (GammaFactor(1),)
        monomials.append(GammaMonomial(factors))
    return monomials


def gamma_basis(m: int) -> List[GammaMonomial]:
    return [mono for parts, tail in block_shapes(m) for mono in shape_monomials(parts, tail)]


def expand(mono: GammaMonomial) -> Tuple[Dict[GenMonomial, BiPoly], BiPoly]:
    """
    Beta expansion of a gamma monomial.

    Returns:
        (numerator vector, denominator): the monomial equals numerator / denominator
    """
    vector: Dict[Tuple[int, ...], BiPoly] = {(): ONE}
    denominator = ONE
    for f in mono.factors:
        if f.sign == MINUS:
            pieces = {(i, f.k - i): qbinomial(f.k, i, "y") for i in range(1, f.k)}
            denominator = denominator * qnum(f.k, "y")
        else:
            pieces = {(f.k,): ONE}
        vector = {prefix + piece: value * weight for prefix, value in vector.items() for piece, weight in pieces.items()}
    return {GenMonomial.betas(*parts): value for parts, value in vector.items()}, denominator


def gamma_differential(mono: GammaMonomial, rule: str = "right") -> Dict[GammaMonomial, BiPoly]:
    """
    Differential in the gamma variables: d(gamma_k^+) = [k] gamma_k^-,
    d(gamma_k^-) = d(gamma_1) = 0, extended by the Leibniz rule.
    """
    result = {}
    for j, f in enumerate(mono.factors):
        if f.sign != PLUS:
            continue
        others = mono.factors[j + 1:] if rule == "right" else mono.factors[:j]
        sign = -1 if sum(o.parity for o in others) % 2 else 1
        target = GammaMonomial(mono.factors[:j] + (f.flipped(),) + mono.factors[j + 1:])
        result[target] = qnum(f.k, "y") * sign
    return result


@dataclass
class GammaTransform:
    """
    B_m rewritten in the gamma basis.

    Attributes:
        m: Total parameter
        source: The piece B_m in the beta basis
        complex: The same piece in the gamma basis
        expansions: Beta expansion (numerator, denominator) of each gamma monomial
        rule: Leibniz convention used for both
    """

    m: int
    source: DgComplex
    complex: DgComplex
    expansions: Dict[GammaMonomial, Tuple[Dict[GenMonomial, BiPoly], BiPoly]]
    rule: str = "right"


def gamma_transform(b_m: DgComplex, m: int, rule: str = "right") -> GammaTransform:
    """
    Rewrite B_m in the gamma variables.

    Args:
        b_m: The antispherical piece of total parameter m
        m: Its total parameter
        rule: Leibniz convention used to build b_m

    Returns:
        The transform; see certify_gamma_transform and is_unitriangular
    """
    basis: Dict[int, List[GammaMonomial]] = {}
    for mono in gamma_basis(m):
        basis.setdefault(mono.degree, []).append(mono)
    index = {d: {mono: i for i, mono in enumerate(labels)} for d, labels in basis.items()}
    diff: Dict[int, Dict[Tuple[int, int], BiPoly]] = {}
    for degree, labels in basis.items():
        for col, mono in enumerate(labels):
            for target, value in gamma_differential(mono, rule).items():
                diff.setdefault(degree, {})[(index[degree + 1][target], col)] = value
    gamma_complex = DgComplex(basis, diff, f"B{m}-gamma")
    expansions = {mono: expand(mono) for labels in basis.values() for mono in labels}
    logger.debug(f"Gamma basis of B{m}: {gamma_complex.size()} elements")
    return GammaTransform(m, b_m, gamma_complex, expansions, rule)


def certify_gamma_transform(transform: GammaTransform, margin: int = 1) -> bool:
    """
    Check that the change of basis intertwines the two differentials.

    For a gamma monomial b with numerator N_b the identity
    D N_b = sum_j sign_j N_{c_j} (c_j: b with its j-th plus factor
    flipped) is tested on an integer grid larger than its degree.
    """
    source = transform.source
    position = {label: (d, i) for d, labels in source.basis.items() for i, label in enumerate(labels)}
    outgoing: Dict[Tuple[int, int], List[Tuple[int, BiPoly]]] = {}
    for degree in source.degrees:
        for (row, col), entry in source.entries(degree).items():
            outgoing.setdefault((degree, col), []).append((row, entry))
    flips = {mono: [(target, _leading_sign(value)) for target, value in gamma_differential(mono, transform.rule).items()]
             for mono in transform.expansions}

    def values(x: int, y: int) -> Iterator[int]:
        point = (x, y)
        for mono, targets in flips.items():
            numerator, _ = transform.expansions[mono]
            image: Dict[Tuple[int, int], int] = {}
            for label, coefficient in numerator.items():
                d, i = position[label]
                weight = coefficient.evaluate(point)
                for row, entry in outgoing.get((d, i), []):
                    image[(d + 1, row)] = image.get((d + 1, row), 0) + entry.evaluate(point) * weight
            for target, sign in targets:
                for label, coefficient in transform.expansions[target][0].items():
                    key = position[label]
                    image[key] = image.get(key, 0) - sign * coefficient.evaluate(point)
            yield from image.values()

    return identity_holds(values, 2 * max(transform.m, 1), margin)


def _leading_sign(p: BiPoly) -> int:
    return 1 if p.terms[p.leading_exponent()] > 0 else -1


def is_unitriangular(transform: GammaTransform) -> bool:
    """
    Each gamma monomial has coefficient exactly 1 on its leading
    composition and is supported on lexicographically larger ones, and
    leading compositions run through the beta basis once.
    """
    leading = {}
    for mono, (numerator, denominator) in transform.expansions.items():
        lead = GenMonomial.betas(*mono.leading_composition())
        if numerator.get(lead) != denominator:
            return False
        if any(label.composition < lead.composition for label in numerator):
            return False
        leading[lead] = mono
    source_labels = {label for labels in transform.source.basis.values() for label in labels}
    return set(leading) == source_labels and len(leading) == len(transform.expansions)


def is_divisibility_chain(parts: Sequence[int]) -> bool:
    """Parts weakly decreasing with each dividing the previous one."""
    return all(a % b == 0 for a, b in zip(parts, parts[1:]))


@dataclass
class Block:
    """A summand of B_m in the gamma basis, indexed by its shape."""

    parts: Tuple[int, ...]
    tail: bool
    complex: DgComplex

    @property
    def name(self) -> str:
        body = "(" + ",".join(str(k) for k in self.parts) + ")"
        return body + ("g1" if self.tail else "")

    @property
    def is_distinguished(self) -> bool:
        return is_divisibility_chain(self.parts)

    @property
    def top_degree(self) -> int:
        return self.complex.degrees[-1] if self.complex.degrees else 0


def block_decompose(transform: GammaTransform, margin: int = 1) -> List[Block]:
    """
    Split the gamma complex into one block per shape.

    The gamma differential only flips signs of factors, so no entry
    joins two shapes; the split is valid once the change of basis is
    certified against the beta complex.

    Raises:
        AssertionError: if certify_gamma_transform rejects the transform
    """
    if not certify_gamma_transform(transform, margin):
        raise AssertionError(f"Gamma basis of B{transform.m} does not intertwine the differentials")
    gamma = transform.complex
    blocks = []
    for parts, tail in block_shapes(transform.m):
        sub = gamma.restrict(lambda mono, key=(parts, tail): mono.shape == key,
                             name=f"B{transform.m}:{parts}{'g1' if tail else ''}")
        blocks.append(Block(parts, tail, sub))
    return blocks


def d_weight(mono: GammaMonomial, d: int) -> int:
    """
    Maximal number of disjoint adjacent pairs gamma_d^+ gamma_{kd}^{+-},
    the pair gamma_d^+ gamma_d^- excluded.
    """
    count = 0
    j = 0
    factors = mono.factors
    while j + 1 < len(factors):
        first, second = factors[j], factors[j + 1]
        if (first.k == d and first.sign == PLUS and second.k >= 2 and second.k % d == 0
                and not (second.k == d and second.sign == MINUS)):
            count += 1
            j += 2
        else:
            j += 1
    return count


def rescale_factor(mono: GammaMonomial) -> Frac:
    """prod_d [d]^{r_d} / prod_d phi_d^{w_d + r_d}, r_d = number of gamma_d^- factors."""
    numerator = ONE
    denominator = ONE
    indices = sorted({f.k for f in mono.factors if f.k >= 2})
    for f in mono.factors:
        if f.sign == MINUS:
            numerator = numerator * qnum(f.k, "y")
    for d in range(2, max(indices, default=1) + 1):
        minus_count = sum(1 for f in mono.factors if f.k == d and f.sign == MINUS)
        exponent = d_weight(mono, d) + minus_count
        if exponent:
            denominator = denominator * phi(d) ** exponent
    return Frac(numerator, denominator)


def rescale_block(block: Block) -> Block:
    """
    Rescale every basis element of a block by its rescale factor.

    Raises:
        NonIntegralAfterRescale: if an entry stops being a polynomial
    """
    c = block.complex
    factors = {label: rescale_factor(label) for labels in c.basis.values() for label in labels}
    diff = {}
    for degree in c.degrees:
        entries = {}
        for (row, col), value in c.entries(degree).items():
            source = factors[c.basis[degree][col]]
            target = factors[c.basis[degree + 1][row]]
            try:
                entries[(row, col)] = poly_exact_div(value * source.num * target.den, source.den * target.num)
            except NotDivisible as e:
                raise NonIntegralAfterRescale(f"Entry {value} of block {block.name}: {str(e)}")
        diff[degree] = entries
    return Block(block.parts, block.tail, DgComplex(c.basis, diff, c.name + "-rescaled"))


def block_labels(block: Block) -> List[str]:
    """Edge labels of a block as canonical text, up to sign, sorted."""
    labels = []
    for _, _, _, value in block.complex.edges():
        labels.append(format_poly(value if _leading_sign(value) > 0 else -value))
    return sorted(labels)


def reduce_B(b_m: DgComplex, m: int, rule: str = "right", margin: int = 1) -> List[Block]:
    """Gamma transform, block decomposition and rescaling of B_m."""
    transform = gamma_transform(b_m, m, rule)
    return [rescale_block(block) for block in block_decompose(transform, margin)]


def koszul_cube(generators: Sequence[BiPoly], top: int, name: str = "") -> DgComplex:
    """
    Koszul cube on the generators with its top vertex in degree top.

    The vertex of a subset S sits in degree top - r + |S|, and the edge
    S -> S + {j} carries (-1)^{#{i in S : i < j}} g_j.
    """
    r = len(generators)
    subsets = sorted(itertools.product((0, 1), repeat=r), key=lambda s: (sum(s), tuple(-v for v in s)))
    basis: Dict[int, List[Tuple[int, ...]]] = {}
    for subset in subsets:
        basis.setdefault(top - r + sum(subset), []).append(subset)
    index = {d: {s: i for i, s in enumerate(labels)} for d, labels in basis.items()}
    diff: Dict[int, Dict[Tuple[int, int], BiPoly]] = {}
    for degree, labels in basis.items():
        for col, subset in enumerate(labels):
            for j in range(r):
                if subset[j]:
                    continue
                target = subset[:j] + (1,) + subset[j + 1:]
                sign = -1 if sum(subset[:j]) % 2 else 1
                diff.setdefault(degree, {})[(index[degree + 1][target], col)] = generators[j] * sign
    return DgComplex(basis, diff, name or f"Koszul{top}")


@dataclass(frozen=True)
class CubePiece:
    """A Koszul cube on phi_d for d in indices, top vertex in degree top."""

    top: int
    indices: Tuple[int, ...] = ()

    @property
    def generators(self) -> Tuple[BiPoly, ...]:
        return tuple(phi(d) for d in self.indices)

    def cube(self) -> DgComplex:
        return koszul_cube(self.generators, self.top, f"cube{self.indices}@{self.top}")


@dataclass
class CubeModel:
    pieces: List[CubePiece] = field(default_factory=list)

    def ranks(self) -> Dict[int, int]:
        totals: Dict[int, int] = {}
        for piece in self.pieces:
            r = len(piece.indices)
            for j in range(r + 1):
                degree = piece.top - r + j
                totals[degree] = totals.get(degree, 0) + math.comb(r, j)
        return dict(sorted(totals.items()))

    def euler_characteristic(self) -> int:
        return sum((-1) ** (d % 2) * r for d, r in self.ranks().items())


def distinct_parts(parts: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted(set(parts)))


WEIGHT_RULES = ("distinct", "block")


def placement_weight(parts: Sequence[int], weight_rule: str = "distinct") -> int:
    """
    Weight |lambda| fixing where the summand of lambda sits.

    "distinct": 2 * (number of parts) - (number of distinct parts).
    "block": 2 * (number of parts) - 1, the top degree of the block of lambda.
    """
    if weight_rule not in WEIGHT_RULES:
        raise ArgError(f"Unknown weight rule '{weight_rule}', expected one of {WEIGHT_RULES}")
    subtract = len(set(parts)) if weight_rule == "distinct" else 1
    return 2 * len(parts) - subtract


def cube_model(n: int, weight_rule: str = "block") -> CubeModel:
    """
    Cube model of the antispherical complex of index n read off the
    blocks: every block whose parts form a divisibility chain contributes
    a cube on the distinct parts. The block of parts lambda in B_m sits
    at i = 2m (i = 2m - 1 with a trailing gamma_1) and its cube has top
    degree placement_weight + 1 - i.

    B_0 and B_1 contribute rank-one pieces in degrees 0 and -1.
    """
    if n < 0:
        raise ArgError(f"cube_model needs n >= 0, got {n}")
    model = CubeModel([CubePiece(0)])
    if n >= 1:
        model.pieces.append(CubePiece(-1))
    for m in range(2, n + 1):
        for parts, tail in block_shapes(m):
            if not is_divisibility_chain(parts):
                continue
            i = 2 * m - 1 if tail else 2 * m
            top = placement_weight(parts, weight_rule) + 1 - i
            model.pieces.append(CubePiece(top, distinct_parts(parts)))
    logger.debug(f"Cube model for n={n} ({weight_rule}): {len(model.pieces)} pieces")
    return model


def blocks_to_dot(blocks: Sequence[Block], name: str = "blocks") -> str:
    """One DOT cluster per block, edges labelled by canonical text."""
    lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
    counter = 0
    for number, block in enumerate(blocks):
        lines.append(f'  subgraph "cluster_{number}" {{')
        lines.append(f'    label="{block.name}";')
        ids = {}
        for degree in block.complex.degrees:
            for i, label in enumerate(block.complex.basis[degree]):
                ids[(degree, i)] = f"n{counter}"
                lines.append(f'    n{counter} [label="{label}"];')
                counter += 1
        for degree in block.complex.degrees:
            for (row, col), value in sorted(block.complex.entries(degree).items(), key=lambda item: (item[0][1], item[0][0])):
                lines.append(f'    {ids[(degree, col)]} -> {ids[(degree + 1, row)]} [label="{format_poly(value)}"];')
        lines.append("  }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def block_report(blocks: Sequence[Block]) -> List[Dict[str, Any]]:
    """JSON-ready summary of blocks."""
    return [
        {
            "block": block.name,
            "distinguished": block.is_distinguished,
            "top": block.top_degree,
            "ranks": {str(d): r for d, r in block.complex.ranks().items()},
            "labels": block_labels(block),
        }
        for block in blocks
    ]
