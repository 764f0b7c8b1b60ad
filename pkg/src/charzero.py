#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Characteristic-zero minimal complexes.

This module provides functionality to act with the infinite dihedral
group on the root lattice, to compute the roots of reflections both in
closed form and through the action, to assemble the complex of free
graded R-modules computing Hom(1, F_w) for w = t_n (or s_n), and to
read off and classify its bigraded cohomology.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm, prod
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.dg import DgComplex, alternating_word, check_d_squared
from src.exceptions import ArgError, RangeError, UnclassifiedPattern
from src.homology import (
    graded_field_cohomology,
    graded_matrix,
    graded_shifts,
    graded_spaces,
    rational_nullspace,
    rational_rank,
)
from src.qnum import qnum
from src.ring import ONE, BiPoly, Frac, Scalar, X, Y

# Logger setup
logger = logging.getLogger(__name__)

SIDES = ("s", "t")
CLEARINGS = ("lcm", "product")

_COLOR = {"s": "x", "t": "y"}
_OPPOSITE = {"s": "t", "t": "s"}

Value = Union[BiPoly, Scalar]
Point = Tuple[Scalar, Scalar]


def _check_side(side: str) -> str:
    if side not in SIDES:
        raise ArgError(f"Unknown simple reflection: {side}")
    return side


@dataclass(frozen=True)
class Realization:
    """
    Realization of the infinite dihedral group, fixed by [2]_s and [2]_t.

    The values are polynomials for the generic realization and numbers
    once x and y are specialized.
    """

    two_s: Value
    two_t: Value

    @classmethod
    def generic(cls) -> "Realization":
        return cls(X, Y)

    @classmethod
    def at(cls, x: Scalar, y: Scalar) -> "Realization":
        return cls(Fraction(x), Fraction(y))

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.two_s, BiPoly)

    def cartan(self, side: str) -> Value:
        return self.two_s if _check_side(side) == "s" else self.two_t

    def zero(self) -> Value:
        return BiPoly() if self.is_symbolic else Fraction(0)

    def one(self) -> Value:
        return ONE if self.is_symbolic else Fraction(1)


@dataclass(frozen=True)
class RootVector:
    """c_s * alpha_s + c_t * alpha_t."""

    c_s: Value
    c_t: Value

    def __add__(self, other: "RootVector") -> "RootVector":
        return RootVector(self.c_s + other.c_s, self.c_t + other.c_t)

    def __neg__(self) -> "RootVector":
        return RootVector(-self.c_s, -self.c_t)

    def scaled(self, factor: Value) -> "RootVector":
        return RootVector(self.c_s * factor, self.c_t * factor)

    def evaluate(self, point: Point) -> "RootVector":
        """Specialize polynomial coefficients at (x, y)."""
        return RootVector(*(Fraction(_evaluate(c, point)) for c in (self.c_s, self.c_t)))

    def to_poly(self) -> BiPoly:
        """The linear form as a polynomial in a_s, a_t; integer coefficients only."""
        terms = {}
        for exponent, coefficient in (((0, 0, 1, 0), self.c_s), ((0, 0, 0, 1), self.c_t)):
            if isinstance(coefficient, BiPoly):
                coefficient = coefficient.constant_value()
            if Fraction(coefficient).denominator != 1:
                raise ArgError(f"Root coefficient {coefficient} is not an integer")
            terms[exponent] = int(coefficient)
        return BiPoly(terms)

    def __str__(self):
        return f"({self.c_s})*a_s + ({self.c_t})*a_t"


def _evaluate(value: Value, point: Point) -> Scalar:
    return value.evaluate(point) if isinstance(value, BiPoly) else value


def simple_root(side: str, realization: Optional[Realization] = None) -> RootVector:
    realization = realization or Realization.generic()
    zero, one = realization.zero(), realization.one()
    return RootVector(one, zero) if _check_side(side) == "s" else RootVector(zero, one)


def reflect(side: str, v: RootVector, realization: Realization) -> RootVector:
    """
    One simple reflection: s maps alpha_s to -alpha_s and alpha_t to
    alpha_t + [2]_s alpha_s; t acts symmetrically.
    """
    if _check_side(side) == "s":
        return RootVector(v.c_t * realization.cartan("s") - v.c_s, v.c_t)
    return RootVector(v.c_s, v.c_s * realization.cartan("t") - v.c_t)


def act(word: Sequence[str], v: RootVector, realization: Optional[Realization] = None) -> RootVector:
    """
    Left action of a Coxeter word; the rightmost letter acts first.

    Args:
        word: Letters "s" and "t"
        v: Root lattice vector, coefficients matching the realization
        realization: Defaults to the generic realization

    Returns:
        The image of v
    """
    realization = realization or Realization.generic()
    for letter in reversed(tuple(word)):
        v = reflect(letter, v, realization)
    return v


def root_of_reflection(side: str, length: int) -> RootVector:
    """
    Closed-form root of the reflection side_{2r+1}.

    alpha_{s_{2r+1}} = [r+1]_s alpha_s + [r]_t alpha_t and
    alpha_{t_{2r+1}} = [r]_s alpha_s + [r+1]_t alpha_t.
    """
    _check_side(side)
    if length < 1 or length % 2 == 0:
        raise RangeError(f"Reflections have odd length >= 1, got {length}")
    r = (length - 1) // 2
    if side == "s":
        return RootVector(qnum(r + 1, "x"), qnum(r, "y"))
    return RootVector(qnum(r, "x"), qnum(r + 1, "y"))


def root_by_action(side: str, length: int, realization: Optional[Realization] = None) -> RootVector:
    """
    Root of side_{2r+1} as w(alpha_c), with w the first r letters of the
    alternating word and c its middle letter.
    """
    _check_side(side)
    if length < 1 or length % 2 == 0:
        raise RangeError(f"Reflections have odd length >= 1, got {length}")
    word = alternating_word(side, length)
    r = (length - 1) // 2
    return act(word[:r], simple_root(word[r], realization), realization)


def q_coefficient(w_len: int, u_len: int, side: str) -> Tuple[Frac, RootVector]:
    """
    Coefficient q_{w,u} of the arrow B_w -> B_u(1), as a scalar times a root.

    For l(u) = 2r the coefficient depends on the first letter c of w:
    ([r]_c / [2r]_c) alpha_{c_{2r+1}}, and alpha_w itself when u = 1.
    For l(u) = 2r+1 it depends on the first letter of u:
    ([r+1]_t / [2r+1]_t) alpha_{s_{2r+1}} for u = t_{2r+1} and
    ([r+1]_s / [2r+1]_s) alpha_{t_{2r+1}} for u = s_{2r+1}.

    Args:
        w_len: Length of w
        u_len: Length of u, equal to w_len - 1
        side: First letter of w (l(u) even) or of u (l(u) odd)

    Returns:
        (scalar, root)
    """
    _check_side(side)
    if u_len < 0 or w_len != u_len + 1:
        raise ArgError(f"q coefficients need l(w) = l(u) + 1, got {w_len} and {u_len}")
    r, odd = divmod(u_len, 2)
    color = _COLOR[side]
    if not odd:
        scalar = Frac(ONE) if r == 0 else Frac(qnum(r, color), qnum(2 * r, color))
        return scalar, root_of_reflection(side, 2 * r + 1)
    return Frac(qnum(r + 1, color), qnum(2 * r + 1, color)), root_of_reflection(_OPPOSITE[side], 2 * r + 1)


@dataclass(frozen=True)
class Char0Label:
    """
    The summand B_w(k) of the complex, seen as R(shift).

    side is "" for the identity. R(a) has its generator in internal
    degree -a.
    """

    side: str
    length: int
    shift: int

    @property
    def generator_degree(self) -> int:
        return -self.shift

    @property
    def word(self) -> Tuple[str, ...]:
        return alternating_word(self.side, self.length) if self.side else ()

    def __str__(self):
        name = f"{self.side}{self.length}" if self.side else "1"
        return f"{name}({self.shift})"


def _check_point(n: int, point: Point) -> None:
    for m in range(1, n + 1):
        for color in ("x", "y"):
            if qnum(m, color).evaluate(point) == 0:
                raise ArgError(f"[{m}]_{color} vanishes at {tuple(point)}")


def _clearing_factor(values: Sequence[Fraction], clearing: str) -> int:
    denominators = {v.denominator for v in values}
    if clearing == "lcm":
        return lcm(*denominators) if denominators else 1
    return prod(denominators)


def build_char0_complex(n: int, start: str = "t", point: Point = (2, 2), clearing: str = "lcm") -> DgComplex:
    """
    The complex B_w -> B_{w'}(1) + ... -> R(n) for w = start_n.

    Cohomological degree k holds the objects of length n - k, each a copy
    of R(-n + 2k). The arrow w -> u is (-1)^{l(w)+1} q_{w,u} when w and u
    start with the same letter and q_{w,u} otherwise. Every differential
    is multiplied by a positive integer so that its entries are integral
    linear forms in a_s, a_t.

    Args:
        n: Length of w, n >= 0
        start: First letter of w
        point: Value of (x, y); no [m] with m <= n may vanish
        clearing: "lcm" or "product" of the denominators of each differential

    Returns:
        The complex, labels of type Char0Label
    """
    if n < 0:
        raise RangeError(f"Index n must be >= 0, got {n}")
    _check_side(start)
    if clearing not in CLEARINGS:
        raise ArgError(f"Unknown clearing: {clearing}")
    point = (Fraction(point[0]), Fraction(point[1]))
    _check_point(n, point)

    basis: Dict[int, List[Char0Label]] = {}
    for k in range(n + 1):
        length, shift = n - k, -n + 2 * k
        if length == 0:
            basis[k] = [Char0Label("", 0, shift)]
        elif k == 0:
            basis[k] = [Char0Label(start, length, shift)]
        else:
            basis[k] = [Char0Label(start, length, shift), Char0Label(_OPPOSITE[start], length, shift)]

    diff = {}
    for k in range(n):
        arrows = {}
        for col, w in enumerate(basis[k]):
            for row, u in enumerate(basis[k + 1]):
                side = w.side if u.length % 2 == 0 else u.side
                scalar, root = q_coefficient(w.length, u.length, side)
                sign = (-1) ** (w.length + 1) if u.side == w.side else 1
                arrows[(row, col)] = root.evaluate(point).scaled(sign * scalar.evaluate(point))
        factor = _clearing_factor([c for v in arrows.values() for c in (v.c_s, v.c_t)], clearing)
        diff[k] = {key: v.scaled(factor).to_poly() for key, v in arrows.items()}
    logger.debug(f"Built characteristic-zero complex for {start}{n} at {tuple(point)} ({clearing})")
    return DgComplex(basis, diff, name=f"char0_{start}{n}")


def char0_d_squared_holds(n: int, points: Sequence[Point], start: str = "t") -> bool:
    """d^2 = 0 for the complex of start_n at every given point."""
    return all(check_d_squared(build_char0_complex(n, start, p)) for p in points)


@dataclass(frozen=True)
class Char0Cell:
    """
    A classified cohomology group: 0, R(c), k(c) or R/(linear form)(c).

    generator names the linear form of a quotient when it is known.
    """

    kind: str
    shift: int = 0
    generator: str = ""

    def __str__(self):
        if self.kind == "zero":
            return "0"
        if self.kind == "free":
            return f"R({self.shift})"
        if self.kind == "point":
            return f"k({self.shift})"
        if self.kind == "quotient":
            return f"R/({self.generator or 'l'})({self.shift})"
        return "?"


ZERO_CELL = Char0Cell("zero")


def classify_dims(dims: Dict[int, int]) -> Char0Cell:
    """
    Match a dimension vector (internal degree -> dimension, consecutive
    degrees up to a cutoff) against the Hilbert functions of R(c), k(c)
    and R/(l)(c).

    Raises:
        UnclassifiedPattern: if no shape fits
    """
    support = sorted(d for d, dim in dims.items() if dim)
    if not support:
        return ZERO_CELL
    low, high = support[0], max(dims)

    def expected(step: int) -> Dict[int, int]:
        return {d: (step((d - low) // 2) if d >= low and (d - low) % 2 == 0 else 0) for d in dims}

    nonzero = {d: dim for d, dim in dims.items() if dim}
    if nonzero == {low: 1}:
        return Char0Cell("point", -low)
    if dims == expected(lambda h: 1) and high - low >= 2:
        return Char0Cell("quotient", -low)
    if dims == expected(lambda h: h + 1):
        return Char0Cell("free", -low)
    raise UnclassifiedPattern(f"Dimensions {nonzero} match no known shape")


def char0_cohomology(c: DgComplex, cutoff: int = 20) -> Dict[int, Dict[int, int]]:
    """Cohomological degree -> (internal degree -> dimension)."""
    graded = graded_field_cohomology(c, cutoff)
    by_degree: Dict[int, Dict[int, int]] = {}
    for (degree, internal), dim in sorted(graded.items()):
        by_degree.setdefault(degree, {})[internal] = dim
    return by_degree


def _column_matrix(columns: Sequence[Sequence[Fraction]], size: int) -> List[List[Fraction]]:
    return [[column[i] for column in columns] for i in range(size)] if columns else []


def _image_columns(c: DgComplex, degree: int, spaces) -> List[List[Fraction]]:
    matrix = graded_matrix(c, degree - 1, spaces)
    if not matrix:
        return []
    return [[Fraction(row[j]) for row in matrix] for j in range(len(matrix[0]))]


def quotient_root(c: DgComplex, degree: int, low: int) -> Tuple[Fraction, Fraction]:
    """
    The linear form (lambda, mu) with lambda a_s + mu a_t annihilating
    the lowest class of H^degree, which sits in internal degree low.

    Raises:
        UnclassifiedPattern: if the lowest class is not killed by a
            nonzero linear form
    """
    shifts = graded_shifts(c)
    bottom, top = graded_spaces(c, low, shifts), graded_spaces(c, low + 2, shifts)
    size = len(bottom[degree])
    kernel = rational_nullspace(graded_matrix(c, degree, bottom), size)
    image = _image_columns(c, degree, bottom)
    base_rank = rational_rank(_column_matrix(image, size))
    cycle = next((z for z in kernel if rational_rank(_column_matrix(image + [z], size)) > base_rank), None)
    if cycle is None:
        raise UnclassifiedPattern(f"H^{degree} has no class in internal degree {low}")
    multiples = []
    for step in ((1, 0), (0, 1)):
        vector = [Fraction(0)] * len(top[degree])
        for (i, (ps, pt)), position in bottom[degree].items():
            vector[top[degree][(i, (ps + step[0], pt + step[1]))]] += cycle[position]
        multiples.append(vector)
    relations = rational_nullspace(_column_matrix(_image_columns(c, degree, top) + multiples, len(top[degree])))
    for relation in relations:
        if relation[-2] or relation[-1]:
            return relation[-2], relation[-1]
    raise UnclassifiedPattern(f"The lowest class of H^{degree} is torsion free")


def root_name(form: Tuple[Fraction, Fraction], n: int, point: Point = (2, 2)) -> str:
    """
    Name alpha_{side}{length} of the root of a reflection of length at
    most n proportional to the form at the point; "l" if there is none.
    """
    for side in SIDES:
        for length in range(1, max(n, 1) + 1, 2):
            root = root_of_reflection(side, length).evaluate(point)
            if form[0] * root.c_t == form[1] * root.c_s:
                return f"alpha_{side}{length}"
    logger.warning(f"Linear form {form} is not the root of a reflection of length <= {n}")
    return "l"


def classify_cohomology(c: DgComplex, n: int, cutoff: int = 20, point: Point = (2, 2)) -> Dict[int, Char0Cell]:
    """
    Classified cells j -> cell, zero cells dropped. Quotient cells carry
    the name of the root generating their annihilator.
    """
    row = {}
    for j, dims in char0_cohomology(c, cutoff).items():
        try:
            cell = classify_dims(dims)
            if cell.kind == "quotient":
                cell = Char0Cell("quotient", cell.shift, root_name(quotient_root(c, j, -cell.shift), n, point))
        except UnclassifiedPattern as e:
            logger.warning(f"Unclassified cell n={n}, j={j}: {str(e)}")
            cell = Char0Cell("unclassified")
        if cell != ZERO_CELL:
            row[j] = cell
    return row


def char0_row(n: int, cutoff: int = 20, start: str = "t", point: Point = (2, 2),
              clearing: str = "lcm") -> Dict[int, Char0Cell]:
    """Nonzero classified cells j -> cell of Hom(1, F_w[j]) for w = start_n."""
    return classify_cohomology(build_char0_complex(n, start, point, clearing), n, cutoff, point)


def char0_ext_table(n_max: int, cutoff: int = 20, start: str = "t", point: Point = (2, 2),
                    clearing: str = "lcm") -> Dict[int, Dict[int, Char0Cell]]:
    """Classified rows for n = 0..n_max."""
    logger.info(f"Computing characteristic-zero table up to n={n_max}, cutoff {cutoff}")
    return {n: char0_row(n, cutoff, start, point, clearing) for n in range(n_max + 1)}


def expected_char0_row(n: int, start: str = "t") -> Dict[int, Char0Cell]:
    """
    Closed-form rows: R for n = 0; k(-n+2j) at even j >= 2 for even n;
    R/(alpha_{start_n})(-n+2) at j = 1 and k(-n+2j) at odd j >= 3 for odd n.
    """
    if n < 0:
        raise RangeError(f"Index n must be >= 0, got {n}")
    _check_side(start)
    if n == 0:
        return {0: Char0Cell("free", 0)}
    if n % 2 == 0:
        return {j: Char0Cell("point", -n + 2 * j) for j in range(2, n + 1, 2)}
    row = {1: Char0Cell("quotient", -n + 2, f"alpha_{start}{n}")}
    row.update({j: Char0Cell("point", -n + 2 * j) for j in range(3, n + 1, 2)})
    return row
