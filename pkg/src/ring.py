#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact polynomial arithmetic.

This module provides functionality to add, multiply, divide exactly and
specialize sparse integer polynomials in the four variables x, y, a_s
and a_t, together with unnormalized fractions of such polynomials and a
grid-based polynomial identity test.
"""

import re
import logging
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import isprime

from src.exceptions import ArgError, NotDivisible, ParseError

# Logger setup
logger = logging.getLogger(__name__)

Exponent = Tuple[int, int, int, int]
Scalar = Union[int, Fraction]

VARIABLES = ("x", "y", "as", "at")
ZERO_EXPONENT: Exponent = (0, 0, 0, 0)


def _add_exponents(a: Exponent, b: Exponent) -> Exponent:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])


class BiPoly:
    """
    Sparse polynomial with arbitrary-precision integer coefficients.

    Terms are stored as a map from exponent vectors (x, y, a_s, a_t) to
    nonzero coefficients, so equal polynomials have identical maps.
    Instances are immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Optional[Dict[Exponent, int]] = None):
        clean = {}
        for exponent, coefficient in (terms or {}).items():
            if coefficient:
                if len(exponent) != 4 or any(e < 0 for e in exponent):
                    raise ArgError(f"Invalid exponent vector: {exponent}")
                clean[tuple(exponent)] = int(coefficient)
        self._terms = clean
        self._hash = None

    @classmethod
    def constant(cls, value: int) -> "BiPoly":
        return cls({ZERO_EXPONENT: value})

    @classmethod
    def variable(cls, name: str, power: int = 1) -> "BiPoly":
        if name not in VARIABLES:
            raise ArgError(f"Unknown variable: {name}")
        exponent = [0, 0, 0, 0]
        exponent[VARIABLES.index(name)] = power
        return cls({tuple(exponent): 1})

    @classmethod
    def coerce(cls, value: Union["BiPoly", int]) -> "BiPoly":
        if isinstance(value, BiPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"Cannot convert {type(value).__name__} to BiPoly")

    @property
    def terms(self) -> Dict[Exponent, int]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, int]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == ZERO_EXPONENT for e in self._terms)

    def constant_value(self) -> int:
        """Return the value of a constant polynomial."""
        if not self.is_constant():
            raise ArgError(f"Polynomial is not constant: {self}")
        return self._terms.get(ZERO_EXPONENT, 0)

    def is_unit(self) -> bool:
        return self.is_constant() and self.constant_value() in (1, -1)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def leading_exponent(self) -> Exponent:
        return max(self._terms)

    def __add__(self, other):
        other = BiPoly.coerce(other)
        terms = dict(self._terms)
        for exponent, coefficient in other._terms.items():
            terms[exponent] = terms.get(exponent, 0) + coefficient
        return BiPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-BiPoly.coerce(other))

    def __rsub__(self, other):
        return BiPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return BiPoly({e: c * other for e, c in self._terms.items()})
        other = BiPoly.coerce(other)
        terms: Dict[Exponent, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                key = _add_exponents(e1, e2)
                terms[key] = terms.get(key, 0) + c1 * c2
        return BiPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if power < 0:
            raise ArgError("Negative powers are not polynomials")
        result = BiPoly.constant(1)
        for _ in range(power):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiPoly.constant(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def evaluate(self, values: Sequence[Scalar]) -> Scalar:
        """
        Evaluate at a point.

        Args:
            values: Values of (x, y, a_s, a_t); missing trailing values are 0

        Returns:
            The value, an int or a Fraction depending on the inputs
        """
        point = list(values) + [0] * (4 - len(values))
        total = 0
        for exponent, coefficient in self._terms.items():
            term = coefficient
            for value, power in zip(point, exponent):
                if power:
                    term *= value ** power
            total += term
        return total

    def substitute(self, x: Optional[int] = None, y: Optional[int] = None) -> "BiPoly":
        """Specialize x and/or y to integers, keeping a_s and a_t symbolic."""
        terms: Dict[Exponent, int] = {}
        for (ex, ey, es, et), coefficient in self._terms.items():
            value = coefficient
            if x is not None:
                value *= x ** ex
                ex = 0
            if y is not None:
                value *= y ** ey
                ey = 0
            key = (ex, ey, es, et)
            terms[key] = terms.get(key, 0) + value
        return BiPoly(terms)

    def without_roots(self) -> "BiPoly":
        """Set a_s = a_t = 0."""
        return BiPoly({e: c for e, c in self._terms.items() if e[2] == 0 and e[3] == 0})

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"BiPoly('{format_poly(self)}')"


ZERO = BiPoly()
ONE = BiPoly.constant(1)
X = BiPoly.variable("x")
Y = BiPoly.variable("y")
A_S = BiPoly.variable("as")
A_T = BiPoly.variable("at")


def poly_add(a: BiPoly, b: BiPoly) -> BiPoly:
    """Exact sum of two polynomials."""
    return a + b


def poly_mul(a: BiPoly, b: BiPoly) -> BiPoly:
    """Exact product of two polynomials."""
    return a * b


def poly_exact_div(a: BiPoly, b: BiPoly) -> BiPoly:
    """
    Divide exactly using lexicographic long division.

    Args:
        a: Dividend
        b: Nonzero divisor

    Returns:
        The quotient q with a = q * b

    Raises:
        NotDivisible: if b does not divide a in Z[x, y, a_s, a_t]
    """
    if b.is_zero():
        raise ArgError("Division by the zero polynomial")
    lead = b.leading_exponent()
    lead_coefficient = b._terms[lead]
    remainder = dict(a._terms)
    quotient: Dict[Exponent, int] = {}
    while remainder:
        top = max(remainder)
        shift = tuple(t - l for t, l in zip(top, lead))
        if any(s < 0 for s in shift) or remainder[top] % lead_coefficient:
            raise NotDivisible(f"{format_poly(b)} does not divide {format_poly(a)}")
        factor = remainder[top] // lead_coefficient
        quotient[shift] = factor
        for exponent, coefficient in b._terms.items():
            key = _add_exponents(exponent, shift)
            value = remainder.get(key, 0) - factor * coefficient
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return BiPoly(quotient)


def divides(b: BiPoly, a: BiPoly) -> bool:
    """Return True when b divides a exactly."""
    try:
        poly_exact_div(a, b)
        return True
    except NotDivisible:
        return False


def format_poly(a: BiPoly) -> str:
    """
    Canonical text form.

    Terms are sorted by exponent vector, lexicographically descending, and
    printed as c*x^a*y^b*as^c*at^d with unit exponents and coefficients
    elided. The zero polynomial prints as "0".
    """
    if a.is_zero():
        return "0"
    pieces = []
    for exponent in sorted(a._terms, reverse=True):
        coefficient = a._terms[exponent]
        factors = []
        for name, power in zip(VARIABLES, exponent):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        magnitude = abs(coefficient)
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        sign = "-" if coefficient < 0 else "+"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f" {sign} {body}")
    return "".join(pieces)


_TERM_PATTERN = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_PATTERN = re.compile(r"^(as|at|x|y)(?:\^(\d+))?$")


def parse_poly(text: str) -> BiPoly:
    """
    Parse the canonical text grammar.

    Args:
        text: Polynomial text such as "x^2*y^2 - 3*x*y + 1"

    Returns:
        The parsed polynomial

    Raises:
        ParseError: on malformed input
    """
    stripped = text.strip()
    if not stripped:
        raise ParseError("Empty polynomial text")
    result: Dict[Exponent, int] = {}
    position = 0
    while position < len(stripped):
        match = _TERM_PATTERN.match(stripped, position)
        if not match or match.end() == position:
            raise ParseError(f"Cannot parse polynomial at offset {position}: {text}")
        sign = -1 if match.group(1) == "-" else 1
        coefficient = 1
        exponent = [0, 0, 0, 0]
        for factor in match.group(2).strip().split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coefficient *= int(factor)
                continue
            found = _FACTOR_PATTERN.match(factor)
            if not found:
                raise ParseError(f"Unknown factor '{factor}' in {text}")
            exponent[VARIABLES.index(found.group(1))] += int(found.group(2) or 1)
        key = tuple(exponent)
        result[key] = result.get(key, 0) + sign * coefficient
        position = match.end()
    return BiPoly(result)


@dataclass(frozen=True)
class Specialization:
    """
    Ring homomorphism out of Z[x, y, a_s, a_t].

    Attributes:
        target: "ZZ", "QQ" or "GF"
        values: Values of (x, y, a_s, a_t)
        p: Characteristic when the target is "GF"
    """

    target: str
    values: Tuple[Scalar, Scalar, Scalar, Scalar] = (2, 2, 0, 0)
    p: Optional[int] = None

    def __post_init__(self):
        if self.target not in ("ZZ", "QQ", "GF"):
            raise ArgError(f"Unknown specialization target: {self.target}")
        if len(self.values) != 4:
            object.__setattr__(self, "values", tuple(self.values) + (0,) * (4 - len(self.values)))
        if self.target == "GF":
            if self.p is None or not isprime(self.p):
                raise ArgError(f"Characteristic must be prime, got {self.p}")
        if self.target in ("ZZ", "GF") and not all(isinstance(v, int) for v in self.values):
            raise ArgError(f"Integral targets need integer values, got {self.values}")

    @classmethod
    def integers(cls, x: int = 2, y: int = 2) -> "Specialization":
        return cls("ZZ", (x, y, 0, 0))

    @classmethod
    def rationals(cls, x: Scalar = 2, y: Scalar = 2) -> "Specialization":
        return cls("QQ", (Fraction(x), Fraction(y), 0, 0))

    @classmethod
    def modular(cls, p: int, x: int = 2, y: int = 2) -> "Specialization":
        return cls("GF", (x, y, 0, 0), p)

    @property
    def is_field(self) -> bool:
        return self.target in ("QQ", "GF")

    def describe(self) -> str:
        x, y = self.values[0], self.values[1]
        if self.target == "GF":
            return f"GF({self.p}) at ({x},{y})"
        return f"{self.target} at ({x},{y})"


def specialize(a: BiPoly, s: Specialization) -> Scalar:
    """
    Apply a specialization.

    Args:
        a: Polynomial
        s: Target ring and values

    Returns:
        An int (reduced into [0, p) for GF targets) or a Fraction for QQ
    """
    value = a.evaluate(s.values)
    if s.target == "GF":
        return value % s.p
    if s.target == "QQ":
        return Fraction(value)
    return value


@dataclass(frozen=True)
class Frac:
    """
    Unnormalized fraction of polynomials.

    No common factors are cancelled; equality is decided by
    cross-multiplication.
    """

    num: BiPoly
    den: BiPoly = field(default_factory=lambda: ONE)

    def __post_init__(self):
        if self.den.is_zero():
            raise ArgError("Fraction with zero denominator")

    def __add__(self, other: "Frac") -> "Frac":
        other = as_frac(other)
        if self.den == other.den:
            return Frac(self.num + other.num, self.den)
        return Frac(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Frac":
        return Frac(-self.num, self.den)

    def __sub__(self, other: "Frac") -> "Frac":
        return self + (-as_frac(other))

    def __mul__(self, other) -> "Frac":
        other = as_frac(other)
        return Frac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, BiPoly)):
            other = as_frac(other)
        if not isinstance(other, Frac):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("Frac values are not hashable")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def to_poly(self) -> BiPoly:
        """Return the polynomial value, raising NotDivisible otherwise."""
        return poly_exact_div(self.num, self.den)

    def evaluate(self, values: Sequence[Scalar]) -> Fraction:
        denominator = self.den.evaluate(values)
        if denominator == 0:
            raise ZeroDivisionError(f"Denominator {self.den} vanishes at {tuple(values)}")
        return Fraction(self.num.evaluate(values), denominator)

    def __str__(self):
        if self.den == ONE:
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


def as_frac(value: Union[Frac, BiPoly, int]) -> Frac:
    if isinstance(value, Frac):
        return value
    return Frac(BiPoly.coerce(value))


def grid_points(degree_bound: int, margin: int = 2, start: int = 2) -> List[Tuple[int, int]]:
    """
    Integer grid on which no nonzero polynomial in x, y of total degree
    at most degree_bound can vanish identically.

    Args:
        degree_bound: Upper bound on the total degree
        margin: Extra points per axis beyond the minimum
        start: First grid value on each axis

    Returns:
        List of (x, y) points, S x S with |S| = degree_bound + 1 + margin
    """
    axis = range(start, start + degree_bound + 1 + margin)
    return list(itertools.product(axis, axis))


def identity_holds(evaluate: Callable[[int, int], Iterable[Scalar]], degree_bound: int,
                   margin: int = 2) -> bool:
    """
    Polynomial identity test on a grid.

    Args:
        evaluate: Callable returning the values, at (x, y), of polynomials
            that should all vanish identically
        degree_bound: Bound on the total degree of those polynomials
        margin: Extra grid points per axis

    Returns:
        True if every value is zero at every grid point
    """
    for x, y in grid_points(degree_bound, margin):
        for value in evaluate(x, y):
            if value != 0:
                logger.debug(f"Identity fails at ({x},{y}) with value {value}")
                return False
    return True
