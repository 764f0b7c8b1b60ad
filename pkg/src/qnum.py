#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Two-color quantum numbers and cyclotomic polynomials.

This module provides functionality to compute two-color quantum numbers,
factorials and binomial coefficients in Z[x, y], the two-color cyclotomic
polynomials obtained by peeling divisors off quantum numbers, and the
divisibility and coprimality statements built on them.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

from sympy import Poly, QQ, Symbol, factorint

from src.exceptions import ArgError, NoUnitCombination, NotDivisible, RangeError
from src.ring import ONE, ZERO, BiPoly, X, Y, divides, poly_exact_div

# Logger setup
logger = logging.getLogger(__name__)

COLORS = ("x", "y")

_T = Symbol("t")


def check_color(c: str) -> str:
    if c not in COLORS:
        raise ArgError(f"Unknown color '{c}', expected one of {COLORS}")
    return c


def other_color(c: str) -> str:
    return "y" if check_color(c) == "x" else "x"


@lru_cache(maxsize=None)
def _qnum_pair(n: int) -> Tuple[BiPoly, BiPoly]:
    if n == 0:
        return ZERO, ZERO
    if n == 1:
        return ONE, ONE
    if n == 2:
        return X, Y
    previous_x, previous_y = _qnum_pair(n - 2)
    current_x, current_y = _qnum_pair(n - 1)
    return X * current_y - previous_x, Y * current_x - previous_y


def qnum(n: int, c: str) -> BiPoly:
    """
    Two-color quantum number [n]_c.

    Args:
        n: Non-negative index, [0] = 0
        c: Color, "x" (for s) or "y" (for t)

    Returns:
        The polynomial defined by [n+1]_x = x [n]_y - [n-1]_x and its mirror
    """
    if n < 0:
        raise RangeError(f"Quantum numbers need n >= 0, got {n}")
    pair = _qnum_pair(n)
    return pair[0] if check_color(c) == "x" else pair[1]


@lru_cache(maxsize=None)
def qfactorial(n: int, c: str) -> BiPoly:
    """Product [n]_c [n-1]_c ... [1]_c; the empty product is 1."""
    if n < 0:
        raise RangeError(f"Factorials need n >= 0, got {n}")
    if n == 0:
        return ONE
    return qfactorial(n - 1, c) * qnum(n, c)


@lru_cache(maxsize=None)
def qbinomial(n: int, k: int, c: str) -> BiPoly:
    """
    Two-color quantum binomial coefficient.

    Computed through [n; i] = [n; i-1] [n-i+1] / [i] with exact division
    at every step.

    Args:
        n: Upper index
        k: Lower index, 0 <= k <= n
        c: Color

    Returns:
        The binomial coefficient as a polynomial
    """
    check_color(c)
    if n < 0 or k < 0 or k > n:
        raise RangeError(f"Binomial index out of range: n={n}, k={k}")
    k = min(k, n - k)
    result = ONE
    for i in range(1, k + 1):
        try:
            result = poly_exact_div(result * qnum(n - i + 1, c), qnum(i, c))
        except NotDivisible as e:
            raise AssertionError(f"Quantum binomial [{n};{i}]_{c} is not a polynomial: {str(e)}")
    return result


def verify_product_identity(n: int, m: int, c: str) -> bool:
    """
    Check the expansion of a product of quantum numbers as a sum of
    n quantum numbers centred at m.

    For odd n: [n][m]_c = sum_k [m-n+2k-1]_c.
    For even n: [n]_{c'}[m]_c = sum_k [m-n+2k-1]_{c'} where c' is the
    other color.

    Args:
        n: Length of the sum, 1 <= n <= m
        m: Centre
        c: Color of [m]

    Returns:
        True if the identity holds exactly
    """
    if not 1 <= n <= m:
        raise ArgError(f"Product identity needs 1 <= n <= m, got n={n}, m={m}")
    summand_color = c if n % 2 else other_color(c)
    left = qnum(n, summand_color) * qnum(m, c)
    right = ZERO
    for k in range(1, n + 1):
        right = right + qnum(m - n + 2 * k - 1, summand_color)
    return left == right


@lru_cache(maxsize=None)
def cyclotomic(n: int, c: str) -> BiPoly:
    """
    Two-color cyclotomic polynomial.

    phi_{2,x} = x and phi_{2,y} = y; for n > 2, [n]_c divided by the
    cyclotomic polynomials of its proper divisors d >= 2.
    """
    check_color(c)
    if n < 2:
        raise RangeError(f"Cyclotomic polynomials need n >= 2, got {n}")
    divisor_product = ONE
    for d in range(2, n):
        if n % d == 0:
            divisor_product = divisor_product * cyclotomic(d, c)
    try:
        result = poly_exact_div(qnum(n, c), divisor_product)
    except NotDivisible as e:
        raise AssertionError(f"Cyclotomic recursion failed at n={n}: {str(e)}")
    logger.debug(f"phi_{n},{c} = {result}")
    return result


def phi(n: int) -> BiPoly:
    """Cyclotomic polynomial in color y."""
    return cyclotomic(n, "y")


def cyclotomic_divides_binomial(d: int, n: int, k: int) -> bool:
    """
    Exact-division test of [n; k]_y by phi_{d,y}.

    Args:
        d: Divisor of n, d >= 2
        n: Upper index
        k: Lower index

    Returns:
        True if phi_d divides the binomial coefficient
    """
    if d < 2 or n % d:
        raise ArgError(f"Expected a divisor d >= 2 of n, got d={d}, n={n}")
    return divides(cyclotomic(d, "y"), qbinomial(n, k, "y"))


def _to_univariate(p: BiPoly) -> Poly:
    coefficients: Dict[int, int] = {}
    for (ex, ey, es, et), value in p.items():
        if ex != ey or es or et:
            raise ArgError(f"Polynomial {p} is not a polynomial in xy")
        coefficients[ex] = value
    degree = max(coefficients, default=0)
    return Poly([coefficients.get(i, 0) for i in range(degree, -1, -1)], _T, domain=QQ)


def _from_univariate(p: Poly) -> BiPoly:
    terms = {}
    for (power,), value in p.terms():
        value = Fraction(int(value.numerator), int(value.denominator))
        if value.denominator != 1:
            raise NoUnitCombination(f"Bezout coefficient {p.as_expr()} is not integral")
        terms[(power, power, 0, 0)] = value.numerator
    return BiPoly(terms)


def cyclotomic_bezout(k: int, n: int) -> Tuple[BiPoly, BiPoly]:
    """
    Witness that phi_{k,x} and phi_{n,x} generate the unit ideal.

    Args:
        k: Smaller index, 2 <= k < n, not dividing n
        n: Larger index

    Returns:
        (a, b) with a * phi_{k,x} + b * phi_{n,x} = 1

    Raises:
        ArgError: if the preconditions fail
        NoUnitCombination: if no integral witness is produced
    """
    if not 2 <= k < n or n % k == 0:
        raise ArgError(f"Bezout witness needs 2 <= k < n with k not dividing n, got k={k}, n={n}")
    phi_k = cyclotomic(k, "x")
    phi_n = cyclotomic(n, "x")
    if k == 2:
        # phi_n = c0 + xy r(xy); then a = -c0 y r(xy), b = c0 when c0 is a unit.
        constant = phi_n.terms.get((0, 0, 0, 0), 0)
        if constant not in (1, -1):
            raise NoUnitCombination(f"phi_{n} has non-unit constant term {constant}")
        rest = phi_n - BiPoly.constant(constant)
        a = poly_exact_div(rest, X) * (-constant)
        b = BiPoly.constant(constant)
    else:
        s, t, h = _to_univariate(phi_k).gcdex(_to_univariate(phi_n))
        if h.as_expr() != 1:
            raise NoUnitCombination(f"gcd of phi_{k} and phi_{n} over QQ is {h.as_expr()}")
        a, b = _from_univariate(s), _from_univariate(t)
    if a * phi_k + b * phi_n != ONE:
        raise NoUnitCombination(f"Bezout witness for ({k},{n}) failed verification")
    return a, b


def factor_indices(p: BiPoly, max_index: int) -> List[int]:
    """
    Multiset of cyclotomic indices dividing p.

    Args:
        p: Nonzero polynomial in color y
        max_index: Largest index to try

    Returns:
        Sorted list of indices d >= 2, repeated by multiplicity
    """
    found = []
    remaining = p
    for d in range(2, max_index + 1):
        factor = cyclotomic(d, "y")
        while True:
            try:
                remaining = poly_exact_div(remaining, factor)
            except NotDivisible:
                break
            found.append(d)
    return found


def pascal_triangle(rows: int) -> List[List[List[int]]]:
    """
    Cyclotomic factorization of the two-color quantum Pascal triangle.

    Args:
        rows: Last row index, at least 1

    Returns:
        For n = 0..rows, the list over k of the cyclotomic indices of [n; k]_y
    """
    if rows < 1:
        raise ArgError(f"Pascal triangle needs at least one row, got {rows}")
    triangle = []
    for n in range(rows + 1):
        triangle.append([factor_indices(qbinomial(n, k, "y"), n) for k in range(n + 1)])
    logger.debug(f"Computed {rows + 1} rows of the Pascal triangle")
    return triangle


def von_mangoldt_exp(n: int) -> int:
    """exp(Lambda(n)): p if n is a power of the prime p, else 1."""
    if n < 1:
        raise RangeError(f"Von Mangoldt function needs n >= 1, got {n}")
    primes = factorint(n)
    if len(primes) == 1:
        return next(iter(primes))
    return 1


def symmetric_quantum_number(n: int, v: Fraction) -> Fraction:
    """(v^n - v^-n) / (v - v^-1) for v != +-1."""
    v = Fraction(v)
    return (v ** n - v ** -n) / (v - 1 / v)


def qnum_at_v(n: int, c: str, v: Fraction) -> Fraction:
    """Evaluate [n]_c at x = y = v + 1/v."""
    v = Fraction(v)
    value = v + 1 / v
    return Fraction(qnum(n, c).evaluate((value, value)))
