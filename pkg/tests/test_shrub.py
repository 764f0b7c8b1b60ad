#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the shrub module.

This module contains unit tests for building, parsing and enumerating
shrubberies, the order used for Gaussian elimination and uprooting.
"""

import unittest
import os
import sys

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.exceptions import ArgError, LengthMismatch, NoStem, ParseError
from src.shrub import (
    BLUE,
    CLOSE,
    DOT,
    OPEN,
    RED,
    SEPARATOR,
    TRIVIAL,
    antispherical_basis,
    arch,
    brute_force_count,
    dot,
    ef_classes,
    enumerate_shrubberies,
    euler_check,
    format_shrubbery,
    has_empty_arch,
    is_complete,
    is_well_tended,
    leftmost_outer_stem,
    order_leq,
    parse_shrubbery,
    to_word_and_sequence,
    uproot,
    uproot_leftmost,
    well_tended,
)


class TestGrammar(unittest.TestCase):
    """
    Test cases for building and printing shrubberies.
    """

    def test_lengths(self):
        """Dots have length 1, an arch adds one strand per slot boundary."""
        L = arch(BLUE, dot(RED), arch(RED, dot(BLUE)))
        self.assertEqual(L.length, 7)
        self.assertEqual(L.stem_count, 1)
        self.assertEqual(TRIVIAL.length, 0)

    def test_format_and_parse(self):
        """Bracket strings print and parse back."""
        L = arch(BLUE, dot(RED), arch(RED, dot(BLUE)))
        self.assertEqual(format_shrubbery(L), "B(r|R(b))")
        self.assertEqual(str(TRIVIAL), "1")
        for text in ("1", "b", "rb", "B(r|R(b))", "B()", "R(bb|B(r))r"):
            self.assertEqual(format_shrubbery(parse_shrubbery(text)), text)

    def test_parse_errors(self):
        """Color clashes and malformed strings are rejected."""
        for text in ("B(b)", "B(r", "x", "r)"):
            with self.assertRaises(ParseError):
                parse_shrubbery(text)

    def test_color_clash(self):
        """An arch only holds shrubs of the opposite color."""
        with self.assertRaises(ArgError):
            arch(BLUE, dot(BLUE))
        with self.assertRaises(ArgError):
            arch(RED)

    def test_word_and_sequence(self):
        """Letters and decorations in reading order."""
        word, decorations = to_word_and_sequence(parse_shrubbery("B(r|R(b))"))
        self.assertEqual(word, ("t", "s", "t", "s", "t", "s", "t"))
        self.assertEqual(decorations, (OPEN, DOT, SEPARATOR, OPEN, DOT, CLOSE, CLOSE))

    def test_predicates(self):
        """Complete means alternating words, well-tended adds no stems."""
        self.assertTrue(is_complete(parse_shrubbery("bb")))
        self.assertFalse(is_complete(parse_shrubbery("B(rr)")))
        self.assertTrue(is_well_tended(well_tended(3, BLUE)))
        self.assertEqual(format_shrubbery(well_tended(3, BLUE)), "B(R(b))")
        self.assertFalse(is_well_tended(parse_shrubbery("B(r|r)")))
        self.assertTrue(has_empty_arch(parse_shrubbery("B(r|)")))
        self.assertFalse(has_empty_arch(parse_shrubbery("B(r|r)")))


class TestEnumeration(unittest.TestCase):
    """
    Test cases for enumeration against the brute-force count.
    """

    def count(self, n, blue_only=False, basis_only=True):
        return sum(1 for L in enumerate_shrubberies(max_len=n, blue_only=blue_only, basis_only=basis_only)
                   if L.length == n)

    def test_small_lengths(self):
        """Two dots of length 1; four basis shrubberies and two empty arches of length 2."""
        self.assertEqual(self.count(1), 2)
        self.assertEqual(self.count(2), 4)
        self.assertEqual(self.count(2, basis_only=False), 6)

    def test_matches_brute_force(self):
        """Enumeration and decorated 01-sequences agree for lengths <= 6."""
        for n in range(7):
            for blue_only in (False, True):
                for basis_only in (True, False):
                    with self.subTest(n=n, blue_only=blue_only, basis_only=basis_only):
                        self.assertEqual(self.count(n, blue_only, basis_only),
                                         brute_force_count(n, blue_only, basis_only))

    def test_by_word(self):
        """The basis shrubberies with word tst."""
        found = sorted(format_shrubbery(L) for L in enumerate_shrubberies(word=("t", "s", "t")))
        self.assertEqual(found, ["B(r)", "brb"])

    def test_enumeration_needs_bound(self):
        """Either a length bound or a word is required."""
        with self.assertRaises(ArgError):
            enumerate_shrubberies()

    def test_antispherical_basis(self):
        """Blue basis shrubberies with words inside stst."""
        self.assertEqual([format_shrubbery(L) for L in antispherical_basis(1)], ["1", "b"])
        self.assertEqual(sorted(format_shrubbery(L) for L in antispherical_basis(2)), ["1", "B(r)", "b", "bb"])

    def test_euler_check(self):
        """Euler characteristics of shrubberies and monomials agree."""
        for n in range(3):
            self.assertTrue(euler_check(n))


class TestOrder(unittest.TestCase):
    """
    Test cases for the partial order.
    """

    def test_first_shrub_length(self):
        """A shorter first shrub is smaller."""
        a, b = parse_shrubbery("bB(r)"), parse_shrubbery("B(r)b")
        self.assertTrue(order_leq(a, b))
        self.assertFalse(order_leq(b, a))
        self.assertTrue(order_leq(a, a))

    def test_first_slot(self):
        """Shrubs of one color compare by their first slot."""
        a, b = parse_shrubbery("B(r|rr)"), parse_shrubbery("B(rr|r)")
        self.assertTrue(order_leq(a, b))
        self.assertFalse(order_leq(b, a))

    def test_incomparable_colors(self):
        """Single shrubs of different colors are incomparable."""
        a, b = parse_shrubbery("B(r)"), parse_shrubbery("R(b)")
        self.assertFalse(order_leq(a, b))
        self.assertFalse(order_leq(b, a))

    def test_length_mismatch(self):
        """Only shrubberies of equal length compare."""
        with self.assertRaises(LengthMismatch):
            order_leq(parse_shrubbery("b"), parse_shrubbery("bb"))


class TestUprooting(unittest.TestCase):
    """
    Test cases for uprooting stems.
    """

    def test_uproot(self):
        """Uprooting a stem merges the slots on both sides."""
        L = parse_shrubbery("B(r|r|r)")
        self.assertEqual(format_shrubbery(uproot(L, [0])), "B(rr|r)")
        self.assertEqual(format_shrubbery(uproot(L, [1])), "B(r|rr)")
        self.assertEqual(format_shrubbery(uproot(L, [0, 1])), "B(rrr)")
        self.assertEqual(format_shrubbery(uproot(L, [])), "B(r|r|r)")
        with self.assertRaises(ArgError):
            uproot(L, [2])

    def test_uproot_nested(self):
        """Stems inside slots are numbered in reading order."""
        L = parse_shrubbery("B(R(b|b)|r)")
        self.assertEqual(L.stem_count, 2)
        self.assertEqual(format_shrubbery(uproot(L, [0])), "B(R(bb)|r)")
        self.assertEqual(format_shrubbery(uproot(L, [1])), "B(R(b|b)r)")

    def test_uproot_leftmost(self):
        """u merges the first two slots of the first shrub with a stem."""
        L = parse_shrubbery("bB(r|r)")
        self.assertEqual(format_shrubbery(uproot_leftmost(L)), "bB(rr)")
        self.assertEqual(leftmost_outer_stem(L), 0)
        self.assertEqual(leftmost_outer_stem(parse_shrubbery("B(R(b|b)|r)")), 1)
        with self.assertRaises(NoStem):
            uproot_leftmost(parse_shrubbery("bb"))

    def test_ef_bijection(self):
        """u maps the uprootings keeping the outer stem onto those removing it."""
        for text in ("B(r|r)", "B(r|r|r)", "B(R(b|b)|r)"):
            with self.subTest(text=text):
                classes = ef_classes(parse_shrubbery(text))
                self.assertEqual(len(classes.E), len(classes.F))
                self.assertTrue(classes.is_bijection)

    def test_ef_preconditions(self):
        """Well-tended or incomplete shrubberies are rejected."""
        with self.assertRaises(ArgError):
            ef_classes(parse_shrubbery("b"))
        with self.assertRaises(ArgError):
            ef_classes(parse_shrubbery("B(rr)"))


if __name__ == '__main__':
    unittest.main()
