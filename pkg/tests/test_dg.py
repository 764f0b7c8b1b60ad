#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the dg module.

This module contains unit tests for generator differentials, the
Leibniz rules, the antispherical complexes and their splitting.
"""

import unittest
import os
import sys
import itertools

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.dg import (
    DgComplex,
    GenMonomial,
    antispherical_quotient,
    associated_word,
    beta,
    build_B,
    build_tilde_C,
    check_d_squared,
    complex_summary,
    diff_generator,
    diff_monomial,
    full_gamma_truncation,
    is_subword,
    reverse_monomial,
    reverse_sum,
    rho,
    split_B,
    to_dot,
    truncation_monomials,
)
from src.exceptions import ArgError
from src.qnum import qbinomial
from src.ring import A_T, ONE, X, Y


class TestGenerators(unittest.TestCase):
    """
    Test cases for generators and their differentials.
    """

    def test_degrees(self):
        """rho_k and beta_k sit in degree 1 - 2k."""
        self.assertEqual(beta(1).degree, -1)
        self.assertEqual(rho(3).degree, -5)
        self.assertEqual(GenMonomial.betas(1, 2).degree, -4)
        self.assertEqual(GenMonomial.betas(1, 2).total, 3)

    def test_invalid_generator(self):
        """k = 0 is not a generator."""
        with self.assertRaises(ArgError):
            beta(0)

    def test_beta_one(self):
        """d(beta_1) = -a_t, which vanishes in the quotient."""
        self.assertEqual(diff_generator(beta(1)), {GenMonomial(): -A_T})
        self.assertEqual(antispherical_quotient(diff_generator(beta(1))), {})

    def test_beta_two(self):
        """d(beta_2) = [2]_t beta_1 beta_1 modulo rho terms."""
        self.assertEqual(antispherical_quotient(diff_generator(beta(2))), {GenMonomial.betas(1, 1): Y})

    def test_beta_four(self):
        """d(beta_4) has the three binomial coefficients [4;i]_t."""
        expected = {GenMonomial.betas(i, 4 - i): qbinomial(4, i, "y") for i in (1, 2, 3)}
        self.assertEqual(antispherical_quotient(diff_generator(beta(4))), expected)

    def test_rho_two(self):
        """d(rho_2) = -[2]_s rho_1 rho_1 + rho_1 beta_1 + beta_1 rho_1."""
        expected = {
            GenMonomial((rho(1), rho(1))): -X,
            GenMonomial((rho(1), beta(1))): ONE,
            GenMonomial((beta(1), rho(1))): ONE,
        }
        self.assertEqual(diff_generator(rho(2)), expected)


class TestLeibniz(unittest.TestCase):
    """
    Test cases for the two Leibniz sign conventions.
    """

    def test_empty_monomial(self):
        """d(1) = 0."""
        self.assertEqual(diff_monomial(GenMonomial()), {})

    def test_left_rule_signs(self):
        """beta_1 beta_3 -> -c^3_1 beta_1 beta_1 beta_2 - c^3_2 beta_1 beta_2 beta_1 under the left rule."""
        image = antispherical_quotient(diff_monomial(GenMonomial.betas(1, 3), "left"))
        self.assertEqual(image, {
            GenMonomial.betas(1, 1, 2): -qbinomial(3, 1, "y"),
            GenMonomial.betas(1, 2, 1): -qbinomial(3, 2, "y"),
        })

    def test_right_rule_signs(self):
        """Under the right rule the last factor carries no sign."""
        image = antispherical_quotient(diff_monomial(GenMonomial.betas(1, 3), "right"))
        self.assertEqual(image, {
            GenMonomial.betas(1, 1, 2): qbinomial(3, 1, "y"),
            GenMonomial.betas(1, 2, 1): qbinomial(3, 2, "y"),
        })

    def test_beta_two_squared(self):
        """beta_2 beta_2 reaches both refinements with [2]_t and opposite signs."""
        image = antispherical_quotient(diff_monomial(GenMonomial.betas(2, 2)))
        self.assertEqual(image, {GenMonomial.betas(1, 1, 2): -Y, GenMonomial.betas(2, 1, 1): Y})

    def test_reversal_intertwines_rules(self):
        """Reversing words turns the right rule into the left rule."""
        for monomial in truncation_monomials(4):
            left = diff_monomial(reverse_monomial(monomial), "left")
            self.assertEqual(left, reverse_sum(diff_monomial(monomial, "right")), str(monomial))

    def test_unknown_rule(self):
        """Only right and left are accepted."""
        with self.assertRaises(ArgError):
            diff_monomial(GenMonomial.betas(2), "middle")


class TestWords(unittest.TestCase):
    """
    Test cases for associated words and subwords.
    """

    def test_associated_word(self):
        """beta_k and rho_k map to alternating words of length 2k - 1."""
        self.assertEqual(associated_word(GenMonomial.betas(1, 2)), ("t", "t", "s", "t"))
        self.assertEqual(associated_word(GenMonomial((rho(2),))), ("s", "t", "s"))
        self.assertEqual(associated_word(GenMonomial()), ())

    def test_subwords(self):
        """Not necessarily contiguous subsequences."""
        self.assertTrue(is_subword(("t", "t"), ("s", "t", "s", "t")))
        self.assertTrue(is_subword(("t", "s", "t"), ("s", "t", "s", "t")))
        self.assertFalse(is_subword(("s", "s"), ("s", "t")))


class TestComplexes(unittest.TestCase):
    """
    Test cases for the antispherical complexes.
    """

    def setUp(self):
        """
        Build the antispherical complex of index 4.
        """
        self.c4 = build_tilde_C(4, True)

    def test_sizes(self):
        """16 monomials splitting as 1, 1, 2, 4, 8."""
        self.assertEqual(self.c4.size(), 16)
        self.assertEqual([piece.size() for piece in split_B(self.c4)], [1, 1, 2, 4, 8])

    def test_index_zero(self):
        """n = 0 is the single empty monomial."""
        c0 = build_tilde_C(0, True)
        self.assertEqual(c0.size(), 1)
        self.assertEqual(c0.diff, {})

    def test_b2(self):
        """B_2 is beta_2 -> [2]_t beta_1 beta_1."""
        b2 = build_B(2)
        self.assertEqual(b2.basis, {-3: [GenMonomial.betas(2)], -2: [GenMonomial.betas(1, 1)]})
        self.assertEqual(b2.entry(-3, 0, 0), Y)

    def test_b6_size(self):
        """B_6 has 32 basis monomials."""
        self.assertEqual(build_B(6).size(), 32)

    def test_d_squared(self):
        """d^2 = 0 for the antispherical complexes up to n = 8, both rules."""
        for n in range(9):
            for rule in ("right", "left"):
                with self.subTest(n=n, rule=rule):
                    self.assertTrue(check_d_squared(build_tilde_C(n, True, rule)))

    def test_d_squared_full_complex(self):
        """d^2 = 0 over Z[x, y, a_s, a_t] before passing to the quotient."""
        for n in range(5):
            self.assertTrue(check_d_squared(build_tilde_C(n, False)))

    def test_d_squared_truncation(self):
        """d^2 = 0 on all rho/beta monomials with total parameter <= 6."""
        self.assertTrue(check_d_squared(full_gamma_truncation(6)))

    def test_flipped_sign_is_detected(self):
        """Negating one arrow of B_3 breaks d^2 = 0."""
        b3 = build_B(3)
        start = min(b3.degrees)
        diff = {d: dict(entries) for d, entries in b3.diff.items()}
        key = sorted(diff[start])[0]
        diff[start][key] = -diff[start][key]
        broken = DgComplex(b3.basis, diff, "broken")
        self.assertTrue(check_d_squared(b3))
        self.assertFalse(check_d_squared(broken))

    def test_invalid_index(self):
        """Negative indices are rejected."""
        with self.assertRaises(ArgError):
            build_tilde_C(-1, True)


class TestExport(unittest.TestCase):
    """
    Test cases for DOT and JSON export.
    """

    def test_dot(self):
        """One node per monomial, one edge per entry."""
        text = to_dot(build_B(2))
        self.assertIn('[label="2"]', text)
        self.assertIn('[label="11"]', text)
        self.assertIn('n0 -> n1 [label="y"];', text)
        self.assertEqual(text.count("->"), 1)

    def test_b6_dot_nodes(self):
        """The B_6 graph has 32 nodes and 80 arrows, each splitting one part in two."""
        c = build_B(6)
        text = to_dot(c)
        self.assertEqual(text.count("->"), 80)
        self.assertEqual(text.count("[label=") - text.count("->"), 32)
        compositions = []
        for cuts in itertools.product((False, True), repeat=5):
            parts, size = [], 1
            for cut in cuts:
                if cut:
                    parts.append(size)
                    size = 0
                size += 1
            compositions.append(tuple(parts + [size]))
        splits = {
            (parts, parts[:i] + (a, p - a) + parts[i + 1:])
            for parts in compositions for i, p in enumerate(parts) for a in range(1, p)
        }
        arrows = {(source.composition, target.composition) for _, source, target, _ in c.edges()}
        self.assertEqual(arrows, splits)
        labelled = {(str(source), str(target)) for _, source, target, _ in c.edges()}
        for arrow in (("6", "33"), ("6", "15"), ("24", "222"), ("222", "2211"), ("1311", "12111"),
                      ("21111", "111111")):
            self.assertIn(arrow, labelled)
        self.assertNotIn(("33", "123"), labelled)

    def test_summary(self):
        """Ranks per degree."""
        summary = complex_summary(build_B(2))
        self.assertEqual(summary["ranks"], {"-3": 1, "-2": 1})
        self.assertEqual(summary["edges"], 1)

    def test_json(self):
        """Entries carry canonical polynomial text."""
        data = build_B(2).to_json()
        self.assertEqual(data["diff"], [{"deg": -3, "entries": [[0, 0, "y"]]}])

    def test_json_basis_parallel_to_degrees(self):
        """The basis is a list of label lists, one per entry of degrees."""
        data = build_B(2).to_json()
        self.assertEqual(data["degrees"], [-3, -2])
        self.assertEqual(data["basis"], [["2"], ["11"]])
        data = build_B(3).to_json()
        self.assertEqual(len(data["basis"]), len(data["degrees"]))
        self.assertEqual(data["basis"][0], ["3"])
        self.assertEqual(sorted(data["basis"][1]), ["12", "21"])


if __name__ == '__main__':
    unittest.main()
