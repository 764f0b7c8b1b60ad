#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the homology module.

This module contains unit tests for Smith normal forms, ranks over
fields, integral and field cohomology and the bigraded cohomology of
complexes of free graded modules.
"""

import unittest
import os
import sys
import random
from fractions import Fraction

import numpy as np
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_smith_normal_form

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.dg import DgComplex, build_B, build_tilde_C
from src.exceptions import ArgError, InhomogeneousEntry
from src.homology import (
    AbGroup,
    cohomology,
    field_cohomology,
    finite_field_rank,
    graded_field_cohomology,
    integral_cohomology,
    invariant_factors,
    merge_reports,
    rational_nullspace,
    rational_rank,
    reports_equal,
    smith_normal_form,
    universal_coefficient_dims,
)
from src.ring import A_S, X, Specialization


class TestAbGroup(unittest.TestCase):
    """
    Test cases for finitely generated abelian groups.
    """

    def test_text(self):
        """Free part first, then the invariant factors."""
        self.assertEqual(str(AbGroup(2, (2,))), "Z^2 + Z/2")
        self.assertEqual(str(AbGroup(1)), "Z")
        self.assertEqual(str(AbGroup()), "0")

    def test_invariant_factors(self):
        """Z/2 + Z/3 = Z/6 and Z/4 + Z/6 = Z/2 + Z/12."""
        self.assertEqual(invariant_factors([2, 3]), (6,))
        self.assertEqual(invariant_factors([4, 6]), (2, 12))
        self.assertEqual(AbGroup.from_factors(0, [1, 3, 2]), AbGroup(0, (6,)))

    def test_invalid_torsion(self):
        """Torsion must be a divisibility chain of factors >= 2."""
        with self.assertRaises(ArgError):
            AbGroup(0, (4, 6))
        with self.assertRaises(ArgError):
            AbGroup(-1)

    def test_direct_sum(self):
        """Direct sums renormalize."""
        self.assertEqual(AbGroup(1, (2,)).direct_sum(AbGroup(0, (3,))), AbGroup(1, (6,)))


class TestSmithNormalForm(unittest.TestCase):
    """
    Test cases for invariant factors of integer matrices.
    """

    def test_examples(self):
        """Small matrices with known invariant factors."""
        self.assertEqual(smith_normal_form([[2, 4], [6, 8]]), (2, 4))
        self.assertEqual(smith_normal_form([[1, 0], [0, 0]]), (1,))
        self.assertEqual(smith_normal_form([[2, 0], [0, 3]]), (1, 6))
        self.assertEqual(smith_normal_form([]), ())

    def test_determinant(self):
        """The product of the invariant factors is |det| for a nonsingular matrix."""
        matrix = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
        factors = smith_normal_form(matrix)
        self.assertEqual(len(factors), 3)
        self.assertEqual(factors[0] * factors[1] * factors[2], abs(round(np.linalg.det(np.array(matrix)))))

    def test_matches_sympy(self):
        """Invariant factors agree with sympy on seeded random matrices."""
        rng = random.Random(7)
        for shape in ((3, 3), (3, 4), (4, 3), (2, 5)):
            for _ in range(5):
                matrix = [[rng.randint(-6, 6) for _ in range(shape[1])] for _ in range(shape[0])]
                with self.subTest(matrix=matrix):
                    normal = sympy_smith_normal_form(Matrix(matrix), domain=ZZ)
                    expected = sorted(abs(int(normal[i, i])) for i in range(min(shape)) if normal[i, i] != 0)
                    self.assertEqual(list(smith_normal_form(matrix)), expected)


class TestRanks(unittest.TestCase):
    """
    Test cases for ranks over prime fields and the rationals.
    """

    def test_finite_field_rank(self):
        """diag(2, 2) has rank 0 mod 2 and rank 2 mod 3."""
        mat = np.array([[2, 0], [0, 2]], dtype=np.int64)
        self.assertEqual(finite_field_rank(mat, 2), 0)
        self.assertEqual(finite_field_rank(mat, 3), 2)
        self.assertEqual(finite_field_rank(np.array([[1, 1], [1, 1]], dtype=np.int64), 2), 1)
        self.assertEqual(mat[0, 0], 2)

    def test_rational_rank(self):
        """Ranks over QQ."""
        self.assertEqual(rational_rank([[1, 2], [2, 4]]), 1)
        self.assertEqual(rational_rank([[1, 0], [0, 1]]), 2)
        self.assertEqual(rational_rank([]), 0)

    def test_rational_nullspace(self):
        """Kernel vectors over QQ; no rows means the whole space."""
        kernel = rational_nullspace([[1, 2], [2, 4]])
        self.assertEqual(len(kernel), 1)
        self.assertEqual(kernel[0][0] + 2 * kernel[0][1], 0)
        self.assertNotEqual(kernel[0], [0, 0])
        self.assertEqual(rational_nullspace([[1, 0], [0, 1]]), [])
        self.assertEqual(rational_nullspace([], 2), [[1, 0], [0, 1]])
        self.assertTrue(all(isinstance(v, Fraction) for v in rational_nullspace([[Fraction(1, 2), 3]])[0]))


class TestCohomology(unittest.TestCase):
    """
    Test cases for the cohomology of specialized complexes.
    """

    def setUp(self):
        """
        Build B_2 and the usual specializations.
        """
        self.b2 = build_B(2)
        self.zz = Specialization.integers(2, 2)

    def test_b2_integral(self):
        """B_2 at (2,2): H^-3 = 0 and H^-2 = Z/2."""
        report = integral_cohomology(self.b2, self.zz)
        self.assertEqual(report.groups, {-3: AbGroup(), -2: AbGroup(0, (2,))})
        self.assertEqual(str(report), "H^-2 = Z/2")

    def test_b2_fields(self):
        """Over GF(2) both degrees survive, over QQ and GF(3) none."""
        self.assertEqual(field_cohomology(self.b2, Specialization.modular(2)).dims, {-3: 1, -2: 1})
        self.assertEqual(field_cohomology(self.b2, Specialization.modular(3)).nonzero(), {})
        self.assertEqual(cohomology(self.b2, Specialization.rationals(2, 2)).nonzero(), {})

    def test_wrong_target(self):
        """Integral cohomology needs ZZ, field cohomology a field."""
        with self.assertRaises(ArgError):
            integral_cohomology(self.b2, Specialization.rationals(2, 2))
        with self.assertRaises(ArgError):
            field_cohomology(self.b2, self.zz)

    def test_universal_coefficients(self):
        """Mod-p dimensions read off the integral groups agree with direct computation."""
        for n in range(5):
            c = build_tilde_C(n, True)
            integral = integral_cohomology(c, self.zz)
            for p in (2, 3, 5):
                with self.subTest(n=n, p=p):
                    direct = field_cohomology(c, Specialization.modular(p))
                    self.assertEqual(universal_coefficient_dims(integral, p), direct.dims)

    def test_characteristic_zero_stairs(self):
        """Over QQ at (2,2) only degrees 0 and -1 survive, n = 1..5."""
        for n in range(1, 6):
            report = cohomology(build_tilde_C(n, True), Specialization.rationals(2, 2))
            self.assertEqual(report.nonzero(), {-1: 1, 0: 1})

    def test_merge(self):
        """Merging adds groups degreewise."""
        a = integral_cohomology(self.b2, self.zz)
        merged = merge_reports([a, a])
        self.assertEqual(merged.groups[-2], AbGroup(0, (2, 2)))
        self.assertFalse(reports_equal(merged, a))
        with self.assertRaises(ArgError):
            merge_reports([a, field_cohomology(self.b2, Specialization.modular(2))])

    def test_json(self):
        """Integral reports serialize free rank and torsion per degree."""
        report = integral_cohomology(self.b2, self.zz)
        self.assertEqual(report.to_json(), {"-3": {"free": 0, "torsion": []}, "-2": {"free": 0, "torsion": [2]}})


class TestGradedCohomology(unittest.TestCase):
    """
    Test cases for bigraded dimensions over Q[a_s, a_t].
    """

    def test_single_arrow(self):
        """R(0) -a_s-> R(2) has cokernel Q[a_t] starting in internal degree -2."""
        c = DgComplex({0: [("g", 0)], 1: [("h", -2)]}, {0: {(0, 0): A_S}}, "arrow")
        dims = graded_field_cohomology(c, cutoff=4, shift_of=lambda label: label[1])
        for internal in range(-2, 5):
            self.assertEqual(dims[(0, internal)], 0)
            self.assertEqual(dims[(1, internal)], 1 if internal % 2 == 0 else 0)

    def test_inhomogeneous_entry(self):
        """Entries still involving x or y are rejected."""
        c = DgComplex({0: [("g", 0)], 1: [("h", -2)]}, {0: {(0, 0): X}}, "bad")
        with self.assertRaises(InhomogeneousEntry):
            graded_field_cohomology(c, cutoff=4, shift_of=lambda label: label[1])

    def test_wrong_degree(self):
        """A linear entry between generators of equal degree is rejected."""
        c = DgComplex({0: [("g", 0)], 1: [("h", 0)]}, {0: {(0, 0): A_S}}, "flat")
        with self.assertRaises(InhomogeneousEntry):
            graded_field_cohomology(c, cutoff=4, shift_of=lambda label: label[1])


if __name__ == '__main__':
    unittest.main()
