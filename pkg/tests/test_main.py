#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tests for the command-line interface.

This module contains end-to-end tests of the subcommands: their output
on stdout and their exit codes.
"""

import unittest
import os
import sys
import io
import json
import tempfile
from contextlib import redirect_stdout
from unittest.mock import patch

# Add the src directory to the path so we can import the modules
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from src.main import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, parse_point, run
from src.reduce import reduce_B
from src.utils.config_loader import create_default_config, save_config


class TestCommandLine(unittest.TestCase):
    """
    Test cases for the subcommands.
    """

    def setUp(self):
        """
        Use a temporary configuration directory.
        """
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        """
        Clean up temporary files.
        """
        self.temp_dir.cleanup()

    def invoke(self, *argv):
        out = io.StringIO()
        with redirect_stdout(out):
            code = run(["--quiet", "--config", self.temp_dir.name, *argv])
        return code, out.getvalue()

    def test_qnum(self):
        """[5]_x in canonical text."""
        code, out = self.invoke("qnum", "--n", "5", "--color", "x")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "x^2*y^2 - 3*x*y + 1\n")

    def test_qbinom_json(self):
        """JSON output carries the command and the value."""
        code, out = self.invoke("--format", "json", "qbinom", "--n", "4", "--k", "2")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), {"command": "qbinom", "value": "x^2*y^2 - 3*x*y + 2"})

    def test_cyclo(self):
        """phi_6."""
        code, out = self.invoke("cyclo", "--n", "6")
        self.assertEqual((code, out), (EXIT_OK, "x*y - 3\n"))

    def test_pascal_csv(self):
        """Cells with several factors are quoted in CSV."""
        code, out = self.invoke("--format", "csv", "pascal", "--rows", "4")
        self.assertEqual(code, EXIT_OK)
        self.assertIn('"2,4"', out)
        self.assertIn('"3,4"', out)

    def test_predict_json(self):
        """Prediction table rows keyed by n and j."""
        code, out = self.invoke("--format", "json", "predict", "--rows", "2")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["0"]["0"], "K")
        self.assertEqual(data["2"]["2"], "2")
        self.assertEqual(data["2"]["4"], "K")

    def test_dg_check(self):
        """d^2 = 0 for the antispherical complex of index 3."""
        code, out = self.invoke("dg", "check", "--n", "3")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("d^2 = 0", out)

    def test_dg_dot(self):
        """DOT export of B_2."""
        code, out = self.invoke("dg", "dot", "--m", "2")
        self.assertEqual(code, EXIT_OK)
        self.assertIn('[label="y"]', out)

    def test_dg_reduced(self):
        """Block report of the rescaled B_4."""
        code, out = self.invoke("dg", "build", "--m", "4", "--reduced")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual([b["block"] for b in json.loads(out)], ["(2,2)", "(4)", "(3)g1"])

    def test_dg_reduced_uses_grid_margin(self):
        """The identity-test margin of computation.json reaches the reduction."""
        computation = create_default_config("computation")
        computation["identity_grid_margin"] = 3
        save_config(os.path.join(self.temp_dir.name, "computation.json"), computation)
        with patch("src.main.reduce_B", wraps=reduce_B) as reduce:
            code, _ = self.invoke("dg", "build", "--m", "3", "--reduced")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(reduce.call_args.args[3], 3)

    def test_cohomology_json(self):
        """Index 2 at (2,2): Z in degrees 0 and -1, Z/2 in degree -2."""
        code, out = self.invoke("--format", "json", "cohomology", "--n", "2", "--spec", "2,2")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["0"], {"free": 1, "torsion": []})
        self.assertEqual(data["-1"], {"free": 1, "torsion": []})
        self.assertEqual(data["-2"], {"free": 0, "torsion": [2]})
        self.assertEqual(data["-3"], {"free": 0, "torsion": []})

    def test_verify(self):
        """The prediction holds for n = 4; the sabotaged one fails with exit code 1."""
        code, out = self.invoke("verify", "--n", "4", "--spec", "2,2")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("ok", out)
        code, out = self.invoke("verify", "--n", "4", "--spec", "2,2", "--sabotage")
        self.assertEqual(code, EXIT_MISMATCH)
        self.assertIn("MISMATCH", out)

    def test_verify_finite_field(self):
        """GF targets need a characteristic."""
        code, _ = self.invoke("verify", "--n", "2", "--target", "GF")
        self.assertEqual(code, EXIT_USAGE)
        code, _ = self.invoke("verify", "--n", "3", "--target", "GF", "--p", "2")
        self.assertEqual(code, EXIT_OK)

    def test_char0_expected(self):
        """Closed-form characteristic-zero rows."""
        code, out = self.invoke("char0", "table", "--n-max", "2", "--expected")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("R(0)", out)
        self.assertIn("k(2)", out)

    def test_char0_computed(self):
        """Computed rows agree with the closed form for small n."""
        code, out = self.invoke("--format", "json", "char0", "table", "--n-max", "3", "--cutoff", "12")
        self.assertEqual(code, EXIT_OK)
        data = json.loads(out)
        self.assertEqual(data["3"]["3"], "k(3)")
        self.assertEqual(data["3"]["1"], "R/(alpha_t3)(-1)")
        self.assertEqual(data["2"]["2"], "k(2)")

    def test_shrub_check(self):
        """Enumeration, brute force and the Euler characteristic agree at length 4."""
        code, out = self.invoke("shrub", "check", "--length", "4")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("euler check n=2: ok", out)

    def test_shrub_enum(self):
        """Blue basis shrubberies of length 3."""
        code, out = self.invoke("--format", "csv", "shrub", "enum", "--length", "3", "--blue")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("B(r)", out)

    def test_usage_errors(self):
        """Unknown flags, missing arguments and impossible formats exit with 2."""
        self.assertEqual(self.invoke("--bogus")[0], EXIT_USAGE)
        self.assertEqual(self.invoke("qnum")[0], EXIT_USAGE)
        self.assertEqual(self.invoke("--format", "dot", "pascal")[0], EXIT_USAGE)
        self.assertEqual(self.invoke("dg", "build")[0], EXIT_USAGE)
        self.assertEqual(self.invoke("qnum", "--n", "-1")[0], EXIT_USAGE)

    def test_parse_point(self):
        """Points are two comma-separated integers."""
        self.assertEqual(parse_point("3,2"), [3, 2])


if __name__ == '__main__':
    unittest.main()
