#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Error types.

This module provides the exception hierarchy raised by the algebra,
homology and combinatorics modules.
"""


class WakimotoError(Exception):
    """Base class for all errors raised by the package."""


class NotDivisible(WakimotoError):
    """An exact polynomial division has a nonzero remainder."""


class RangeError(WakimotoError):
    """An index lies outside its admissible range."""


class ArgError(WakimotoError):
    """Arguments violate a documented precondition."""


class NoUnitCombination(WakimotoError):
    """The extended Euclid procedure ended in a non-unit constant."""


class NotAUnit(WakimotoError):
    """A Gaussian elimination pivot is not +1 or -1."""


class NonIntegralAfterRescale(WakimotoError):
    """A rescaled block entry is not a polynomial."""


class InhomogeneousEntry(WakimotoError):
    """A differential entry is not homogeneous of the expected degree."""


class UnclassifiedPattern(WakimotoError):
    """A graded dimension vector matches none of the known shapes."""


class NoStem(WakimotoError):
    """The shrubbery has no stem to uproot."""


class LengthMismatch(WakimotoError):
    """Two shrubberies of different lengths were compared."""


class ParseError(WakimotoError):
    """A textual form could not be parsed."""
