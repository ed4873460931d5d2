# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""Miscellaneous utilities"""

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def harmonic(j):
    """Return the harmonic partial sum H(j) = 1 + 1/2 + ... + 1/j."""
    if j <= 0:
        return Fraction(0)
    return harmonic(j - 1) + Fraction(1, j)


def to_decimal(value, digits=12):
    """Render a rational with the given number of significant digits."""
    return '{:.{}g}'.format(float(value), digits)


def format_fraction(value):
    """Render a rational as 'p/q', or 'p' when integral."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return '{}/{}'.format(value.numerator, value.denominator)


def format_committee(committee):
    """Sorted list of ids, the form committees are serialized in."""
    return sorted(int(c) for c in committee)
