# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""Process level settings read from the environment."""

# Standard library imports
import os

# Local imports
from limvote.utils.errors import InvalidConfigError


# Number of k-subsets exhaustive search may score
DEFAULT_ENUMERATION_BUDGET = 2_000_000

# Largest tie-set that is ever expanded into a list of committees
MATERIALIZE_CAP = 100_000


def _positive_int(name, raw):
    try:
        value = int(raw)
    except ValueError:
        raise InvalidConfigError('{} must be an integer, got {!r}'.format(
            name, raw))
    if value < 1:
        raise InvalidConfigError('{} must be positive, got {}'.format(
            name, value))
    return value


def enumeration_budget(budget=None):
    """Resolve the enumeration budget: argument, LIMVOTE_BUDGET, default."""
    if budget is not None:
        return _positive_int('budget', budget)
    raw = os.environ.get('LIMVOTE_BUDGET')
    if raw:
        return _positive_int('LIMVOTE_BUDGET', raw)
    return DEFAULT_ENUMERATION_BUDGET


def worker_count():
    """Number of sweep worker processes (LIMVOTE_THREADS, default 1)."""
    raw = os.environ.get('LIMVOTE_THREADS')
    if raw:
        return _positive_int('LIMVOTE_THREADS', raw)
    return 1


def debug_enabled():
    return os.environ.get('LIMVOTE_DEBUG') == 'True'
