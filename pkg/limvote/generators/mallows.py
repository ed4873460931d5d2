# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""Mallows perturbation of a broadcasting order."""

# Third party imports
import numpy as np

# Local imports
from limvote.election.model import BroadcastOrder
from limvote.utils.errors import InvalidConfigError


def gen_perturbed_order(base, phi, rng):
    """
    Sample an order from the Mallows model centered at `base`.

    Uses repeated insertion: the j-th item of `base` goes to position
    pos in 0..j with weight phi ** (j - pos). phi=0 returns `base` and
    phi=1 a uniform permutation.
    """
    if not 0 <= phi <= 1:
        raise InvalidConfigError('phi must lie in [0, 1], got {}'.format(phi))
    ranking = [base.order[0]]
    for j in range(1, len(base.order)):
        weights = float(phi) ** np.arange(j, -1, -1)
        pos = rng.choice(j + 1, p=weights / weights.sum())
        ranking.insert(int(pos), base.order[j])
    return BroadcastOrder(tuple(ranking))
