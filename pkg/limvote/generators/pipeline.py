# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Elections of the synthetic experiment.

A trial draws, in this order from its own stream: the disjoint profile,
the perturbed broadcasting order and then (in the sweep) the tie-breaks.
"""

# Standard library imports
from dataclasses import dataclass

# Local imports
from limvote.election.model import Election, ElectionFrame
from limvote.generators.config import RngStream
from limvote.generators.mallows import gen_perturbed_order
from limvote.generators.profiles import gen_ballots, gen_disjoint


@dataclass(frozen=True)
class TrialElection:
    election: Election
    order: object
    profile: object
    stream: RngStream
    rng: object
    approval_noise: float
    order_dispersion: float


def generate_trial(params, cell, trial):
    """
    Election of one sweep trial.

    `params` holds n, m, p, seed and partition_mode (a SweepConfig or a
    plain dict of those values) and `cell` is a grid Cell. The generator
    is returned too, positioned after the election draws.
    """
    get = params.get if isinstance(params, dict) else (
        lambda name: getattr(params, name))
    stream = RngStream(get('seed'), cell.index, trial)
    rng = stream.generator()

    # One knob drives both the approval resampling and the order noise
    approval_noise = order_dispersion = cell.phi
    profile = gen_disjoint(get('n'), get('m'), cell.g, get('p'),
                           approval_noise, rng, get('partition_mode'))
    order = gen_perturbed_order(profile.base_order, order_dispersion, rng)
    frame = ElectionFrame(get('n'), get('m'), cell.k, cell.l,
                          profile.approvals)
    election = Election(frame, gen_ballots(frame.approvals, order, cell.l))
    return TrialElection(election, order, profile, stream, rng,
                         approval_noise, order_dispersion)
