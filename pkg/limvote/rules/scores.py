# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Committee scores.

Scores are computed per distinct approval set, so profiles where many
voters share a set are cheap. PAV and SAV scores are exact Fractions.
"""

# Standard library imports
from fractions import Fraction

# Local imports
from limvote.election.model import check_committee
from limvote.utils.misc import harmonic


def _intersections(frame, committee):
    members = check_committee(frame, committee)
    for approved, mult in frame.approval_groups:
        yield approved, len(approved & members), mult


def av_score(frame, committee):
    """Number of approvals the committee members receive."""
    return sum(hits * mult for _, hits, mult in
               _intersections(frame, committee))


def lv_score(election, committee):
    """Number of votes the committee members receive."""
    return av_score(election.ballot_frame, committee)


def cc_score(frame, committee):
    """Number of voters approving at least one committee member."""
    return sum(mult for _, hits, mult in _intersections(frame, committee)
               if hits)


def pav_score(frame, committee):
    return sum((harmonic(hits) * mult for _, hits, mult in
                _intersections(frame, committee)), Fraction(0))


def sav_score(frame, committee):
    """Voters with empty approval sets contribute nothing."""
    return sum((Fraction(hits * mult, len(approved)) for approved, hits, mult
                in _intersections(frame, committee) if approved),
               Fraction(0))


def lcc_score(frame, committee, l=None):
    """Each voter counts up to l represented members (frame.l by default)."""
    limit = frame.l if l is None else l
    return sum(min(limit, hits) * mult for _, hits, mult in
               _intersections(frame, committee))


SCORE_FUNCTIONS = {
    'av': av_score,
    'cc': cc_score,
    'pav': pav_score,
    'sav': sav_score,
    'lcc': lcc_score,
}
