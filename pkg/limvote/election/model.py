# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Election frames, elections and broadcasting orders.

Candidates are the integers 0..m-1 and voters the integers 0..n-1.
Approval sets and ballots are frozensets. All types are immutable.
"""

# Standard library imports
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
import logging

# Local imports
from limvote.utils.errors import InvalidCommitteeError, InvalidElectionError


logger = logging.getLogger(__name__)


def _as_sets(profile):
    return tuple(frozenset(int(c) for c in s) for s in profile)


# =============================================================================
# ---- Frames and elections
# =============================================================================
@dataclass(frozen=True)
class ElectionFrame:
    """
    An election without its ballot profile.

    Parameters
    ----------
    n: int
        Number of voters.
    m: int
        Number of candidates.
    k: int
        Committee size.
    l: int
        Ballot limit.
    approvals: sequence of sets
        One approval set per voter. Sets may be empty.
    """
    n: int
    m: int
    k: int
    l: int
    approvals: tuple = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'approvals', _as_sets(self.approvals))
        if self.n < 1:
            raise InvalidElectionError('An election needs at least one voter')
        if len(self.approvals) != self.n:
            raise InvalidElectionError(
                'Expected {} approval sets, got {}'.format(
                    self.n, len(self.approvals)))
        if not 1 <= self.l <= self.k <= self.m:
            raise InvalidElectionError(
                'Sizes must satisfy 1 <= l <= k <= m, got l={}, k={}, '
                'm={}'.format(self.l, self.k, self.m))
        # Profiles from generators share set objects, so checking the
        # distinct sets is enough
        for approved in set(self.approvals):
            if approved and (min(approved) < 0 or max(approved) >= self.m):
                raise InvalidElectionError(
                    'Approved candidate out of range 0..{}: {}'.format(
                        self.m - 1, sorted(approved)))

    @property
    def candidates(self):
        return range(self.m)

    @cached_property
    def approval_groups(self):
        """
        Distinct approval sets with their multiplicities.

        Returns a tuple of (set, count) pairs in first-occurrence order.
        """
        return tuple(Counter(self.approvals).items())

    @cached_property
    def approval_counts(self):
        """Number of approvals per candidate."""
        counts = [0] * self.m
        for approved, mult in self.approval_groups:
            for c in approved:
                counts[c] += mult
        return tuple(counts)

    def with_committee_size(self, k):
        """Same profile with another committee size."""
        return ElectionFrame(self.n, self.m, k, min(self.l, k), self.approvals)


@dataclass(frozen=True)
class Election:
    """
    A frame together with one ballot per voter.

    Ballots are only normalized here; use `validate_election` to check
    them against the frame.
    """
    frame: ElectionFrame
    ballots: tuple = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'ballots', _as_sets(self.ballots))

    @property
    def n(self):
        return self.frame.n

    @property
    def m(self):
        return self.frame.m

    @property
    def k(self):
        return self.frame.k

    @property
    def l(self):
        return self.frame.l

    @property
    def approvals(self):
        return self.frame.approvals

    @cached_property
    def ballot_frame(self):
        """The frame whose approval sets are the ballots."""
        return ElectionFrame(self.n, self.m, self.k, self.l, self.ballots)

    @cached_property
    def vote_counts(self):
        """LV tally of every candidate."""
        return self.ballot_frame.approval_counts


# =============================================================================
# ---- Validation
# =============================================================================
@dataclass(frozen=True)
class Problem:
    kind: str
    voter: object = None
    detail: str = ''

    def __str__(self):
        where = '' if self.voter is None else 'voter {}: '.format(self.voter)
        return '{}{}{}'.format(where, self.kind,
                               ' ({})'.format(self.detail)
                               if self.detail else '')


@dataclass(frozen=True)
class ValidationReport:
    problems: tuple = ()

    @property
    def is_valid(self):
        return not self.problems

    def kinds(self):
        return {p.kind for p in self.problems}

    def __str__(self):
        if self.is_valid:
            return 'valid'
        return '\n'.join(str(p) for p in self.problems)


def validate_election(election):
    """
    Check every ballot against the frame.

    All problems are collected; nothing is raised.
    """
    frame = election.frame
    problems = []
    if len(election.ballots) != frame.n:
        problems.append(Problem(
            'ballot count',
            detail='expected {}, got {}'.format(frame.n,
                                                len(election.ballots))))

    for i, (approved, ballot) in enumerate(zip(frame.approvals,
                                               election.ballots)):
        outside = sorted(c for c in ballot if not 0 <= c < frame.m)
        if outside:
            problems.append(Problem('out of range', i, str(outside)))
        if len(ballot) != frame.l:
            problems.append(Problem(
                'ballot size', i,
                'expected {}, got {}'.format(frame.l, len(ballot))))
        if len(approved) >= frame.l:
            if not ballot <= approved:
                problems.append(Problem(
                    'ballot not within approvals', i,
                    str(sorted(ballot - approved))))
        elif not approved <= ballot:
            problems.append(Problem(
                'approvals not within ballot', i,
                str(sorted(approved - ballot))))

    report = ValidationReport(tuple(problems))
    if not report.is_valid:
        logger.debug("Election has %d problems", len(problems))
    return report


# =============================================================================
# ---- Orders and committees
# =============================================================================
@dataclass(frozen=True)
class BroadcastOrder:
    """A linear order over all candidates, most prioritized first."""
    order: tuple

    def __post_init__(self):
        order = tuple(int(c) for c in self.order)
        object.__setattr__(self, 'order', order)
        if sorted(order) != list(range(len(order))):
            raise InvalidElectionError(
                'Order must be a permutation of 0..{}'.format(len(order) - 1))

    @classmethod
    def identity(cls, m):
        return cls(tuple(range(m)))

    @cached_property
    def rank(self):
        """Position of each candidate in the order."""
        rank = [0] * len(self.order)
        for pos, c in enumerate(self.order):
            rank[c] = pos
        return tuple(rank)

    def precedes(self, c, d):
        return self.rank[c] < self.rank[d]

    def __len__(self):
        return len(self.order)

    def __iter__(self):
        return iter(self.order)


def check_committee(frame, committee):
    """Return the committee as a frozenset, or raise if it is malformed."""
    members = frozenset(int(c) for c in committee)
    if len(members) != frame.k:
        raise InvalidCommitteeError(
            'Committee must have {} members, got {}'.format(
                frame.k, len(members)))
    if any(not 0 <= c < frame.m for c in members):
        raise InvalidCommitteeError(
            'Committee member out of range 0..{}: {}'.format(
                frame.m - 1, sorted(members)))
    return members
