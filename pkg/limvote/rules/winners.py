# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Winning committees.

Threshold rules (AV, LV, SAV) are computed from candidate tallies and
kept as (locked candidates, tied candidates, open slots). Optimization
rules (CC, PAV, l-CC) are computed by exhaustive enumeration of all
k-subsets, scored in numpy batches.
"""

# Standard library imports
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice
from math import comb, lcm
import logging

# Third party imports
import numpy as np

# Local imports
from limvote.election.structure import detect_party_structure
from limvote.rules.scores import SCORE_FUNCTIONS, cc_score
from limvote.utils.config import MATERIALIZE_CAP, enumeration_budget
from limvote.utils.errors import (
    BudgetExceededError, InvalidConfigError, UnknownRuleError)
from limvote.utils.misc import harmonic


logger = logging.getLogger(__name__)

# Scored committees per numpy batch (times the number of approval groups)
BATCH_CELLS = 2_000_000


# =============================================================================
# ---- Winner sets
# =============================================================================
class WinnerSet:
    """
    All committees that maximize a rule's score.

    Iteration yields frozensets in lexicographic order of their sorted
    member lists.
    """

    def __init__(self, rule, score, k):
        self.rule = rule
        self.score = score
        self.k = k

    def __len__(self):
        raise NotImplementedError

    def __iter__(self):
        raise NotImplementedError

    def __contains__(self, committee):
        raise NotImplementedError

    def first(self):
        """The lexicographically smallest committee."""
        return next(iter(self))

    def draw(self, rng):
        """A committee drawn uniformly at random."""
        committees = self.materialize()
        return committees[int(rng.integers(len(committees)))]

    @property
    def is_resolute(self):
        return len(self) == 1

    def materialize(self, cap=MATERIALIZE_CAP):
        size = len(self)
        if size > cap:
            raise BudgetExceededError(
                '{} winning committees exceed the cap of {}'.format(size, cap))
        return tuple(self)

    def __repr__(self):
        return '{}(rule={!r}, score={}, k={})'.format(
            type(self).__name__, self.rule, self.score, self.k)


class ThresholdWinnerSet(WinnerSet):
    """
    Winners of a rule that picks the k highest tallies.

    Every winning committee is `locked` plus `slots` of the `tied`
    candidates, which all have tally `cutoff`.
    """

    def __init__(self, rule, score, k, locked, tied, slots, cutoff):
        super().__init__(rule, score, k)
        self.locked = frozenset(locked)
        self.tied = tuple(sorted(tied))
        self.slots = slots
        self.cutoff = cutoff

    def __len__(self):
        return comb(len(self.tied), self.slots)

    def __iter__(self):
        # Unions with a fixed disjoint set keep the order of combinations
        for chosen in combinations(self.tied, self.slots):
            yield self.locked.union(chosen)

    def __contains__(self, committee):
        committee = frozenset(committee)
        rest = committee - self.locked
        return (len(committee) == self.k and self.locked <= committee
                and rest <= frozenset(self.tied))

    def first(self):
        return self.locked.union(self.tied[:self.slots])

    def draw(self, rng):
        if not self.slots:
            return self.locked
        picks = rng.choice(len(self.tied), size=self.slots, replace=False)
        return self.locked.union(self.tied[int(i)] for i in picks)

    def contains_subset(self, candidates):
        """Whether some winning committee contains all `candidates`."""
        candidates = frozenset(candidates)
        rest = candidates - self.locked
        return rest <= frozenset(self.tied) and len(rest) <= self.slots


class ExplicitWinnerSet(WinnerSet):
    """Winners kept as an explicit list of committees."""

    def __init__(self, rule, score, k, committees):
        super().__init__(rule, score, k)
        self.committees = tuple(sorted((frozenset(c) for c in committees),
                                       key=sorted))
        self._members = frozenset(self.committees)

    def __len__(self):
        return len(self.committees)

    def __iter__(self):
        return iter(self.committees)

    def __contains__(self, committee):
        return frozenset(committee) in self._members

    def first(self):
        return self.committees[0]


class PartyCoverWinnerSet(WinnerSet):
    """
    Chamberlin-Courant winners of a party-list frame.

    A committee wins iff the parties it touches have as many supporters
    as the `k` largest parties together. Too many committees to list.
    """

    def __init__(self, frame, structure, score):
        super().__init__('cc', score, frame.k)
        self.frame = frame
        self.structure = structure

    def __len__(self):
        raise BudgetExceededError(
            'Chamberlin-Courant winners of this frame are not enumerable')

    def __iter__(self):
        raise BudgetExceededError(
            'Chamberlin-Courant winners of this frame are not enumerable')

    def __contains__(self, committee):
        return (len(frozenset(committee)) == self.k
                and cc_score(self.frame, committee) == self.score)

    def draw(self, rng):
        raise BudgetExceededError(
            'Cannot draw uniformly from a non enumerable winner set')

    @property
    def is_resolute(self):
        return False

    def first(self):
        party_of = self.structure.party_of
        supporters = self.structure.supporters
        last_member = {}
        for c, p in party_of.items():
            last_member[p] = max(c, last_member.get(p, -1))

        chosen = []
        covered = set()
        m, k = self.frame.m, self.k
        for c in range(m):
            if len(chosen) == k:
                break
            remaining = k - len(chosen) - 1
            if m - c - 1 < remaining:
                break
            cover = covered | ({party_of[c]} if c in party_of else set())
            reachable = sorted(
                (supporters[p] for p, last in last_member.items()
                 if p not in cover and last > c), reverse=True)
            best = (sum(supporters[p] for p in cover)
                    + sum(reachable[:remaining]))
            if best == self.score:
                chosen.append(c)
                covered = cover
        return frozenset(chosen)


# =============================================================================
# ---- Threshold rules
# =============================================================================
def threshold_winners(rule, tallies, k):
    """Committees made of the k highest tallies, boundary ties expanded."""
    cutoff = sorted(tallies)[-k]
    locked = [c for c, t in enumerate(tallies) if t > cutoff]
    tied = [c for c, t in enumerate(tallies) if t == cutoff]
    slots = k - len(locked)
    if len(tied) == slots:
        locked, tied, slots = locked + tied, [], 0
    score = sum(tallies[c] for c in locked) + slots * cutoff
    return ThresholdWinnerSet(rule, score, k, locked, tied, slots, cutoff)


def av_winners(frame):
    return threshold_winners('av', frame.approval_counts, frame.k)


def lv_winners(election):
    return threshold_winners('lv', election.vote_counts, election.k)


def sav_winners(frame, rule='sav'):
    """SAV is separable: each voter splits one point over their approvals."""
    tallies = [Fraction(0)] * frame.m
    for approved, mult in frame.approval_groups:
        if approved:
            share = Fraction(mult, len(approved))
            for c in approved:
                tallies[c] += share
    return threshold_winners(rule, tallies, frame.k)


# =============================================================================
# ---- Optimization rules
# =============================================================================
def _group_matrix(frame):
    groups = frame.approval_groups
    matrix = np.zeros((len(groups), frame.m), dtype=np.int64)
    weights = np.zeros(len(groups), dtype=np.int64)
    for row, (approved, mult) in enumerate(groups):
        matrix[row, list(approved)] = 1
        weights[row] = mult
    return matrix, weights


def _score_table(objective, frame, l):
    """Per-voter score of j represented members, for j = 0..k."""
    k = frame.k
    if objective == 'cc':
        return np.array([0] + [1] * k, dtype=np.int64), 1
    if objective == 'lcc':
        return np.array([min(j, l) for j in range(k + 1)],
                        dtype=np.int64), 1
    scale = lcm(*range(1, k + 1))
    table = [int(harmonic(j) * scale) for j in range(k + 1)]
    if table[-1] * frame.n >= 2 ** 62:
        return np.array(table, dtype=object), scale
    return np.array(table, dtype=np.int64), scale


def _party_list_cc(frame):
    structure = detect_party_structure(frame)
    if not structure:
        return None
    score = sum(sorted(structure.supporters, reverse=True)[:frame.k])
    logger.debug("Using the party-list closed form for CC, score %d", score)
    return PartyCoverWinnerSet(frame, structure, score)


def max_cc_score(frame, budget=None):
    """Largest Chamberlin-Courant score of any committee."""
    closed = _party_list_cc(frame)
    if closed is not None:
        return closed.score
    return optimal_committees(frame, 'cc', budget).score


def optimal_committees(frame, objective, budget=None, l=None, rule=None):
    """
    Complete argmax of `objective` over all committees of `frame`.

    objective is one of 'av', 'sav' (threshold rules) or 'cc', 'pav',
    'lcc' (exhaustive enumeration).
    """
    rule = rule or objective
    if objective == 'av':
        ws = av_winners(frame)
        ws.rule = rule
        return ws
    if objective == 'sav':
        return sav_winners(frame, rule)
    if objective not in ('cc', 'pav', 'lcc'):
        raise UnknownRuleError('Unknown objective: {}'.format(objective))

    budget = enumeration_budget(budget)
    total = comb(frame.m, frame.k)
    if total > budget:
        if objective == 'cc':
            closed = _party_list_cc(frame)
            if closed is not None:
                return closed
        raise BudgetExceededError(
            'Instance too large: C({}, {}) = {} committees exceed the '
            'budget of {}'.format(frame.m, frame.k, total, budget))

    logger.debug("Enumerating %d committees for %s", total, rule)
    matrix, weights = _group_matrix(frame)
    table, scale = _score_table(objective, frame,
                                frame.l if l is None else l)
    if table.dtype == object:
        weights = weights.astype(object)

    batch = max(1, BATCH_CELLS // max(1, len(weights) * frame.k))
    committees = combinations(range(frame.m), frame.k)
    best = None
    winners = []
    while True:
        chunk = list(islice(committees, batch))
        if not chunk:
            break
        idx = np.array(chunk, dtype=np.intp)
        hits = matrix[:, idx].sum(axis=2)
        scores = weights @ table[hits]
        top = scores.max()
        if best is None or top > best:
            best = top
            winners = []
        if top == best:
            winners.extend(chunk[int(i)] for i in np.flatnonzero(
                scores == best))

    score = Fraction(int(best), scale) if objective == 'pav' else int(best)
    return ExplicitWinnerSet(rule, score, frame.k, winners)


def limited_rule(election, base, budget=None):
    """LPAV or LSAV: the base rule run on the ballots instead of approvals."""
    if base not in ('pav', 'sav'):
        raise UnknownRuleError('Limited rules exist for pav and sav, '
                               'not {}'.format(base))
    return optimal_committees(election.ballot_frame, base, budget,
                              rule='l' + base)


def winners(election_or_frame, rule, budget=None):
    """Winners of a rule given by name."""
    frame = getattr(election_or_frame, 'frame', election_or_frame)
    if rule == 'lv':
        return lv_winners(election_or_frame)
    if rule in ('lpav', 'lsav'):
        return limited_rule(election_or_frame, rule[1:], budget)
    if rule in SCORE_FUNCTIONS:
        return optimal_committees(frame, rule, budget)
    raise UnknownRuleError('Unknown rule: {}'.format(rule))


RULES = ('av', 'lv', 'cc', 'pav', 'sav', 'lcc', 'lpav', 'lsav')


# =============================================================================
# ---- Tie-breaking
# =============================================================================
@dataclass(frozen=True)
class TieBreakPolicy:
    """How a winner set is reduced to one committee."""
    mode: str = 'lex'
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ('lex', 'random'):
            raise InvalidConfigError(
                "Tie-break mode must be 'lex' or 'random', got {!r}".format(
                    self.mode))

    def rng(self):
        return np.random.default_rng(self.seed)

    def to_dict(self):
        return {'mode': self.mode, 'seed': self.seed}


def make_resolute(ws, policy, rng=None):
    """
    Pick one committee from a winner set.

    In random mode `rng` is used when given, so several draws can share
    one generator; otherwise a fresh generator is seeded from the policy.
    """
    if policy.mode == 'lex':
        return ws.first()
    return ws.draw(policy.rng() if rng is None else rng)


# =============================================================================
# ---- Extremes over winner sets
# =============================================================================
def _count_vectors(sizes, total):
    if not sizes:
        if total == 0:
            yield ()
        return
    head, rest = sizes[0], sizes[1:]
    room = sum(rest)
    for x in range(min(head, total), -1, -1):
        if total - x <= room:
            for tail in _count_vectors(rest, total - x):
                yield (x,) + tail


def extreme_score(ws, frame, score_fn, which='min', budget=None):
    """
    Smallest (or largest) score of a committee in a winner set.

    Tied candidates approved by exactly the same voters are
    interchangeable, so only one committee per combination of counts is
    scored. Returns (score, committee).
    """
    pick = min if which == 'min' else max
    if isinstance(ws, PartyCoverWinnerSet):
        if score_fn is cc_score:
            return ws.score, ws.first()
        raise BudgetExceededError(
            'Cannot score every committee of a non enumerable winner set')

    if not isinstance(ws, ThresholdWinnerSet) or len(ws) <= MATERIALIZE_CAP:
        scored = ((score_fn(frame, w), w) for w in ws)
        return pick(scored, key=lambda item: item[0])

    tied = frozenset(ws.tied)
    columns = {c: [] for c in ws.tied}
    for row, (approved, _) in enumerate(frame.approval_groups):
        for c in approved & tied:
            columns[c].append(row)
    classes = {}
    for c in ws.tied:
        classes.setdefault(tuple(columns[c]), []).append(c)
    members = list(classes.values())

    budget = enumeration_budget(budget)
    result = None
    for count, vector in enumerate(
            _count_vectors([len(cls) for cls in members], ws.slots)):
        if count >= budget:
            raise BudgetExceededError(
                'More than {} interchangeable committee shapes'.format(budget))
        committee = ws.locked.union(
            *(cls[:x] for cls, x in zip(members, vector)))
        value = score_fn(frame, committee)
        if result is None or (value < result[0] if which == 'min'
                              else value > result[0]):
            result = (value, committee)
    logger.debug("Scored %d committee shapes for %s", count + 1, ws.rule)
    return result
