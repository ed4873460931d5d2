# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Exhaustive reference implementations.

Everything here is scored straight from the definitions, by enumerating
committees, voter groups or vote count vectors. Nothing is shared with
the scoring code of the rules, metrics, axioms or games modules, so
agreement between the two is meaningful. Only small instances fit the
budgets.
"""

# Standard library imports
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
import logging

# Local imports
from limvote.rules.winners import ExplicitWinnerSet
from limvote.utils.errors import BudgetExceededError, UnknownRuleError


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleBudget:
    max_subsets: int = 200_000
    max_group_voters: int = 12
    max_lattice: int = 200_000

    def __post_init__(self):
        for name in ('max_subsets', 'max_group_voters', 'max_lattice'):
            if getattr(self, name) < 1:
                raise ValueError('{} must be positive'.format(name))


DEFAULT_BUDGET = OracleBudget()


def _committees(m, k, budget):
    size = comb(m, k)
    if size > budget.max_subsets:
        raise BudgetExceededError(
            'The oracle would enumerate {} committees, more than {}'.format(
                size, budget.max_subsets))
    return combinations(range(m), k)


def _harmonic(j):
    return sum((Fraction(1, x) for x in range(1, j + 1)), Fraction(0))


def _objective(objective, frame, ballots):
    """Score function of a committee, written from its definition."""
    approvals = frame.approvals
    if objective == 'av':
        return lambda w: sum(1 for a in approvals for c in w if c in a)
    if objective == 'lv':
        return lambda w: sum(1 for b in ballots for c in w if c in b)
    if objective == 'cc':
        return lambda w: sum(1 for a in approvals if any(c in a for c in w))
    if objective == 'pav':
        return lambda w: sum(_harmonic(len(set(w) & a)) for a in approvals)
    if objective == 'sav':
        return lambda w: sum(Fraction(len(set(w) & a), len(a))
                             for a in approvals if a)
    if objective == 'lcc':
        return lambda w: sum(min(frame.l, len(set(w) & a))
                             for a in approvals)
    raise UnknownRuleError('Unknown objective: {}'.format(objective))


def oracle_argmax(election, objective, budget=DEFAULT_BUDGET):
    """
    All committees of maximum score, by scoring every k-subset.

    `election` may be a frame unless the objective is 'lv'.
    """
    frame = getattr(election, 'frame', election)
    ballots = getattr(election, 'ballots', None)
    if objective == 'lv' and ballots is None:
        raise UnknownRuleError('The lv objective needs ballots')
    score = _objective(objective, frame, ballots)

    best, winners = None, []
    for w in _committees(frame.m, frame.k, budget):
        value = score(w)
        if best is None or value > best:
            best, winners = value, [w]
        elif value == best:
            winners.append(w)
    return ExplicitWinnerSet(objective, best, frame.k, winners)


def dominates(frame, better, worse):
    """Every voter likes `better` at least as much, and one strictly."""
    better, worse = frozenset(better), frozenset(worse)
    strict = False
    for a in frame.approvals:
        x, y = len(better & a), len(worse & a)
        if x < y:
            return False
        strict = strict or x > y
    return strict


def oracle_pareto_dominator(election, committee, budget=DEFAULT_BUDGET):
    """The first committee (in lexicographic order) dominating `committee`."""
    frame = getattr(election, 'frame', election)
    for w in _committees(frame.m, frame.k, budget):
        if dominates(frame, w, committee):
            return frozenset(w)
    return None


# =============================================================================
# ---- Structure and axioms
# =============================================================================
def oracle_is_laminar(frame):
    """
    Laminarity from the recursive definition, trying every unanimously
    approved candidate and every split into two candidate-disjoint
    groups. Only approved candidates are considered.
    """
    memo = {}

    def laminar(sets, k):
        key = (sets, k)
        if key in memo:
            return memo[key]
        memo[key] = result = _laminar(sets, k)
        return result

    def _laminar(sets, k):
        distinct = set(sets)
        if len(distinct) == 1:
            return len(sets[0]) >= k
        common = frozenset.intersection(*sets)
        if k >= 1:
            for c in sorted(common):
                if laminar(tuple(s - {c} for s in sets), k - 1):
                    return True
        n = len(sets)
        for size in range(1, n // 2 + 1):
            for left in combinations(range(n), size):
                right = [i for i in range(n) if i not in left]
                left_sets = tuple(sets[i] for i in left)
                right_sets = tuple(sets[i] for i in right)
                used = frozenset().union(*left_sets)
                if any(s & used for s in right_sets):
                    continue
                if (k * size) % n:
                    continue
                k_left = k * size // n
                if (laminar(left_sets, k_left)
                        and laminar(right_sets, k - k_left)):
                    return True
        return False

    return laminar(tuple(frame.approvals), frame.k)


def oracle_axiom_holds(frame, committee, axiom, budget=DEFAULT_BUDGET):
    """JR, PJR or EJR by trying every group of voters."""
    if axiom not in ('jr', 'pjr', 'ejr'):
        raise UnknownRuleError('Unknown axiom: {}'.format(axiom))
    if frame.n > budget.max_group_voters:
        raise BudgetExceededError(
            'The oracle tries every group of {} voters, more than {}'.format(
                frame.n, budget.max_group_voters))
    w = frozenset(committee)
    n, k = frame.n, frame.k
    approvals = frame.approvals
    levels = [1] if axiom == 'jr' else range(1, k + 1)

    for size in range(1, n + 1):
        for group in combinations(range(n), size):
            common = frozenset.intersection(*(approvals[i] for i in group))
            for level in levels:
                if size * k < level * n or len(common) < level:
                    continue
                if axiom == 'jr':
                    ok = any(approvals[i] & w for i in group)
                elif axiom == 'pjr':
                    union = frozenset().union(*(approvals[i] for i in group))
                    ok = len(union & w) >= level
                else:
                    ok = any(len(approvals[i] & w) >= level for i in group)
                if not ok:
                    return False
    return True


# =============================================================================
# ---- Games
# =============================================================================
def _count_vectors(size, total, cap):
    """Every vector of `size` integers in 0..cap adding up to `total`."""
    if size == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(cap, total) + 1):
        for rest in _count_vectors(size - 1, total - first, cap):
            yield (first,) + rest


def oracle_best_response(game, i, opponents, budget=DEFAULT_BUDGET):
    """
    Best utility of party i over every vote count vector on its own
    candidates, against fixed opponent tallies.

    Utilities are worked out by listing every winning committee.
    """
    frame = game.frame
    own = sorted(game.parties.parties[i])
    supporters = game.parties.supporters[i]
    votes = supporters * frame.l

    lattice = comb(votes + len(own) - 1, len(own) - 1)
    if lattice > budget.max_lattice:
        raise BudgetExceededError(
            'The oracle would try up to {} count vectors, more than '
            '{}'.format(lattice, budget.max_lattice))
    committees = list(_committees(frame.m, frame.k, budget))
    party = frozenset(own)

    best = None
    for vector in _count_vectors(len(own), votes, supporters):
        if sum(1 for y in vector if y) < frame.l:
            continue
        tallies = list(opponents)
        for c, y in zip(own, vector):
            tallies[c] += y
        scores = [sum(tallies[c] for c in w) for w in committees]
        top = max(scores)
        utility = min(len(party.intersection(w))
                      for w, s in zip(committees, scores) if s == top)
        if best is None or utility > best:
            best = utility
    return best
