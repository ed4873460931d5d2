# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
LV-games.

The players are the parties of a party-list frame. A party's strategy
says how its supporters fill their l-sized ballots, and its utility is
the number of its candidates elected in the worst tied outcome.
"""

# Standard library imports
from collections import Counter
from dataclasses import dataclass
import logging

# Local imports
from limvote.election.model import ElectionFrame
from limvote.election.structure import require_party_structure
from limvote.rules.winners import threshold_winners
from limvote.utils.errors import (
    InvalidStrategyError, PreconditionError, SchemaError)


logger = logging.getLogger(__name__)


# =============================================================================
# ---- Strategies
# =============================================================================
@dataclass(frozen=True)
class PartyStrategy:
    """Ballots of a party as (ballot, multiplicity) pairs."""
    pairs: tuple

    @classmethod
    def from_pairs(cls, pairs):
        return cls(tuple((frozenset(ballot), int(mult))
                         for ballot, mult in pairs))

    @property
    def voters(self):
        return sum(mult for _, mult in self.pairs)

    def tallies(self, m):
        counts = [0] * m
        for ballot, mult in self.pairs:
            for c in ballot:
                counts[c] += mult
        return counts

    def validate(self, supporters, l, m):
        for pos, (ballot, mult) in enumerate(self.pairs):
            if mult < 1:
                raise InvalidStrategyError(
                    'Ballot {} has multiplicity {}'.format(pos, mult))
            if len(ballot) != l:
                raise InvalidStrategyError(
                    'Ballot {} has {} candidates instead of {}'.format(
                        pos, len(ballot), l))
            if any(not 0 <= c < m for c in ballot):
                raise InvalidStrategyError(
                    'Ballot {} names a candidate out of range'.format(pos))
        if self.voters != supporters:
            raise InvalidStrategyError(
                'Multiplicities add up to {}, the party has {} '
                'supporters'.format(self.voters, supporters))


def validate_vote_counts(counts, supporters, l):
    """
    Check that a vote count vector (candidate -> votes) can be cast as
    `supporters` ballots of size l.
    """
    counts = {int(c): int(y) for c, y in dict(counts).items() if y}
    if any(y < 0 for y in counts.values()):
        raise InvalidStrategyError('Vote counts must be nonnegative')
    total = sum(counts.values())
    if total != supporters * l:
        raise InvalidStrategyError(
            'Vote counts add up to {}, expected {}'.format(
                total, supporters * l))
    if any(y > supporters for y in counts.values()):
        raise InvalidStrategyError(
            'A candidate cannot get more than {} votes'.format(supporters))
    if len(counts) < l:
        raise InvalidStrategyError(
            'Votes must go to at least {} candidates'.format(l))
    return counts


def realize_counts(counts, supporters, l):
    """
    Ballots matching a vote count vector.

    Every ballot takes the l candidates with most remaining votes (lowest
    id first on ties). Equal ballots are merged.
    """
    remaining = validate_vote_counts(counts, supporters, l)
    ballots = Counter()
    for _ in range(supporters):
        ranked = sorted(remaining, key=lambda c: (-remaining[c], c))
        ballot = frozenset(ranked[:l])
        for c in ballot:
            remaining[c] -= 1
        ballots[ballot] += 1
    return PartyStrategy(tuple(ballots.items()))


def _spread(candidates, votes):
    """Spread votes as evenly as possible; the last ones get the surplus."""
    base, extra = divmod(votes, len(candidates))
    cut = len(candidates) - extra
    return {c: base + (pos >= cut) for pos, c in enumerate(candidates)}


# =============================================================================
# ---- Games
# =============================================================================
@dataclass(frozen=True)
class LVGame:
    frame: ElectionFrame
    parties: object

    def __post_init__(self):
        if self.parties.unaffiliated:
            raise PreconditionError(
                'Every voter of an LV-game must support a party')

    @classmethod
    def from_frame(cls, frame):
        return cls(frame, require_party_structure(frame))

    @classmethod
    def from_parties(cls, party_sizes, supporter_counts, k, l,
                     extra_candidates=0):
        """Party j gets the next party_sizes[j] candidate ids."""
        approvals = []
        start = 0
        for size, count in zip(party_sizes, supporter_counts):
            approvals += [frozenset(range(start, start + size))] * count
            start += size
        frame = ElectionFrame(len(approvals), start + extra_candidates, k, l,
                              approvals)
        return cls.from_frame(frame)

    @property
    def g(self):
        return self.parties.g

    @property
    def n(self):
        return self.frame.n

    @property
    def k(self):
        return self.frame.k

    @property
    def l(self):
        return self.frame.l

    def candidates_of(self, i):
        return tuple(sorted(self.parties.parties[i]))

    def supporters_of(self, i):
        return self.parties.supporters[i]

    def quota(self, i):
        return self.k * self.supporters_of(i) // self.n


@dataclass(frozen=True)
class GameOutcome:
    winners: object
    utilities: tuple
    tallies: tuple


def pessimistic_utility(winners, party):
    """Fewest members of `party` in any committee of a threshold set."""
    tied_outside = len(frozenset(winners.tied) - party)
    return (len(winners.locked & party)
            + max(0, winners.slots - tied_outside))


def _check_profile(game, profile):
    if len(profile) != game.g:
        raise InvalidStrategyError('Expected {} strategies, got {}'.format(
            game.g, len(profile)))
    for i, strategy in enumerate(profile):
        try:
            strategy.validate(game.supporters_of(i), game.l, game.frame.m)
        except InvalidStrategyError as err:
            raise InvalidStrategyError('Party {}: {}'.format(i, err))


def _sum_tallies(game, strategies):
    total = [0] * game.frame.m
    for strategy in strategies:
        for c, y in enumerate(strategy.tallies(game.frame.m)):
            total[c] += y
    return total


def _outcome_of(game, tallies):
    ws = threshold_winners('lv', tallies, game.k)
    return ws, tuple(pessimistic_utility(ws, party)
                     for party in game.parties.parties)


def game_outcome(game, profile):
    """LV winners of a strategy profile and the utility of every party."""
    _check_profile(game, profile)
    tallies = _sum_tallies(game, profile)
    ws, utilities = _outcome_of(game, tallies)
    return GameOutcome(ws, utilities, tuple(tallies))


def opponent_tallies(game, profile, i):
    return _sum_tallies(game, [s for j, s in enumerate(profile) if j != i])


# =============================================================================
# ---- Strategic analysis
# =============================================================================
def lq_strategy(game, i):
    """
    Lower-quota strategy: spread the party's votes evenly over its
    quota-many lowest id candidates.
    """
    quota = game.quota(i)
    size = len(game.candidates_of(i))
    if quota < game.l:
        raise PreconditionError(
            'Party {} has quota {} below the ballot limit {}'.format(
                i, quota, game.l))
    if quota > size:
        raise PreconditionError(
            'Party {} has quota {} but only {} candidates'.format(
                i, quota, size))
    supporters = game.supporters_of(i)
    chosen = game.candidates_of(i)[:quota]
    return realize_counts(_spread(chosen, supporters * game.l), supporters,
                          game.l)


def lq_profile(game):
    return [lq_strategy(game, i) for i in range(game.g)]


def best_response(game, i, opponents):
    """
    Best balanced spread of party i against fixed opponent tallies.

    Tries every support size t from l to the party size, spreading the
    party's votes over its t lowest id candidates. Returns the strategy
    and its utility; the smallest t wins ties.
    """
    own = game.candidates_of(i)
    if len(own) < game.l:
        raise PreconditionError(
            'Party {} has {} candidates, fewer than the ballot limit '
            '{}'.format(i, len(own), game.l))
    party = game.parties.parties[i]
    supporters = game.supporters_of(i)
    votes = supporters * game.l

    best = None
    for t in range(game.l, len(own) + 1):
        counts = _spread(own[:t], votes)
        tallies = list(opponents)
        for c, y in counts.items():
            tallies[c] += y
        ws = threshold_winners('lv', tallies, game.k)
        utility = pessimistic_utility(ws, party)
        if best is None or utility > best[1]:
            best = (counts, utility)
    logger.debug("Best response of party %d: %d seats", i, best[1])
    return realize_counts(best[0], supporters, game.l), best[1]


@dataclass(frozen=True)
class EquilibriumVerdict:
    holds: bool
    epsilon: int
    utilities: tuple
    best_utilities: tuple

    @property
    def gains(self):
        return tuple(b - u for u, b in zip(self.utilities,
                                           self.best_utilities))

    def to_dict(self):
        return {
            'holds': self.holds,
            'epsilon': self.epsilon,
            'utilities': list(self.utilities),
            'best_utilities': list(self.best_utilities),
            'gains': list(self.gains),
        }


def verify_equilibrium(game, profile, epsilon=0):
    """Whether no party gains more than epsilon seats by deviating."""
    outcome = game_outcome(game, profile)
    best = []
    for i in range(game.g):
        if len(game.candidates_of(i)) < game.l:
            # Only ballots reaching outside the party exist
            best.append(outcome.utilities[i])
            continue
        _, utility = best_response(game, i, opponent_tallies(game, profile, i))
        best.append(max(utility, outcome.utilities[i]))
    verdict = EquilibriumVerdict(
        holds=all(b - u <= epsilon
                  for u, b in zip(outcome.utilities, best)),
        epsilon=epsilon,
        utilities=outcome.utilities,
        best_utilities=tuple(best),
    )
    return verdict


def quota_gap(game):
    """Seats left over once every party got its lower quota."""
    return game.k - sum(game.quota(i) for i in range(game.g))


# =============================================================================
# ---- Serialization
# =============================================================================
def profile_to_dict(profile):
    return {
        'strategies': [[[sorted(ballot), mult] for ballot, mult in s.pairs]
                       for s in profile],
    }


def profile_from_dict(doc):
    """Strategy profile from {"strategies": [[[ids], multiplicity], ...]}."""
    if not isinstance(doc, dict) or 'strategies' not in doc:
        raise SchemaError('/strategies', 'a strategy profile is required')
    strategies = doc['strategies']
    if not isinstance(strategies, list):
        raise SchemaError('/strategies', 'expected one list per party')
    profile = []
    for i, pairs in enumerate(strategies):
        pointer = '/strategies/{}'.format(i)
        if not isinstance(pairs, list):
            raise SchemaError(pointer, 'expected a list of pairs')
        parsed = []
        for j, pair in enumerate(pairs):
            where = '{}/{}'.format(pointer, j)
            if (not isinstance(pair, list) or len(pair) != 2
                    or not isinstance(pair[0], list)
                    or isinstance(pair[1], bool)
                    or not isinstance(pair[1], int)):
                raise SchemaError(where, 'expected [[ids], multiplicity]')
            ballot = pair[0]
            if any(isinstance(c, bool) or not isinstance(c, int)
                   for c in ballot):
                raise SchemaError(where + '/0', 'expected candidate ids')
            if len(set(ballot)) != len(ballot):
                raise SchemaError(where + '/0', 'duplicate candidate ids')
            parsed.append((ballot, pair[1]))
        profile.append(PartyStrategy.from_pairs(parsed))
    return profile
