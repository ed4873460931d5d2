# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Tests for the strategic LV game.
"""

# Standard library imports
from itertools import islice

# Third party imports
import numpy as np
import pytest

# Local imports
from limvote.axioms.checks import check_lower_quota
from limvote.election.model import ElectionFrame
from limvote.games.lvgame import (
    LVGame, PartyStrategy, best_response, game_outcome, lq_profile,
    lq_strategy, opponent_tallies, profile_from_dict, profile_to_dict,
    quota_gap, realize_counts, validate_vote_counts, verify_equilibrium)
from limvote.utils.errors import (
    InvalidStrategyError, NotPartyListError, PreconditionError, SchemaError)
from limvote.utils.iofuncs import fixture_path, load_fixture, load_json


# =============================================================================
# ---- Fixtures
# =============================================================================
@pytest.fixture
def two_party_game():
    """Two parties of six candidates and six supporters, k=6, l=2."""
    return LVGame.from_frame(load_fixture('two_party_game').frame)


@pytest.fixture
def spread_profile():
    data, error = load_json(fixture_path('spread_profile'))
    assert error is None
    return profile_from_dict(data)


# =============================================================================
# ---- Tests
# =============================================================================
def test_game_basics(two_party_game):
    """Test parties and supporters of a game."""
    game = two_party_game
    assert (game.g, game.n, game.k, game.l) == (2, 12, 6, 2)
    assert two_party_game.candidates_of(1) == (6, 7, 8, 9, 10, 11)
    assert two_party_game.supporters_of(0) == 6
    assert two_party_game.quota(0) == 3
    assert quota_gap(two_party_game) == 0


def test_game_preconditions():
    """Games need a party-list frame with nonempty parties."""
    with pytest.raises(PreconditionError):
        LVGame.from_frame(ElectionFrame(2, 2, 1, 1, [{0}, set()]))
    with pytest.raises(NotPartyListError):
        LVGame.from_frame(load_fixture('lost_voter').frame)


def test_lq_strategy(two_party_game):
    """The lower-quota strategy spreads votes over quota candidates."""
    strategy = lq_strategy(two_party_game, 0)
    assert strategy.pairs == ((frozenset({0, 1}), 2),
                              (frozenset({0, 2}), 2),
                              (frozenset({1, 2}), 2))
    assert strategy.voters == 6
    assert strategy.tallies(12)[:4] == [4, 4, 4, 0]


def test_lq_is_nash(two_party_game):
    """The lower-quota profile of two equal parties is a Nash equilibrium."""
    profile = lq_profile(two_party_game)
    outcome = game_outcome(two_party_game, profile)
    assert outcome.utilities == (3, 3)
    verdict = verify_equilibrium(two_party_game, profile)
    assert verdict.holds
    assert verdict.gains == (0, 0)


def test_lq_strategy_preconditions():
    """The party quota must lie between l and the party size."""
    # The larger party's quota is below the ballot limit
    game = LVGame.from_parties([2, 2], [1, 3], 2, 2)
    with pytest.raises(PreconditionError):
        lq_strategy(game, 0)
    # Quota larger than the party
    game = LVGame.from_parties([1, 3], [3, 1], 4, 1)
    with pytest.raises(PreconditionError):
        lq_strategy(game, 0)


def test_spread_outcome(two_party_game, spread_profile):
    """Test the outcome of a spread profile."""
    outcome = game_outcome(two_party_game, spread_profile)
    assert outcome.utilities == (2, 4)
    assert outcome.winners.locked == frozenset({0, 1})
    assert outcome.winners.slots == 4


def test_best_response(two_party_game, spread_profile):
    """Spreading over four candidates wins four seats."""
    opponents = opponent_tallies(two_party_game, spread_profile, 0)
    assert opponents[6:] == [2] * 6
    strategy, utility = best_response(two_party_game, 0, opponents)
    assert utility == 4
    assert strategy.pairs == ((frozenset({0, 1}), 3),
                              (frozenset({2, 3}), 3))

    verdict = verify_equilibrium(two_party_game, spread_profile)
    assert not verdict.holds
    assert verdict.gains == (2, 0)
    assert verify_equilibrium(two_party_game, spread_profile, 2).holds


def test_epsilon_equilibrium():
    """The lower-quota profile is a 2-Nash equilibrium here."""
    game = LVGame.from_frame(load_fixture('quota_gap_game').frame)
    profile = lq_profile(game)
    assert quota_gap(game) == 2
    verdict = verify_equilibrium(game, profile, 2)
    assert verdict.holds
    assert verdict.utilities == (4, 2, 2)
    assert verdict.gains == (2, 2, 2)
    assert not verify_equilibrium(game, profile, 1).holds
    assert verdict.to_dict()['best_utilities'] == [6, 4, 4]


def random_lq_games(seed, count):
    """Games where every party's quota reaches the ballot limit."""
    rng = np.random.default_rng(seed)
    games = []
    while len(games) < count:
        g = int(rng.integers(1, 5))
        supporters = [int(x) for x in rng.integers(1, 11, size=g)]
        n = sum(supporters)
        l = int(rng.integers(1, 3))
        k = int(rng.integers(l, 11))
        quotas = [k * s // n for s in supporters]
        if min(quotas) < l:
            continue
        sizes = [q + int(rng.integers(0, 4)) for q in quotas]
        extra = max(int(rng.integers(0, 4)), k - sum(sizes))
        games.append(LVGame.from_parties(sizes, supporters, k, l, extra))
    return games


def test_lq_profiles_on_random_games():
    """Lower-quota profiles on random games."""
    tight = 0
    for game in random_lq_games(7, 500):
        profile = lq_profile(game)
        outcome = game_outcome(game, profile)
        chosen = frozenset().union(*(game.candidates_of(i)[:game.quota(i)]
                                     for i in range(game.g)))
        assert outcome.winners.contains_subset(chosen)
        for i in range(game.g):
            assert outcome.utilities[i] >= game.quota(i)
        for committee in islice(outcome.winners, 20):
            assert check_lower_quota(game.parties, game.n, game.k,
                                     committee).holds

        gap = quota_gap(game)
        assert verify_equilibrium(game, profile, gap).holds
        if gap < 1:
            continue
        # A party that can fill every free seat gains exactly the gap
        for i in range(game.g):
            seats = game.quota(i) + gap
            if (len(game.candidates_of(i)) >= seats
                    and game.supporters_of(i) * game.l >= seats
                    and outcome.utilities[i] == game.quota(i)):
                assert not verify_equilibrium(game, profile, gap - 1).holds
                tight += 1
                break
    assert tight > 0


def test_best_response_small_party():
    """Best responses need a party large enough to fill ballots."""
    game = LVGame.from_parties([1, 4], [1, 1], 2, 2)
    with pytest.raises(PreconditionError):
        best_response(game, 0, [0] * 5)


def test_invalid_profiles(two_party_game):
    """Invalid strategies are rejected."""
    good = lq_strategy(two_party_game, 0)
    with pytest.raises(InvalidStrategyError):
        game_outcome(two_party_game, [good])
    short = PartyStrategy.from_pairs([([6, 7], 5)])
    with pytest.raises(InvalidStrategyError):
        game_outcome(two_party_game, [good, short])
    wide = PartyStrategy.from_pairs([([6, 7, 8], 6)])
    with pytest.raises(InvalidStrategyError):
        game_outcome(two_party_game, [good, wide])
    outside = PartyStrategy.from_pairs([([6, 12], 6)])
    with pytest.raises(InvalidStrategyError):
        game_outcome(two_party_game, [good, outside])


def test_vote_counts():
    """Test vote count validation."""
    assert validate_vote_counts({0: 2, 1: 2, 2: 0}, 2, 2) == {0: 2, 1: 2}
    with pytest.raises(InvalidStrategyError):
        validate_vote_counts({0: 3, 1: 1}, 2, 2)
    with pytest.raises(InvalidStrategyError):
        validate_vote_counts({0: 2, 1: 1}, 2, 2)
    with pytest.raises(InvalidStrategyError):
        validate_vote_counts({0: -1, 1: 3}, 1, 2)
    with pytest.raises(InvalidStrategyError):
        validate_vote_counts({0: 4}, 2, 2)


def test_realize_counts():
    """Vote counts are realized as ballots."""
    strategy = realize_counts({0: 3, 1: 2, 2: 1}, 3, 2)
    assert strategy.voters == 3
    assert strategy.tallies(3) == [3, 2, 1]
    for ballot, _ in strategy.pairs:
        assert len(ballot) == 2


def test_profile_serialization(spread_profile):
    """Test profile documents."""
    doc = profile_to_dict(spread_profile)
    assert doc['strategies'][0] == [[[0, 1], 6]]
    assert profile_from_dict(doc) == spread_profile


@pytest.mark.parametrize('doc, pointer', [
    ({}, '/strategies'),
    ({'strategies': {}}, '/strategies'),
    ({'strategies': [3]}, '/strategies/0'),
    ({'strategies': [[[[0, 1], True]]]}, '/strategies/0/0'),
    ({'strategies': [[[[0, 'a'], 1]]]}, '/strategies/0/0/0'),
    ({'strategies': [[[[0, 0], 1]]]}, '/strategies/0/0/0'),
])
def test_profile_schema_errors(doc, pointer):
    """Bad profile documents give a pointer to the problem."""
    with pytest.raises(SchemaError) as excinfo:
        profile_from_dict(doc)
    assert excinfo.value.pointer == pointer


if __name__ == "__main__":
    pytest.main()
