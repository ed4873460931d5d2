# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Cross-checks of the fast code paths against exhaustive search.
"""

# Standard library imports
from itertools import combinations

# Third party imports
import numpy as np
import pytest

# Local imports
from limvote.axioms.checks import check_ejr, check_jr, check_pjr
from limvote.election.model import Election, ElectionFrame
from limvote.election.structure import is_laminar
from limvote.games.lvgame import LVGame, best_response
from limvote.oracle.bruteforce import (
    OracleBudget, dominates, oracle_argmax, oracle_axiom_holds,
    oracle_best_response, oracle_is_laminar, oracle_pareto_dominator)
from limvote.rules.winners import RULES, limited_rule, lv_winners, winners
from limvote.utils.errors import BudgetExceededError, UnknownRuleError
from limvote.utils.iofuncs import load_fixture


@pytest.mark.parametrize('name, rule', [
    ('limited_pav', 'cc'),
    ('limited_pav', 'pav'),
    ('lost_voter', 'av'),
    ('lost_voter', 'sav'),
    ('pav_above_one', 'lcc'),
    ('pav_general', 'pav'),
])
def test_argmax_matches_winners(name, rule):
    """Exhaustive search agrees with the winner sets."""
    frame = load_fixture(name).frame
    fast = winners(frame, rule)
    slow = oracle_argmax(frame, rule)
    assert fast.score == slow.score
    assert set(fast) == set(slow)


def random_election(rng):
    n = int(rng.integers(1, 7))
    m = int(rng.integers(2, 9))
    k = int(rng.integers(1, m + 1))
    l = int(rng.integers(1, k + 1))
    approvals, ballots = [], []
    for _ in range(n):
        row = set(np.flatnonzero(rng.random(m) < 0.4).tolist())
        row.add(int(rng.integers(m)))
        approvals.append(row)
        ballots.append(set(rng.permutation(sorted(row))[:l].tolist()))
    return Election(ElectionFrame(n, m, k, l, approvals), ballots)


def test_random_elections_match_oracle():
    """Every rule agrees with exhaustive search on small elections."""
    rng = np.random.default_rng(2024)
    for _ in range(200):
        e = random_election(rng)
        for rule in RULES:
            if rule == 'lv':
                slow = oracle_argmax(e, 'lv')
            elif rule in ('lpav', 'lsav'):
                slow = oracle_argmax(e.ballot_frame, rule[1:])
            else:
                slow = oracle_argmax(e.frame, rule)
            fast = winners(e, rule)
            assert fast.score == slow.score, rule
            for w in combinations(range(e.m), e.k):
                assert (w in fast) == (w in slow), (rule, w)


def test_argmax_lv_and_limited_rules():
    """Test exhaustive search of LV and limited rules."""
    e = load_fixture('lost_voter').election
    assert set(oracle_argmax(e, 'lv')) == set(lv_winners(e))
    e = load_fixture('limited_pav_parties').election
    assert set(oracle_argmax(e.ballot_frame, 'pav')) == set(
        limited_rule(e, 'pav'))
    with pytest.raises(UnknownRuleError):
        oracle_argmax(e.frame, 'lv')


def test_oracle_budget():
    """The oracle refuses to enumerate too many committees."""
    frame = load_fixture('limited_pav').frame
    with pytest.raises(BudgetExceededError):
        oracle_argmax(frame, 'cc', OracleBudget(max_subsets=10))
    with pytest.raises(ValueError):
        OracleBudget(max_lattice=0)


def test_pareto_dominated_lv_committee():
    """Test the committee dominating the LV committee."""
    e = load_fixture('pareto_dominated').election
    committee = lv_winners(e).first()
    assert committee == frozenset(range(5))
    assert oracle_pareto_dominator(e, committee) == frozenset({0, 1, 2, 3, 7})
    assert dominates(e.frame, range(5, 10), committee)
    assert not dominates(e.frame, committee, committee)


@pytest.mark.parametrize('name', [
    'laminar_broadcast', 'laminar_failure', 'lost_voter', 'unpopular_order',
    'laminar_resolute', 'laminar_tied'])
def test_laminar_detection(name):
    """Exhaustive laminar recognition agrees with the tree."""
    frame = load_fixture(name).frame
    assert oracle_is_laminar(frame) == is_laminar(frame)


@pytest.mark.parametrize('approvals, k, committee', [
    ([{0, 1, 2}, {0, 1, 3}, {4}, {5}], 4, {2, 3, 4, 5}),
    ([{0, 1}, {0, 1}, {0, 2}, {3}], 2, {2, 3}),
    ([{0, 1}, {0, 1}, {0, 2}, {3}], 2, {0, 3}),
])
def test_axioms_match_search(approvals, k, committee):
    """Exhaustive axiom checks agree with the checkers."""
    frame = ElectionFrame(len(approvals), 6, k, 1, approvals)
    for axiom, check in (('jr', check_jr), ('pjr', check_pjr),
                         ('ejr', check_ejr)):
        assert (oracle_axiom_holds(frame, committee, axiom)
                == check(frame, committee).holds), axiom


def test_axioms_match_party_list():
    """Test axiom agreement on a party-list frame."""
    frame = load_fixture('jr_failure').frame
    for committee in ({3, 4, 5, 6}, {0, 3, 4, 6}):
        for axiom, check in (('jr', check_jr), ('pjr', check_pjr),
                             ('ejr', check_ejr)):
            assert (oracle_axiom_holds(frame, committee, axiom)
                    == check(frame, committee).holds)


def random_frame(rng, templates=None):
    """Nonempty approval sets, drawn from `templates` when given."""
    n = int(rng.integers(1, 7))
    m = int(rng.integers(2, 7))
    k = int(rng.integers(1, min(m, 3) + 1))
    approvals = []
    for _ in range(n):
        if templates:
            row = set(templates[int(rng.integers(len(templates)))])
        else:
            row = set(np.flatnonzero(rng.random(m) < 0.4).tolist())
            row.add(int(rng.integers(m)))
        approvals.append({c % m for c in row})
    return ElectionFrame(n, m, k, 1, approvals)


def test_random_laminar_detection():
    """Laminar recognition agrees with exhaustive search."""
    rng = np.random.default_rng(17)
    templates = [{0, 1}, {0, 1, 2}, {3}, {3, 4}, {5}, {0, 1, 2, 5}]
    found = set()
    for trial in range(300):
        frame = random_frame(rng, templates if trial % 2 else None)
        laminar = is_laminar(frame)
        assert laminar == oracle_is_laminar(frame)
        found.add(laminar)
    assert found == {True, False}


def _witness_violates(frame, committee, verdict):
    w = frozenset(committee)
    witness = verdict.witness
    voters, level = witness.voters, witness.level
    approvals = [frame.approvals[i] for i in voters]
    common = frozenset.intersection(*approvals)
    assert len(voters) * frame.k >= level * frame.n
    assert frozenset(witness.candidates) == common
    assert len(common) >= level
    if verdict.axiom == 'jr':
        return level == 1 and not any(a & w for a in approvals)
    if verdict.axiom == 'pjr':
        return len(frozenset().union(*approvals) & w) < level
    return all(len(a & w) < level for a in approvals)


def test_random_axioms_match_search():
    """JR, PJR and EJR agree with exhaustive search on small elections."""
    rng = np.random.default_rng(29)
    failures = 0
    for _ in range(300):
        frame = random_frame(rng)
        committee = frozenset(
            rng.choice(frame.m, size=frame.k, replace=False).tolist())
        verdicts = {}
        for axiom, check in (('jr', check_jr), ('pjr', check_pjr),
                             ('ejr', check_ejr)):
            verdict = check(frame, committee)
            assert verdict.holds == oracle_axiom_holds(frame, committee,
                                                       axiom), axiom
            if not verdict.holds:
                failures += 1
                assert _witness_violates(frame, committee, verdict), axiom
            verdicts[axiom] = verdict.holds
        # EJR implies PJR implies JR
        assert verdicts['ejr'] <= verdicts['pjr'] <= verdicts['jr']
    assert failures > 0


def test_axiom_oracle_limits():
    """Test the limits of the exhaustive axiom check."""
    frame = ElectionFrame(13, 2, 1, 1, [{0}] * 13)
    with pytest.raises(BudgetExceededError):
        oracle_axiom_holds(frame, {0}, 'jr')
    with pytest.raises(UnknownRuleError):
        oracle_axiom_holds(load_fixture('jr_failure').frame, {0, 1, 2, 3},
                           'xjr')


@pytest.mark.parametrize('opponents, party, expected', [
    ([0, 0, 0, 1, 0, 0], 0, 2),
    ([1, 2, 0, 0, 0, 0], 1, 1),
])
def test_best_response_matches_oracle(opponents, party, expected):
    """The best response matches exhaustive search."""
    game = LVGame.from_parties([3, 3], [3, 1], 3, 1)
    _, utility = best_response(game, party, opponents)
    assert utility == expected
    assert oracle_best_response(game, party, opponents) == expected


def random_tiny_game(rng):
    """A game with at most six voters and eight candidates."""
    l = int(rng.integers(1, 3))
    g = int(rng.integers(1, 4))
    supporters = [int(x) for x in rng.integers(1, 3, size=g)]
    sizes = [int(x) for x in rng.integers(l, 5, size=g)]
    while sum(sizes) > 8:
        sizes[int(np.argmax(sizes))] -= 1
        if min(sizes) < l:
            return None
    k = int(rng.integers(l, min(4, sum(sizes)) + 1))
    extra = int(rng.integers(0, 8 - sum(sizes) + 1))
    return LVGame.from_parties(sizes, supporters, k, l, extra)


def random_opponents(rng, game, i):
    """Tallies of voters filling their ballots inside their own party."""
    tallies = [0] * game.frame.m
    for j in range(game.g):
        if j == i:
            continue
        own = game.candidates_of(j)
        for _ in range(game.supporters_of(j)):
            for c in rng.choice(own, size=game.l, replace=False):
                tallies[int(c)] += 1
    return tallies


def test_random_best_responses_match_oracle():
    """The best response matches exhaustive search on tiny games."""
    rng = np.random.default_rng(41)
    checked = 0
    while checked < 100:
        game = random_tiny_game(rng)
        if game is None:
            continue
        i = int(rng.integers(game.g))
        opponents = random_opponents(rng, game, i)
        _, utility = best_response(game, i, opponents)
        assert utility == oracle_best_response(game, i, opponents)
        checked += 1


def test_best_response_oracle_budget():
    """The best-response oracle respects its budget."""
    game = LVGame.from_frame(load_fixture('two_party_game').frame)
    with pytest.raises(BudgetExceededError):
        oracle_best_response(game, 0, [0] * 12, OracleBudget(max_lattice=5))


if __name__ == "__main__":
    pytest.main()
