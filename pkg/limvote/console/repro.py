# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Replay the bundled fixtures and compare with their known values.

Every check returns the computed value as a string, so expected and
computed values can be listed side by side.
"""

# Standard library imports
import logging

# Local imports
from limvote.axioms.checks import check_jr, check_laminar_proportionality
from limvote.console.commands import CommandResult
from limvote.election.structure import (
    detect_party_structure, is_broadcasted_laminar, is_consistent_with_order)
from limvote.games.lvgame import (
    LVGame, game_outcome, lq_profile, profile_from_dict, quota_gap,
    verify_equilibrium)
from limvote.metrics.closed_form import (
    cc_guarantee_bpl, closed_form_cc_improvement_bpl)
from limvote.metrics.families import worst_case_family
from limvote.metrics.improvement import (
    av_improvement, cc_guarantee_ratio, cc_improvement, laminar_cc_check,
    pav_improvement)
from limvote.oracle.bruteforce import dominates, oracle_pareto_dominator
from limvote.rules.scores import av_score, cc_score, pav_score
from limvote.rules.winners import (
    limited_rule, lv_winners, max_cc_score, sav_winners)
from limvote.utils.iofuncs import fixture_path, load_fixture, load_json
from limvote.utils.misc import format_fraction


logger = logging.getLogger(__name__)


def _election(name):
    return load_fixture(name).require_election()


def _fractions(*values):
    return ' '.join(format_fraction(v) for v in values)


# ---- Checks
# -----------------------------------------------------------------------------
def shared_block_scores():
    e = _election('shared_block')
    return _fractions(av_score(e.frame, {0, 1, 2, 3}),
                      av_score(e.frame, {4, 5, 6, 7}))


def shared_block_av_improvement():
    return format_fraction(av_improvement(_election('shared_block')).value)


def lost_voter_cc_improvement():
    return format_fraction(cc_improvement(_election('lost_voter')).value)


def lost_voter_witness():
    return str(detect_party_structure(_election('lost_voter').frame).witness)


def broadcasting_orders():
    left = load_fixture('laminar_broadcast')
    right = load_fixture('laminar_unordered')
    return '{} {}'.format(
        is_broadcasted_laminar(left.require_election(), left.order),
        is_consistent_with_order(right.require_election(), right.order))


def pav_below_one():
    e = _election('pav_below_one')
    report = pav_improvement(e)
    return _fractions(report.lv_committee_score, report.reference_score,
                      report.value)


def pav_above_one():
    e = _election('pav_above_one')
    report = pav_improvement(e)
    return _fractions(report.lv_committee_score, report.reference_score,
                      report.value)


def pareto_dominated():
    e = _election('pareto_dominated')
    committee = lv_winners(e).first()
    found = oracle_pareto_dominator(e, committee)
    return '{} {}'.format(found is not None and dominates(e.frame, found,
                                                          committee),
                          dominates(e.frame, range(5, 10), committee))


def cc_optimum():
    return format_fraction(max_cc_score(_election('limited_pav').frame))


def unpopular_order():
    doc = load_fixture('unpopular_order')
    report = laminar_cc_check(doc.require_election(), doc.order)
    return '{} {}'.format(format_fraction(report.value), bool(report.notes))


def jr_failure():
    e = _election('jr_failure')
    verdict = check_jr(e.frame, lv_winners(e).first())
    return '{} {}'.format(verdict.holds, list(verdict.witness.voters))


def laminar_failure():
    e = _election('laminar_failure')
    verdict = check_laminar_proportionality(e, lv_winners(e).first())
    return str(verdict.holds)


def spread_utilities():
    game = LVGame.from_frame(load_fixture('two_party_game').frame)
    data, _ = load_json(fixture_path('spread_profile'))
    return str(list(game_outcome(game, profile_from_dict(data)).utilities))


def three_parties():
    e = _election('three_parties')
    structure = detect_party_structure(e.frame)
    return _fractions(
        closed_form_cc_improvement_bpl(structure, e.k, e.l),
        cc_improvement(e).value)


def two_party_nash():
    game = LVGame.from_frame(load_fixture('two_party_game').frame)
    return '{} {}'.format(quota_gap(game),
                          verify_equilibrium(game, lq_profile(game)).holds)


def quota_gap_nash():
    game = LVGame.from_frame(load_fixture('quota_gap_game').frame)
    profile = lq_profile(game)
    return '{} {} {}'.format(quota_gap(game),
                             verify_equilibrium(game, profile, 2).holds,
                             verify_equilibrium(game, profile, 1).holds)


def limited_pav_parties():
    e = _election('limited_pav_parties')
    committee = limited_rule(e, 'pav').first()
    return '{} {}'.format(len(committee & {0, 1, 2}),
                          len(committee & {3, 4}))


def limited_sav():
    e = _election('limited_sav')
    return '{} {}'.format(cc_score(e.frame, limited_rule(e, 'sav').first()),
                          cc_score(e.frame, sav_winners(e.frame).first()))


def pav_single_voter():
    return format_fraction(pav_improvement(_election('pav_general')).value)


def cc_guarantee_family():
    return format_fraction(cc_guarantee_ratio(
        worst_case_family('cc-guarantee', 1000, 4, 2)).value)


def cc_guarantee_bound():
    return format_fraction(cc_guarantee_bpl(4, 2))


def cc_guarantee_bpl_family():
    return format_fraction(cc_guarantee_ratio(
        worst_case_family('cc-guarantee-bpl', 1000, 4, 2)).value)


def av_committee_pav():
    e = _election('pav_below_one')
    return format_fraction(pav_score(e.frame, {1, 2, 3, 4}))


CHECKS = [
    ('shared-block-av-scores', '4 24', shared_block_scores),
    ('shared-block-av-improvement', '1/6', shared_block_av_improvement),
    ('lost-voter-cc-improvement', '5/6', lost_voter_cc_improvement),
    ('lost-voter-not-party-list', '(0, 1)', lost_voter_witness),
    ('broadcasting-orders', 'True False', broadcasting_orders),
    ('pav-below-one', '15/2 47/6 45/47', pav_below_one),
    ('av-committee-pav', '47/6', av_committee_pav),
    ('pav-above-one', '20/3 25/4 16/15', pav_above_one),
    ('pareto-dominated', 'True True', pareto_dominated),
    ('cc-optimum', '6', cc_optimum),
    ('unpopular-order', '4/5 True', unpopular_order),
    ('jr-failure', 'False [0, 1]', jr_failure),
    ('laminar-failure', 'False', laminar_failure),
    ('spread-utilities', '[2, 4]', spread_utilities),
    ('three-parties-closed-form', '9/4 9/4', three_parties),
    ('two-party-nash', '0 True', two_party_nash),
    ('quota-gap-nash', '2 True False', quota_gap_nash),
    ('limited-pav-parties', '2 1', limited_pav_parties),
    ('limited-sav', '11 1', limited_sav),
    ('pav-single-voter', '22/25', pav_single_voter),
    ('cc-guarantee-family', '1/251', cc_guarantee_family),
    ('cc-guarantee-bound', '1/2', cc_guarantee_bound),
    ('cc-guarantee-bpl-family', '1001/2001', cc_guarantee_bpl_family),
]


def run_checks(checks=CHECKS):
    """Run every check; errors count as mismatches."""
    results = []
    for name, expected, check in checks:
        try:
            computed = check()
        except Exception as err:
            logger.debug("Check %s raised", name, exc_info=True)
            computed = 'error: {}: {}'.format(type(err).__name__, err)
        passed = computed == expected
        if not passed:
            logger.warning("%s: expected %s, computed %s", name, expected,
                           computed)
        results.append({'item': name, 'expected': expected,
                        'computed': computed, 'passed': passed})
    return results


def cmd_repro(args):
    results = run_checks()
    failed = sum(not r['passed'] for r in results)
    document = {'items': results, 'passed': len(results) - failed,
                'failed': failed}
    return CommandResult(document, results, 2 if failed else 0)
