# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Tests for LV improvement metrics.
"""

# Standard library imports
from fractions import Fraction

# Third party imports
import pytest

# Local imports
from limvote.election.model import Election, ElectionFrame
from limvote.metrics.families import worst_case_family
from limvote.metrics.improvement import (
    av_improvement, cc_guarantee_ratio, cc_improvement, improvement,
    laminar_cc_check, pav_improvement, resolute_improvements)
from limvote.rules.winners import TieBreakPolicy
from limvote.utils.errors import UndefinedRatioError, UnknownRuleError
from limvote.utils.iofuncs import load_fixture


def _election(name):
    return load_fixture(name).require_election()


@pytest.mark.parametrize('name, metric, expected', [
    ('shared_block', 'av', Fraction(1, 6)),
    ('lost_voter', 'cc', Fraction(5, 6)),
    ('pav_below_one', 'pav', Fraction(45, 47)),
    ('pav_above_one', 'pav', Fraction(16, 15)),
    ('pav_general', 'pav', Fraction(22, 25)),
])
def test_fixture_improvements(name, metric, expected):
    """Test improvements of the bundled elections."""
    report = improvement(_election(name), metric)
    assert report.value == expected
    assert report.mode == 'irresolute'


def test_report_scores():
    """Reports carry both scores and the committees."""
    report = pav_improvement(_election('pav_below_one'))
    assert report.lv_committee_score == Fraction(15, 2)
    assert report.reference_score == Fraction(47, 6)
    data = report.to_dict()
    assert data['value'] == '45/47'
    assert data['committees']['lv'] == [0, 1, 2, 3]


def test_shared_block_worst_lv_committee():
    """The worst LV committee is used."""
    report = av_improvement(_election('shared_block'))
    assert report.lv_committee_score == 4
    assert report.reference_score == 24
    assert report.committees['lv'] == frozenset({0, 1, 2, 3})


def test_resolute_lex():
    """Both rules are resolute here, so every mode agrees."""
    reports = resolute_improvements(_election('lost_voter'))
    assert reports['cc'].value == Fraction(5, 6)
    assert reports['cc'].tie_breaks == 0
    assert reports['cc'].seed is None
    assert reports['av'].committees == {'av': frozenset({1, 2, 3, 4}),
                                        'lv': frozenset({0, 1, 2, 3})}
    assert cc_improvement(_election('lost_voter'), 'resolute').value == \
        Fraction(5, 6)


def test_resolute_random_shares_committees():
    """Random picks are shared between metrics."""
    e = _election('shared_block')
    policy = TieBreakPolicy('random', 11)
    reports = resolute_improvements(e, ('cc', 'av'), policy)
    assert reports['cc'].committees == reports['av'].committees
    assert reports['cc'].tie_breaks == 2
    assert reports['av'].seed == 11

    again = resolute_improvements(e, ('cc', 'av'), policy)
    assert again['av'].value == reports['av'].value


def test_undefined_ratio():
    """A zero denominator raises UndefinedRatioError."""
    frame = ElectionFrame(1, 2, 1, 1, [set()])
    election = Election(frame, [{0}])
    with pytest.raises(UndefinedRatioError):
        cc_improvement(election)


def test_unknown_metric_and_mode():
    """Unknown metrics and modes raise."""
    e = _election('lost_voter')
    with pytest.raises(UnknownRuleError):
        improvement(e, 'stv')
    with pytest.raises(UnknownRuleError):
        improvement(e, 'cc', 'sometimes')
    with pytest.raises(UnknownRuleError):
        resolute_improvements(e, ('cc', 'stv'))


def test_cc_guarantee_ratio_families():
    """Test the guarantee ratio on the worst-case families."""
    assert cc_guarantee_ratio(
        worst_case_family('cc-guarantee', 1000, 4, 2)).value == \
        Fraction(1, 251)
    assert cc_guarantee_ratio(
        worst_case_family('cc-guarantee-bpl', 1000, 4, 2)).value == \
        Fraction(1001, 2001)


def test_cc_guarantee_ratio_enumerated():
    """Test the guarantee ratio by enumeration."""
    report = cc_guarantee_ratio(_election('limited_pav'))
    assert report.reference_score == 6
    assert report.metric == 'cc-optimum'


def test_laminar_check_resolute():
    """Test the laminar check on a resolute laminar election."""
    doc = load_fixture('laminar_resolute')
    report = laminar_cc_check(doc.election, doc.order)
    assert report.notes == ()
    assert report.value == 1


def test_laminar_check_reports_preconditions():
    """Failing preconditions are reported as notes."""
    doc = load_fixture('laminar_tied')
    report = laminar_cc_check(doc.election, doc.order)
    assert report.value == Fraction(1, 2)
    assert report.notes == ('LV is not resolute', 'AV is not resolute')

    doc = load_fixture('unpopular_order')
    report = laminar_cc_check(doc.election, doc.order)
    assert report.value == Fraction(4, 5)
    assert 'not broadcasted laminar' in report.notes


if __name__ == "__main__":
    pytest.main()
