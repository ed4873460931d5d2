# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
How LV committees compare with AV committees (and with the optimum).

In irresolute mode the worst LV committee is compared with the best AV
committee. In resolute mode one committee of each rule is picked with a
tie-break policy, LV first, from the same random generator.
"""

# Standard library imports
from dataclasses import dataclass, field, replace
from fractions import Fraction
import logging

# Local imports
from limvote.election.structure import is_broadcasted_laminar
from limvote.rules.scores import av_score, cc_score, pav_score
from limvote.rules.winners import (
    TieBreakPolicy, av_winners, extreme_score, lv_winners, make_resolute,
    max_cc_score)
from limvote.utils.errors import (
    ConsistencyAlarm, UndefinedRatioError, UnknownRuleError)
from limvote.utils.misc import format_committee, format_fraction, to_decimal


logger = logging.getLogger(__name__)

METRICS = {
    'cc': cc_score,
    'pav': pav_score,
    'av': av_score,
}


@dataclass(frozen=True)
class ImprovementReport:
    metric: str
    value: Fraction
    lv_committee_score: Fraction
    reference_score: Fraction
    mode: str
    committees: dict = field(default_factory=dict)
    seed: object = None
    tie_breaks: int = 0
    notes: tuple = ()

    def to_dict(self):
        return {
            'metric': self.metric,
            'value': format_fraction(self.value),
            'decimal': to_decimal(self.value),
            'lv_committee_score': format_fraction(self.lv_committee_score),
            'reference_score': format_fraction(self.reference_score),
            'mode': self.mode,
            'committees': {rule: format_committee(c)
                           for rule, c in self.committees.items()},
            'seed': self.seed,
            'tie_breaks': self.tie_breaks,
            'notes': list(self.notes),
        }


def _ratio(metric, lv_value, reference):
    if not reference:
        raise UndefinedRatioError(
            '{} improvement is undefined: the reference committee scores '
            '0'.format(metric))
    return Fraction(lv_value) / Fraction(reference)


def improvement(election, metric, mode='irresolute', policy=None, rng=None):
    """
    Ratio between the metric on LV's committee and on AV's committee.

    Parameters
    ----------
    election: Election
    metric: str
        One of 'cc', 'pav' or 'av'.
    mode: str
        'irresolute' (worst LV over best AV) or 'resolute'.
    policy: TieBreakPolicy
        Used in resolute mode; lexicographic when missing.
    rng: numpy Generator
        Shared generator for random tie-breaks (resolute mode only).
    """
    if metric not in METRICS:
        raise UnknownRuleError('Unknown metric: {}'.format(metric))
    if mode == 'resolute':
        return resolute_improvements(election, (metric,), policy,
                                     rng)[metric]
    if mode != 'irresolute':
        raise UnknownRuleError('Unknown mode: {}'.format(mode))

    frame = election.frame
    score_fn = METRICS[metric]
    lv_value, lv_committee = extreme_score(lv_winners(election), frame,
                                           score_fn, 'min')
    reference, av_committee = extreme_score(av_winners(frame), frame,
                                            score_fn, 'max')
    return ImprovementReport(
        metric=metric,
        value=_ratio(metric, lv_value, reference),
        lv_committee_score=Fraction(lv_value),
        reference_score=Fraction(reference),
        mode=mode,
        committees={'lv': lv_committee, 'av': av_committee},
    )


def resolute_improvements(election, metrics=tuple(METRICS), policy=None,
                          rng=None):
    """
    Improvements of one resolute LV committee over one resolute AV
    committee, for several metrics at once.

    The LV committee is picked before the AV committee, from the same
    generator, so every metric compares the same pair.
    """
    unknown = [name for name in metrics if name not in METRICS]
    if unknown:
        raise UnknownRuleError('Unknown metric: {}'.format(unknown[0]))
    frame = election.frame
    lv_ws = lv_winners(election)
    av_ws = av_winners(frame)
    policy = policy or TieBreakPolicy()
    if policy.mode == 'random' and rng is None:
        rng = policy.rng()
    lv_committee = make_resolute(lv_ws, policy, rng)
    av_committee = make_resolute(av_ws, policy, rng)
    tie_breaks = sum(1 for ws in (lv_ws, av_ws) if not ws.is_resolute)

    reports = {}
    for name in metrics:
        score_fn = METRICS[name]
        lv_value = score_fn(frame, lv_committee)
        reference = score_fn(frame, av_committee)
        reports[name] = ImprovementReport(
            metric=name,
            value=_ratio(name, lv_value, reference),
            lv_committee_score=Fraction(lv_value),
            reference_score=Fraction(reference),
            mode='resolute',
            committees={'lv': lv_committee, 'av': av_committee},
            seed=policy.seed if policy.mode == 'random' else None,
            tie_breaks=tie_breaks,
        )
    return reports


def cc_improvement(election, mode='irresolute', policy=None, rng=None):
    return improvement(election, 'cc', mode, policy, rng)


def pav_improvement(election, mode='irresolute', policy=None, rng=None):
    return improvement(election, 'pav', mode, policy, rng)


def av_improvement(election, mode='irresolute', policy=None, rng=None):
    return improvement(election, 'av', mode, policy, rng)


def cc_guarantee_ratio(election, budget=None):
    """Worst LV committee against the best Chamberlin-Courant committee."""
    frame = election.frame
    lv_value, lv_committee = extreme_score(lv_winners(election), frame,
                                           cc_score, 'min')
    optimum = max_cc_score(frame, budget)
    return ImprovementReport(
        metric='cc-optimum',
        value=_ratio('cc-optimum', lv_value, optimum),
        lv_committee_score=Fraction(lv_value),
        reference_score=Fraction(optimum),
        mode='irresolute',
        committees={'lv': lv_committee},
    )


def laminar_cc_check(election, order):
    """
    CC improvement on a broadcasted laminar election.

    When LV and AV are resolute, every voter approves at least l
    candidates and the election is broadcasted laminar, the value is at
    least 1 and anything below raises ConsistencyAlarm. Otherwise the
    failing preconditions are listed in the report notes.
    """
    notes = []
    if not is_broadcasted_laminar(election, order):
        notes.append('not broadcasted laminar')
    if not lv_winners(election).is_resolute:
        notes.append('LV is not resolute')
    if not av_winners(election.frame).is_resolute:
        notes.append('AV is not resolute')
    if any(len(a) < election.l for a in election.approvals):
        notes.append('some voter approves fewer than l candidates')

    report = cc_improvement(election)
    report = replace(report, notes=tuple(notes))
    if not notes and report.value < 1:
        raise ConsistencyAlarm(
            'CC improvement {} < 1 on a resolute broadcasted laminar '
            'election'.format(format_fraction(report.value)))
    if notes:
        logger.debug("Laminar check preconditions fail: %s", notes)
    return report
