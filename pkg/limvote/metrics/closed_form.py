# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Closed forms on broadcasted party-list elections.

These only need the party sizes and supporter counts. Parties are
taken in the order of the PartyStructure (most supporters first).
"""

# Standard library imports
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
import logging

# Local imports
from limvote.utils.errors import InvalidElectionError, PreconditionError
from limvote.utils.misc import harmonic


logger = logging.getLogger(__name__)


def _check_ballot_room(structure, count, l):
    """The first `count` parties must have at least l candidates."""
    for i in range(count):
        if structure.sizes[i] < l:
            raise PreconditionError(
                'Party {} has {} candidates, fewer than the ballot limit '
                '{}'.format(i, structure.sizes[i], l))


def _av_threshold(structure, k):
    """
    AV tallies on a party-list profile, party by party.

    Returns (locked parties, tied parties, open slots, cutoff tally).
    Unaffiliated and unapproved candidates count as tally 0.
    """
    tallies = sorted((n for n, size in zip(structure.supporters,
                                           structure.sizes)
                      for _ in range(size)), reverse=True)
    cutoff = tallies[k - 1] if len(tallies) >= k else 0
    locked = [i for i, n in enumerate(structure.supporters) if n > cutoff]
    tied = [i for i, n in enumerate(structure.supporters) if n == cutoff]
    slots = k - sum(structure.sizes[i] for i in locked)
    return locked, tied, slots, cutoff


def _lv_cc_numerator(structure, k, l):
    top = min(ceil(k / l), structure.g)
    _check_ballot_room(structure, top, l)
    return sum(structure.supporters[:top])


def closed_form_cc_improvement_bpl(structure, k, l, reading='prefix'):
    """
    CC improvement of LV over AV from the party structure alone.

    reading='prefix' takes the AV side as the supporters of the largest
    prefix of parties that fits into k seats, or of the first party when
    it has more than k candidates. reading='exact' also counts the
    parties AV only partially fills.
    """
    numerator = _lv_cc_numerator(structure, k, l)

    if reading == 'prefix':
        s, seats = 0, 0
        for size in structure.sizes:
            if seats + size > k:
                break
            seats += size
            s += 1
        # A first party larger than k fills every AV seat on its own
        denominator = sum(structure.supporters[:max(s, 1)])
    elif reading == 'exact':
        locked, tied, slots, cutoff = _av_threshold(structure, k)
        denominator = (sum(structure.supporters[i] for i in locked)
                       + cutoff * min(slots, len(tied)))
    else:
        raise ValueError('Unknown reading: {}'.format(reading))

    return Fraction(numerator, denominator)


@dataclass(frozen=True)
class Divergence:
    prefix: Fraction
    exact: Fraction

    @property
    def quarantined(self):
        return self.prefix != self.exact


def closed_form_divergence(structure, k, l):
    """Both readings of the CC closed form."""
    exact = closed_form_cc_improvement_bpl(structure, k, l, 'exact')
    prefix = closed_form_cc_improvement_bpl(structure, k, l, 'prefix')
    result = Divergence(prefix, exact)
    if result.quarantined:
        logger.debug("Closed form readings diverge: %s vs %s", prefix, exact)
    return result


def _av_max_pav(structure, k):
    """Best PAV score among AV committees on a party-list profile."""
    locked, tied, slots, cutoff = _av_threshold(structure, k)
    total = sum(structure.supporters[i] * harmonic(structure.sizes[i])
                for i in locked)
    if not cutoff:
        return total

    # Tied parties have equal supporters, so spreading slots evenly wins
    filled = {i: 0 for i in tied}
    for _ in range(slots):
        open_parties = [i for i in tied if filled[i] < structure.sizes[i]]
        if not open_parties:
            break
        target = min(open_parties, key=lambda i: (filled[i], i))
        filled[target] += 1
    return total + sum(cutoff * harmonic(x) for x in filled.values())


def closed_form_pav_improvement_bpl(structure, k, l):
    """
    PAV improvement of LV over AV when the largest party fills k seats.

    With fewer than ceil(k/l) parties the seats nobody votes for are
    assumed to go to candidates nobody approves, so the frame needs that
    many free candidates for the value to match the direct computation.
    """
    if structure.sizes[0] < k:
        raise PreconditionError(
            'The largest party has {} candidates, fewer than k={}'.format(
                structure.sizes[0], k))
    _check_ballot_room(structure, min(ceil(k / l), structure.g), l)

    full, rest = divmod(k, l)
    numerator = sum(n * harmonic(l)
                    for n in structure.supporters[:min(full, structure.g)])
    if rest and full < structure.g:
        numerator += structure.supporters[full] * harmonic(rest)
    return Fraction(numerator) / _av_max_pav(structure, k)


def cc_guarantee_bpl(k, l=None):
    """
    Worst CC ratio of LV against the optimum over broadcasted party-list
    elections; without l, the minimum over all ballot limits.
    """
    if l is None:
        return Fraction(1, k)
    if not 1 <= l <= k:
        raise InvalidElectionError(
            'Ballot limit must satisfy 1 <= l <= k, got l={}, k={}'.format(
                l, k))
    return Fraction(ceil(k / l), k)
