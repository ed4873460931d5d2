# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""Adversarial election families behind the guarantee results."""

# Standard library imports
from math import ceil

# Local imports
from limvote.election.model import Election, ElectionFrame
from limvote.generators.profiles import gen_party_list
from limvote.utils.errors import PreconditionError, UnknownRuleError


FAMILIES = ('av-guarantee', 'cc-guarantee', 'cc-guarantee-bpl')


def _av_guarantee(n, k, l):
    """
    k voters each approve their own candidate plus a shared block and
    vote for their own candidate; the other n - k voters approve only
    the shared block and vote for distinct members of it.
    """
    if l != 1:
        raise PreconditionError('The AV family needs l = 1')
    if n < k:
        raise PreconditionError('The AV family needs n >= k voters')
    shared = frozenset(range(k, k + max(k + 1, n - k)))
    approvals = [frozenset({i}) | shared for i in range(k)]
    approvals += [shared] * (n - k)
    ballots = [frozenset({i}) for i in range(k)]
    ballots += [frozenset({k + j}) for j in range(n - k)]
    m = k + len(shared)
    return Election(ElectionFrame(n, m, k, l, approvals), ballots)


def _cc_guarantee(x, k, l):
    """
    2k/l voters approve a k-block W and vote its l-blocks in pairs; x
    voters approve a block Y of l*x candidates and vote disjoint l-blocks
    of it.
    """
    if k < 2 or k % l:
        raise PreconditionError(
            'The CC family needs k >= 2 divisible by l, got k={}, '
            'l={}'.format(k, l))
    pairs = 2 * k // l
    w = frozenset(range(k))
    y = frozenset(range(k, k + l * x))
    approvals = [w] * pairs + [y] * x
    ballots = [frozenset(range((s // 2) * l, (s // 2 + 1) * l))
               for s in range(pairs)]
    ballots += [frozenset(range(k + j * l, k + (j + 1) * l))
                for j in range(x)]
    return Election(ElectionFrame(pairs + x, k + l * x, k, l, approvals),
                    ballots)


def _cc_guarantee_bpl(x, k, l):
    """k parties of l candidates; the first ceil(k/l) get one extra voter."""
    top = ceil(k / l)
    counts = [x + 1] * top + [x] * (k - top)
    election, _ = gen_party_list([l] * k, counts, k, l)
    return election


def worst_case_family(kind, size_param, k, l):
    """
    Member of an adversarial family.

    size_param is the number of voters for 'av-guarantee', the size of
    the poorly coordinated group for 'cc-guarantee' and the supporters
    per party for 'cc-guarantee-bpl'.
    """
    if size_param < 1:
        raise PreconditionError('The size parameter must be positive')
    builders = {
        'av-guarantee': _av_guarantee,
        'cc-guarantee': _cc_guarantee,
        'cc-guarantee-bpl': _cc_guarantee_bpl,
    }
    try:
        builder = builders[kind]
    except KeyError:
        raise UnknownRuleError('Unknown family: {}'.format(kind))
    return builder(size_param, k, l)
