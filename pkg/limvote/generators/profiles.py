# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Synthetic approval profiles and ballots.

Random draws always come from a numpy Generator passed by the caller,
so a profile is fully determined by the generator's seed.
"""

# Standard library imports
from dataclasses import dataclass
import logging

# Third party imports
import numpy as np

# Local imports
from limvote.election.model import BroadcastOrder, Election, ElectionFrame
from limvote.utils.errors import (
    BlueprintError, InvalidConfigError, InvalidElectionError)


logger = logging.getLogger(__name__)

PADDING_POLICIES = ('order', 'lexicographic')


# =============================================================================
# ---- Ballots
# =============================================================================
def gen_ballots(approvals, order, l, padding='order'):
    """
    Ballots made of each voter's l highest ranked approved candidates.

    Voters approving fewer than l candidates fill the ballot with
    non-approved candidates, by rank ('order') or by id
    ('lexicographic').
    """
    if padding not in PADDING_POLICIES:
        raise InvalidConfigError('Unknown padding policy: {}'.format(padding))
    ranked = order.order
    by_id = sorted(ranked)
    ballots = {}
    result = []
    for approved in approvals:
        ballot = ballots.get(approved)
        if ballot is None:
            picked = [c for c in ranked if c in approved][:l]
            if len(picked) < l:
                filler = ranked if padding == 'order' else by_id
                picked += [c for c in filler
                           if c not in approved][:l - len(picked)]
            ballot = ballots[approved] = frozenset(picked)
        result.append(ballot)
    return tuple(result)


def gen_party_list(party_sizes, supporter_counts, k, l, padding='order',
                   extra_candidates=0):
    """
    Broadcasted party-list election.

    Party j gets the next `party_sizes[j]` candidate ids and
    `supporter_counts[j]` voters. The broadcasting order is the id order,
    and ballots are the first l approved candidates. Returns the
    election and its order.
    """
    if len(party_sizes) != len(supporter_counts):
        raise InvalidElectionError('Expected one supporter count per party')
    if any(s < 1 for s in party_sizes) or any(
            n < 1 for n in supporter_counts):
        raise InvalidElectionError(
            'Party sizes and supporter counts must be positive')

    approvals = []
    start = 0
    for size, count in zip(party_sizes, supporter_counts):
        block = frozenset(range(start, start + size))
        approvals.extend([block] * count)
        start += size
        if size < l:
            logger.debug("Party of %d candidates pads ballots by %s",
                         size, padding)

    m = start + extra_candidates
    frame = ElectionFrame(len(approvals), m, k, l, approvals)
    order = BroadcastOrder.identity(m)
    return Election(frame, gen_ballots(frame.approvals, order, l,
                                       padding)), order


# =============================================================================
# ---- Disjoint model
# =============================================================================
@dataclass(frozen=True)
class DisjointProfile:
    """
    A draw of the disjoint model.

    labels[c] is the block of candidate c, parties[i] the block voter i
    was assigned to before resampling.
    """
    approvals: tuple
    labels: tuple
    parties: tuple

    @property
    def base_order(self):
        """Candidates grouped by block, blocks in index order."""
        return BroadcastOrder(tuple(sorted(range(len(self.labels)),
                                           key=lambda c: (self.labels[c], c))))

    def party_voters(self):
        """Voters assigned to each block, largest first."""
        counts = np.bincount(self.parties, minlength=max(self.labels) + 1)
        return tuple(sorted((int(x) for x in counts), reverse=True))

    def party_candidates(self):
        counts = np.bincount(self.labels)
        return tuple(sorted((int(x) for x in counts), reverse=True))


def _check_unit(name, value):
    if not 0 <= value <= 1:
        raise InvalidConfigError('{} must lie in [0, 1], got {}'.format(
            name, value))


def _partition_candidates(m, g, rng):
    """Labels in 0..g-1 with every label used at least once."""
    while True:
        labels = rng.integers(g, size=m)
        if np.bincount(labels, minlength=g).min() > 0:
            return labels


def _assign_voters(n, g, rng, partition_mode):
    if partition_mode == 'uniform':
        return rng.integers(g, size=n)
    if partition_mode == 'random-partition':
        # Uniform composition of n into g parts (stars and bars)
        cuts = np.sort(rng.choice(n + g - 1, size=g - 1, replace=False))
        bounds = np.concatenate(([-1], cuts, [n + g - 1]))
        sizes = np.diff(bounds) - 1
        return rng.permutation(np.repeat(np.arange(g), sizes))
    raise InvalidConfigError('Unknown partition mode: {}'.format(
        partition_mode))


def gen_disjoint(n, m, g, p, phi, rng, partition_mode='uniform'):
    """
    Draw a profile from the disjoint model.

    Candidates are split into g nonempty blocks and every voter approves
    the block of their party. Then every (voter, candidate) entry is
    redrawn with probability phi, as approved with probability p.
    """
    if n < 1 or not 1 <= g <= m:
        raise InvalidConfigError(
            'Need n >= 1 and 1 <= g <= m, got n={}, g={}, m={}'.format(
                n, g, m))
    _check_unit('p', p)
    _check_unit('phi', phi)

    labels = _partition_candidates(m, g, rng)
    parties = _assign_voters(n, g, rng, partition_mode)
    base = parties[:, None] == labels[None, :]
    redraw = rng.random((n, m)) < phi
    coin = rng.random((n, m)) < p
    matrix = np.where(redraw, coin, base)

    sets = {}
    approvals = []
    for row in matrix:
        key = row.tobytes()
        if key not in sets:
            sets[key] = frozenset(int(c) for c in np.flatnonzero(row))
        approvals.append(sets[key])
    return DisjointProfile(tuple(approvals), tuple(int(x) for x in labels),
                           tuple(int(x) for x in parties))


# =============================================================================
# ---- Laminar blueprints
# =============================================================================
@dataclass(frozen=True)
class LaminarLeaf:
    """`voters` voters all approving `candidates` fresh candidates."""
    voters: int
    candidates: int
    k: int


@dataclass(frozen=True)
class LaminarExtension:
    """A fresh candidate approved by every voter of `child`."""
    child: object


@dataclass(frozen=True)
class LaminarSum:
    """Disjoint children whose committee sizes follow their voter counts."""
    children: tuple


def _build(node, path, next_id):
    if isinstance(node, LaminarLeaf):
        if node.voters < 1 or not 0 <= node.k <= node.candidates:
            raise BlueprintError(path, 'a leaf needs voters and at least '
                                       'k candidates')
        block = frozenset(range(next_id, next_id + node.candidates))
        return [block] * node.voters, node.k, next_id + node.candidates

    if isinstance(node, LaminarExtension):
        c = next_id
        sets, k, next_id = _build(node.child, path + '/child', next_id + 1)
        return [s | {c} for s in sets], k + 1, next_id

    if isinstance(node, LaminarSum):
        if len(node.children) < 2:
            raise BlueprintError(path, 'a sum needs two or more children')
        parts = []
        for i, child in enumerate(node.children):
            sets, k, next_id = _build(child, '{}/children/{}'.format(path, i),
                                      next_id)
            parts.append((sets, k))
        voters = sum(len(sets) for sets, _ in parts)
        seats = sum(k for _, k in parts)
        for i, (sets, k) in enumerate(parts):
            if k * voters != seats * len(sets):
                raise BlueprintError(
                    '{}/children/{}'.format(path, i),
                    '{} seats for {} of {} voters breaks the proportion of '
                    '{} seats'.format(k, len(sets), voters, seats))
        return [s for sets, _ in parts for s in sets], seats, next_id

    raise BlueprintError(path, 'unknown node {!r}'.format(node))


def gen_laminar(blueprint, l=1):
    """Laminar frame built from a blueprint tree."""
    sets, k, m = _build(blueprint, '', 0)
    if k < 1:
        raise BlueprintError('', 'the root must have at least one seat')
    return ElectionFrame(len(sets), m, k, min(l, k), sets)
