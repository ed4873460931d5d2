# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Structure recognition: party-list profiles, broadcasting orders and
laminar elections.
"""

# Standard library imports
from dataclasses import dataclass
from functools import cached_property
import logging

# Local imports
from limvote.utils.errors import NotPartyListError


logger = logging.getLogger(__name__)


# =============================================================================
# ---- Party-list profiles
# =============================================================================
@dataclass(frozen=True)
class PartyStructure:
    """
    Decomposition of a party-list profile.

    Parties are ordered by decreasing number of supporters. Parties with
    the same number of supporters are ordered by their smallest candidate
    id, and each such group is listed in `ties`.
    """
    parties: tuple
    supporters: tuple
    unaffiliated: tuple
    membership: tuple
    ties: tuple = ()

    @property
    def g(self):
        return len(self.parties)

    @property
    def sizes(self):
        return tuple(len(p) for p in self.parties)

    @property
    def n(self):
        return len(self.membership)

    @cached_property
    def party_of(self):
        """Map from candidate id to party index."""
        return {c: i for i, party in enumerate(self.parties) for c in party}

    def to_approvals(self):
        """Rebuild the approval profile, in voter order."""
        empty = frozenset()
        return tuple(empty if i is None else self.parties[i]
                     for i in self.membership)


@dataclass(frozen=True)
class NotPartyList:
    """Outcome of a failed detection; witness is a pair of voters."""
    witness: tuple

    def __bool__(self):
        return False


def detect_party_structure(frame):
    """
    Decompose a frame into parties.

    Returns a PartyStructure or, when two voters have overlapping but
    unequal approval sets, a NotPartyList naming the first such pair.
    """
    owner = {}
    first_voter = {}
    counts = {}
    unaffiliated = []
    voter_sets = []

    for i, approved in enumerate(frame.approvals):
        if not approved:
            unaffiliated.append(i)
            voter_sets.append(None)
            continue
        if approved in counts:
            counts[approved] += 1
            voter_sets.append(approved)
            continue

        clashes = [first_voter[owner[c]] for c in approved if c in owner]
        if clashes:
            witness = (min(clashes), i)
            logger.debug("Not party-list, witness %s", witness)
            return NotPartyList(witness)

        for c in approved:
            owner[c] = approved
        first_voter[approved] = i
        counts[approved] = 1
        voter_sets.append(approved)

    ordered = sorted(counts, key=lambda s: (-counts[s], min(s)))
    index = {s: pos for pos, s in enumerate(ordered)}
    supporters = tuple(counts[s] for s in ordered)

    ties = []
    start = 0
    for pos in range(1, len(ordered) + 1):
        if pos == len(ordered) or supporters[pos] != supporters[start]:
            if pos - start > 1:
                ties.append(tuple(range(start, pos)))
            start = pos

    return PartyStructure(
        parties=tuple(ordered),
        supporters=supporters,
        unaffiliated=tuple(unaffiliated),
        membership=tuple(None if s is None else index[s] for s in voter_sets),
        ties=tuple(ties),
    )


def require_party_structure(frame):
    """Like detect_party_structure, but raise on non party-list frames."""
    structure = detect_party_structure(frame)
    if not structure:
        raise NotPartyListError(structure.witness)
    return structure


# =============================================================================
# ---- Broadcasting orders
# =============================================================================
def is_consistent_with_order(election, order):
    """
    Whether every voter's ballot respects the order within their
    approvals: a voted approved candidate always precedes an unvoted one.
    """
    rank = order.rank
    seen = set()
    for approved, ballot in zip(election.approvals, election.ballots):
        if (approved, ballot) in seen:
            continue
        seen.add((approved, ballot))
        voted = approved & ballot
        unvoted = approved - ballot
        if voted and unvoted:
            if max(rank[c] for c in voted) > min(rank[c] for c in unvoted):
                return False
    return True


def is_broadcasted_party_list(election, order):
    return (bool(detect_party_structure(election.frame))
            and is_consistent_with_order(election, order))


def prioritizes_popular(frame, order):
    """Whether the order never ranks a candidate above a more approved one."""
    counts = frame.approval_counts
    ranked = [counts[c] for c in order.order]
    return all(a >= b for a, b in zip(ranked, ranked[1:]))


# =============================================================================
# ---- Laminar elections
# =============================================================================
@dataclass(frozen=True)
class LaminarNode:
    """
    One step of a laminar decomposition.

    kind is 'unanimous' (a block of voters sharing `candidates`),
    'extension' (`removed` is approved by every voter of the node and the
    rest is `children[0]`) or 'sum' (voter and candidate disjoint
    children with proportional committee sizes).
    """
    kind: str
    voters: tuple
    candidates: frozenset
    k: int
    removed: object = None
    children: tuple = ()

    def walk(self):
        """Nodes of the subtree in depth-first order."""
        yield self
        for child in self.children:
            yield from child.walk()


def _components(voters, sets):
    """Connected components of the voter-overlap graph, by first voter."""
    parent = {v: v for v in voters}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    holder = {}
    for v in voters:
        for c in sets[v]:
            if c in holder:
                a, b = find(v), find(holder[c])
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                holder[c] = v

    groups = {}
    for v in voters:
        groups.setdefault(find(v), []).append(v)
    return [tuple(g) for _, g in sorted(groups.items())]


def _laminar_node(voters, sets, k):
    candidates = frozenset().union(*(sets[v] for v in voters))
    distinct = {sets[v] for v in voters}

    if len(distinct) == 1:
        if len(candidates) >= k:
            return LaminarNode('unanimous', voters, candidates, k)
        return None

    components = _components(voters, sets)
    if len(components) > 1:
        children = []
        for part in components:
            share = k * len(part)
            if share % len(voters):
                return None
            child = _laminar_node(part, sets, share // len(voters))
            if child is None:
                return None
            children.append(child)
        return LaminarNode('sum', voters, candidates, k,
                           children=tuple(children))

    common = frozenset.intersection(*distinct)
    if not common or k < 1:
        return None
    # Unanimously approved candidates are interchangeable
    c = min(common)
    reduced = dict(sets)
    for v in voters:
        reduced[v] = sets[v] - {c}
    child = _laminar_node(voters, reduced, k - 1)
    if child is None:
        return None
    return LaminarNode('extension', voters, candidates, k, removed=c,
                       children=(child,))


def laminar_tree(frame):
    """
    Laminar decomposition of a frame, or None when it is not laminar.

    Only approved candidates take part in the decomposition.
    """
    voters = tuple(range(frame.n))
    sets = dict(enumerate(frame.approvals))
    return _laminar_node(voters, sets, frame.k)


def is_laminar(frame):
    return laminar_tree(frame) is not None


def is_broadcasted_laminar(election, order):
    return (is_laminar(election.frame)
            and is_consistent_with_order(election, order)
            and prioritizes_popular(election.frame, order))
