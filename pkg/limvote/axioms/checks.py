# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Proportionality axioms for a single committee.

A group S is l-cohesive when |S| * k >= l * n and its members share at
least l approved candidates. All comparisons are on integers.
"""

# Standard library imports
from dataclasses import dataclass
from itertools import combinations
import logging

# Local imports
from limvote.election.model import check_committee
from limvote.election.structure import (
    NotPartyList, detect_party_structure, laminar_tree)
from limvote.utils.errors import (
    BudgetExceededError, NotLaminarError, NotPartyListError)


logger = logging.getLogger(__name__)

# Largest electorate searched for cohesive groups on general profiles
MAX_SEARCH_VOTERS = 16


@dataclass(frozen=True)
class Witness:
    voters: tuple
    level: int
    candidates: tuple
    seats: int = None
    detail: str = ''

    def to_dict(self):
        return {
            'voters': list(self.voters),
            'level': self.level,
            'candidates': list(self.candidates),
            'seats': self.seats,
            'detail': self.detail,
        }


@dataclass(frozen=True)
class AxiomVerdict:
    axiom: str
    holds: bool
    witness: Witness = None

    def to_dict(self):
        return {
            'axiom': self.axiom,
            'holds': self.holds,
            'witness': None if self.witness is None
            else self.witness.to_dict(),
        }


def _common(frame, voters):
    return tuple(sorted(frozenset.intersection(
        *(frame.approvals[i] for i in voters))))


# =============================================================================
# ---- Justified representation
# =============================================================================
def check_jr(frame, committee):
    """
    Justified representation, by counting for every candidate the
    approvers that the committee leaves unrepresented.
    """
    members = check_committee(frame, committee)
    unrepresented = [i for i, a in enumerate(frame.approvals)
                     if not a & members]
    for c in range(frame.m):
        group = tuple(i for i in unrepresented if c in frame.approvals[i])
        if len(group) * frame.k >= frame.n:
            witness = Witness(group, 1, _common(frame, group), 0)
            return AxiomVerdict('jr', False, witness)
    return AxiomVerdict('jr', True)


def _party_list_verdict(axiom, frame, structure, members):
    """On party-list profiles every cohesive group lies within one party."""
    n, k = frame.n, frame.k
    for i, (party, supporters) in enumerate(zip(structure.parties,
                                                structure.supporters)):
        deserved = min(len(party), k * supporters // n)
        seats = len(party & members)
        if seats < deserved:
            voters = tuple(v for v, p in enumerate(structure.membership)
                           if p == i)
            witness = Witness(voters, seats + 1, tuple(sorted(party)), seats,
                              'party {}'.format(i))
            return AxiomVerdict(axiom, False, witness)
    return AxiomVerdict(axiom, True)


def _cohesive_seeds(frame):
    """
    Depth-first search over candidate sets T whose common approvers
    could still form a |T|-cohesive group. Yields (T, approvers of T).
    """
    n, k = frame.n, frame.k
    approvers = [frozenset(i for i, a in enumerate(frame.approvals)
                           if c in a) for c in range(frame.m)]

    def extend(common, voters):
        for c in range(common[-1] + 1 if common else 0, frame.m):
            group = voters & approvers[c]
            level = len(common) + 1
            if len(group) * k < level * n:
                continue
            seed = common + (c,)
            yield seed, group
            yield from extend(seed, group)

    return extend((), frozenset(range(n)))


def _check_search(axiom, frame, members):
    if frame.n > MAX_SEARCH_VOTERS:
        raise BudgetExceededError(
            '{} needs a search over cohesive groups, limited to {} voters '
            'on profiles that are not party-list'.format(
                axiom.upper(), MAX_SEARCH_VOTERS))
    n, k = frame.n, frame.k
    for seed, group in _cohesive_seeds(frame):
        level = len(seed)
        if axiom == 'ejr':
            weak = tuple(sorted(i for i in group
                                if len(frame.approvals[i] & members) < level))
            if len(weak) * k >= level * n:
                seats = max(len(frame.approvals[i] & members) for i in weak)
                return AxiomVerdict(axiom, False, Witness(
                    weak, level, _common(frame, weak), seats))
            continue

        reachable = sorted(members & frozenset().union(
            *(frame.approvals[i] for i in group)))
        for kept in combinations(reachable, min(level - 1, len(reachable))):
            kept = frozenset(kept)
            weak = tuple(sorted(i for i in group
                                if frame.approvals[i] & members <= kept))
            if len(weak) * k >= level * n:
                seats = len(members & frozenset().union(
                    *(frame.approvals[i] for i in weak)))
                return AxiomVerdict(axiom, False, Witness(
                    weak, level, _common(frame, weak), seats))
    return AxiomVerdict(axiom, True)


def _check_extended(axiom, frame, committee):
    members = check_committee(frame, committee)
    structure = detect_party_structure(frame)
    if structure:
        return _party_list_verdict(axiom, frame, structure, members)
    return _check_search(axiom, frame, members)


def check_pjr(frame, committee):
    """Proportional justified representation."""
    return _check_extended('pjr', frame, committee)


def check_ejr(frame, committee):
    """Extended justified representation."""
    return _check_extended('ejr', frame, committee)


# =============================================================================
# ---- Party and laminar axioms
# =============================================================================
def check_lower_quota(structure, n, k, committee):
    """Every party gets at least floor(k * n_i / n) seats."""
    if isinstance(structure, NotPartyList):
        raise NotPartyListError(structure.witness)
    members = frozenset(committee)
    for i, (party, supporters) in enumerate(zip(structure.parties,
                                                structure.supporters)):
        quota = k * supporters // n
        seats = len(party & members)
        if seats < quota:
            voters = tuple(v for v, p in enumerate(structure.membership)
                           if p == i)
            witness = Witness(voters, quota, tuple(sorted(party)), seats,
                              'party {}'.format(i))
            return AxiomVerdict('lower-quota', False, witness)
    return AxiomVerdict('lower-quota', True)


def check_laminar_proportionality(election, committee):
    """
    Walk the laminar decomposition top-down: every node must receive
    exactly its share of seats and every unanimously approved candidate
    split off along the way must be elected.
    """
    frame = getattr(election, 'frame', election)
    tree = laminar_tree(frame)
    if tree is None:
        raise NotLaminarError('Laminar proportionality needs a laminar '
                              'election')
    members = check_committee(frame, committee)

    for node in tree.walk():
        seats = len(members & node.candidates)
        if seats != node.k:
            witness = Witness(node.voters, node.k,
                              tuple(sorted(node.candidates)), seats,
                              node.kind)
            return AxiomVerdict('laminar-proportionality', False, witness)
        if node.kind == 'extension' and node.removed not in members:
            witness = Witness(node.voters, node.k, (node.removed,), seats,
                              'unanimous candidate not elected')
            return AxiomVerdict('laminar-proportionality', False, witness)
    return AxiomVerdict('laminar-proportionality', True)


AXIOMS = {
    'jr': check_jr,
    'pjr': check_pjr,
    'ejr': check_ejr,
}
