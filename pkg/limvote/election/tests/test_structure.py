# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Tests for party-list, order and laminar structure detection.
"""

# Third party imports
import pytest

# Local imports
from limvote.election.model import BroadcastOrder, Election, ElectionFrame
from limvote.election.structure import (
    detect_party_structure, is_broadcasted_laminar, is_broadcasted_party_list,
    is_consistent_with_order, is_laminar, laminar_tree, prioritizes_popular,
    require_party_structure)
from limvote.utils.errors import NotPartyListError
from limvote.utils.iofuncs import load_fixture


def test_party_structure_order():
    """Parties sorted by supporters, then by smallest candidate."""
    structure = detect_party_structure(load_fixture('jr_failure').frame)
    assert structure
    assert structure.parties == (frozenset({3, 4, 5}), frozenset({6, 7, 8}),
                                 frozenset({0, 1, 2}))
    assert structure.supporters == (3, 3, 2)
    assert structure.ties == ((0, 1),)
    assert structure.membership == (2, 2, 0, 0, 0, 1, 1, 1)
    assert structure.sizes == (3, 3, 3)
    assert structure.party_of[7] == 1


def test_party_structure_unaffiliated():
    """Candidates nobody approves stay out of the parties."""
    frame = ElectionFrame(4, 4, 2, 1, [{2, 3}, set(), {0}, {2, 3}])
    structure = detect_party_structure(frame)
    assert structure.unaffiliated == (1,)
    assert structure.membership == (0, None, 1, 0)
    assert structure.n == 4
    assert structure.to_approvals() == frame.approvals


def test_not_party_list_witness():
    """The witness is the first pair of clashing voters."""
    frame = load_fixture('lost_voter').frame
    result = detect_party_structure(frame)
    assert not result
    assert result.witness == (0, 1)
    with pytest.raises(NotPartyListError) as excinfo:
        require_party_structure(frame)
    assert excinfo.value.witness == (0, 1)


def test_order_consistency():
    """Test consistency of ballots with an order."""
    left = load_fixture('laminar_broadcast')
    right = load_fixture('laminar_unordered')
    assert is_consistent_with_order(left.election, left.order)
    assert is_broadcasted_laminar(left.election, left.order)
    assert not is_consistent_with_order(right.election, right.order)
    assert not is_broadcasted_laminar(right.election, right.order)
    # Laminar, but not party-list
    assert not is_broadcasted_party_list(left.election, left.order)


def test_broadcasted_party_list():
    """Test broadcasted party-list recognition."""
    frame = ElectionFrame(3, 4, 2, 1, [{0, 1}, {0, 1}, {2, 3}])
    election = Election(frame, [{0}, {0}, {2}])
    assert is_broadcasted_party_list(election, BroadcastOrder.identity(4))
    assert not is_broadcasted_party_list(
        election, BroadcastOrder((1, 0, 2, 3)))


def test_prioritizes_popular():
    """Popular candidates must come first in the order."""
    doc = load_fixture('unpopular_order')
    assert not prioritizes_popular(doc.frame, doc.order)
    assert not is_broadcasted_laminar(doc.election, doc.order)
    assert prioritizes_popular(doc.frame,
                               BroadcastOrder((5, 6, 0, 1, 2, 3, 4)))


def test_laminar_tree():
    """A proportional split into two blocks, each further decomposed."""
    tree = laminar_tree(load_fixture('laminar_failure').frame)
    assert tree.kind == 'sum'
    left, right = tree.children
    assert left.voters == (0, 1)
    assert left.k == 3
    assert left.kind == 'extension'
    assert left.removed == 0
    assert right.kind == 'unanimous'
    assert right.candidates == frozenset({1, 2, 3, 4})
    assert len(list(tree.walk())) >= 4


@pytest.mark.parametrize('approvals, k, expected', [
    # Unanimous block
    ([{0, 1, 2}, {0, 1, 2}], 2, True),
    # Unanimous block too small for the committee
    ([{0}, {0}], 2, False),
    # Non-integral share of the committee
    ([{0, 1}, {2, 3}, {2, 3}], 2, False),
    # Overlap without a common candidate
    ([{0, 1}, {1, 2}, {2, 3}], 2, False),
])
def test_is_laminar(approvals, k, expected):
    """Test laminar recognition."""
    frame = ElectionFrame(len(approvals), 4, k, 1, approvals)
    assert is_laminar(frame) is expected


if __name__ == "__main__":
    pytest.main()
