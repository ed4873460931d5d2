# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Input/Output Utilities

Note: 'load' functions return a (data, error) pair, where error is None
      on success, and 'save' functions return None or an error string.
"""

# Standard library imports
from dataclasses import dataclass
import json
import os.path as osp

# Third party imports
import pandas as pd

# Local imports
from limvote.election.model import BroadcastOrder, Election, ElectionFrame
from limvote.utils.errors import SchemaError


FIXTURES_DIR = osp.join(osp.dirname(osp.dirname(osp.abspath(__file__))),
                        'fixtures')

ELECTION_KEYS = ('n', 'm', 'k', 'l', 'approvals', 'ballots', 'order', 'meta')


# ---- Plain files
# -----------------------------------------------------------------------------
def load_json(filename):
    """Load a json file"""
    try:
        with open(filename, 'r', encoding='utf-8') as fid:
            data = json.load(fid)
        return data, None
    except Exception as err:
        return None, str(err)


def save_json(data, filename):
    """Save data as an indented json file"""
    try:
        with open(filename, 'w', encoding='utf-8') as fid:
            json.dump(data, fid, indent=2, sort_keys=False)
            fid.write('\n')
    except Exception as err:
        return str(err)


def save_csv(data, filename, columns=None):
    """
    Save a list of row dictionaries (or a DataFrame) as csv.

    `filename` may also be an open text stream.
    """
    try:
        frame = data if isinstance(data, pd.DataFrame) else pd.DataFrame(
            list(data), columns=columns)
        frame.to_csv(filename, index=False, lineterminator='\n',
                     float_format='%.12g')
    except Exception as err:
        return str(err)


# ---- Election documents
# -----------------------------------------------------------------------------
@dataclass(frozen=True)
class ElectionDocument:
    """Parsed election document; election and order are optional."""
    frame: ElectionFrame
    election: object = None
    order: object = None
    meta: object = None

    def require_election(self):
        if self.election is None:
            raise SchemaError('/ballots', 'ballots are required here')
        return self.election


def _int(value, pointer, minimum=None):
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(pointer, 'expected an integer, got {!r}'.format(
            value))
    if minimum is not None and value < minimum:
        raise SchemaError(pointer, 'must be at least {}'.format(minimum))
    return value


def _id_list(value, pointer, m):
    if not isinstance(value, list):
        raise SchemaError(pointer, 'expected a list of candidate ids')
    ids = []
    for pos, c in enumerate(value):
        c = _int(c, '{}/{}'.format(pointer, pos))
        if not 0 <= c < m:
            raise SchemaError('{}/{}'.format(pointer, pos),
                              'candidate {} out of range 0..{}'.format(
                                  c, m - 1))
        ids.append(c)
    if len(set(ids)) != len(ids):
        raise SchemaError(pointer, 'duplicate candidate ids')
    return ids


def _profile(doc, key, n, m):
    value = doc[key]
    pointer = '/' + key
    if not isinstance(value, list):
        raise SchemaError(pointer, 'expected a list of id lists')
    if len(value) != n:
        raise SchemaError(pointer, 'expected {} entries, got {}'.format(
            n, len(value)))
    return [_id_list(v, '{}/{}'.format(pointer, i), m)
            for i, v in enumerate(value)]


def parse_election(doc):
    """
    Build an ElectionDocument from a decoded json object.

    Raises SchemaError with a JSON pointer to the offending value.
    """
    if not isinstance(doc, dict):
        raise SchemaError('', 'an election document must be an object')
    unknown = sorted(set(doc) - set(ELECTION_KEYS))
    if unknown:
        raise SchemaError('/' + unknown[0], 'unknown key')
    for key in ('n', 'm', 'k', 'l', 'approvals'):
        if key not in doc:
            raise SchemaError('/' + key, 'missing required key')

    n = _int(doc['n'], '/n', 1)
    m = _int(doc['m'], '/m', 1)
    k = _int(doc['k'], '/k', 1)
    l = _int(doc['l'], '/l', 1)
    if k > m:
        raise SchemaError('/k', 'committee size exceeds m={}'.format(m))
    if l > k:
        raise SchemaError('/l', 'ballot limit exceeds k={}'.format(k))

    frame = ElectionFrame(n, m, k, l, _profile(doc, 'approvals', n, m))

    election = None
    if doc.get('ballots') is not None:
        election = Election(frame, _profile(doc, 'ballots', n, m))

    order = None
    if doc.get('order') is not None:
        ids = _id_list(doc['order'], '/order', m)
        if len(ids) != m:
            raise SchemaError('/order', 'expected all {} candidates'.format(m))
        order = BroadcastOrder(tuple(ids))

    return ElectionDocument(frame, election, order, doc.get('meta'))


def election_to_dict(election, order=None, meta=None):
    """Inverse of parse_election; accepts a frame or an election."""
    frame = getattr(election, 'frame', election)
    doc = {
        'n': frame.n,
        'm': frame.m,
        'k': frame.k,
        'l': frame.l,
        'approvals': [sorted(a) for a in frame.approvals],
    }
    if isinstance(election, Election):
        doc['ballots'] = [sorted(b) for b in election.ballots]
    if order is not None:
        doc['order'] = list(order.order)
    if meta:
        doc['meta'] = meta
    return doc


def load_election(filename):
    """Load an election document, raising SchemaError on any problem."""
    data, error = load_json(filename)
    if error is not None:
        raise SchemaError('', 'cannot read {}: {}'.format(filename, error))
    return parse_election(data)


def fixture_path(name):
    """Path of a bundled fixture, given with or without extension."""
    if not name.endswith('.json'):
        name += '.json'
    return osp.join(FIXTURES_DIR, name)


def load_fixture(name):
    return load_election(fixture_path(name))


def save_election(election, filename, order=None, meta=None):
    return save_json(election_to_dict(election, order, meta), filename)

