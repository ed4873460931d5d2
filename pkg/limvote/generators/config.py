# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Sweep configuration.

SweepConfig is a traitlets Configurable, so it can be loaded from json
or python config files like any other traitlets application setting.
"""

# Standard library imports
from collections import namedtuple
from dataclasses import dataclass
import os.path as osp

# Third party imports
import numpy as np
from traitlets import (
    CaselessStrEnum, Float, Int, List, TraitError, Unicode, Union, validate)
from traitlets.config import Configurable
from traitlets.config.loader import Config, PyFileConfigLoader

# Local imports
from limvote.utils.errors import InvalidConfigError
from limvote.utils.iofuncs import load_json


PRESETS = {
    'desk': {},
    'full': {'n': 1500, 'trials': 2000},
}

Cell = namedtuple('Cell', ['index', 'phi', 'g', 'k', 'l'])


class SweepConfig(Configurable):
    """Parameter grid of the synthetic experiment."""

    n = Int(150, help="Number of voters").tag(config=True)
    m = Int(24, help="Number of candidates").tag(config=True)
    p = Float(0.5, help="Approval probability of a redrawn entry"
              ).tag(config=True)
    phi = List(Float(), default_value=[0, .05, .1, .15, .2, .25, .5, .75, 1],
               help="Noise levels, also used as Mallows dispersion"
               ).tag(config=True)
    g = List(Int(), default_value=[2, 6, 20], help="Numbers of parties"
             ).tag(config=True)
    k = List(Int(), default_value=[8, 16, 12], help="Committee sizes"
             ).tag(config=True)
    l = List(Union([Int(), Unicode()]), default_value=['1', 'k/2', 'k'],
             help="Ballot limits: integers or '1', 'k/2', 'k'"
             ).tag(config=True)
    trials = Int(50, help="Trials per cell").tag(config=True)
    seed = Int(0, help="Base seed of all random streams").tag(config=True)
    partition_mode = CaselessStrEnum(
        ['uniform', 'random-partition'], default_value='uniform',
        help="How voters are spread over parties").tag(config=True)

    @validate('n', 'm', 'trials')
    def _validate_positive(self, proposal):
        if proposal['value'] < 1:
            raise TraitError('{} must be positive'.format(
                proposal['trait'].name))
        return proposal['value']

    @validate('seed')
    def _validate_seed(self, proposal):
        if not 0 <= proposal['value'] < 2 ** 64:
            raise TraitError('seed must be an unsigned 64 bit integer')
        return proposal['value']

    @validate('p')
    def _validate_p(self, proposal):
        if not 0 <= proposal['value'] <= 1:
            raise TraitError('p must lie in [0, 1]')
        return proposal['value']

    @validate('phi')
    def _validate_phi(self, proposal):
        if not all(0 <= x <= 1 for x in proposal['value']):
            raise TraitError('every phi must lie in [0, 1]')
        return proposal['value']

    def cells(self):
        """Grid cells in canonical order: phi, then g, then k, then l."""
        cells = []
        for phi in self.phi:
            for g in self.g:
                for k in self.k:
                    for limit in self.l:
                        cells.append(Cell(len(cells), phi, g, k,
                                          resolve_ballot_limit(limit, k)))
        for cell in cells:
            if cell.g > self.m or cell.k > self.m:
                raise InvalidConfigError(
                    'Cell {} needs g <= m and k <= m'.format(cell))
        return cells

    def to_dict(self):
        return {name: getattr(self, name)
                for name in self.trait_names(config=True)}


def resolve_ballot_limit(limit, k):
    """Turn '1', 'k/2', 'k' or an integer into a ballot limit for k."""
    if isinstance(limit, str):
        limit = limit.strip()
        if limit == 'k':
            value = k
        elif limit == 'k/2':
            if k % 2:
                raise InvalidConfigError('k/2 needs an even k, got {}'.format(
                    k))
            value = k // 2
        else:
            try:
                value = int(limit)
            except ValueError:
                raise InvalidConfigError('Unknown ballot limit {!r}'.format(
                    limit))
    else:
        value = limit
    if not 1 <= value <= k:
        raise InvalidConfigError(
            'Ballot limit {} out of range for k={}'.format(value, k))
    return value


def _as_config(section):
    if not isinstance(section, dict):
        raise InvalidConfigError('A sweep config must be an object')
    unknown = sorted(set(section) - set(SweepConfig.class_trait_names(
        config=True)))
    if unknown:
        raise InvalidConfigError('Unknown sweep config keys: {}'.format(
            ', '.join(unknown)))
    return Config({'SweepConfig': dict(section)})


def make_sweep_config(overrides=None, preset='desk'):
    """SweepConfig from a preset and a dict of overrides."""
    if preset not in PRESETS:
        raise InvalidConfigError('Unknown preset: {}'.format(preset))
    if overrides is not None and not isinstance(overrides, dict):
        raise InvalidConfigError('A sweep config must be an object')
    values = dict(PRESETS[preset])
    values.update(overrides or {})
    try:
        return SweepConfig(config=_as_config(values))
    except TraitError as err:
        raise InvalidConfigError(str(err))


def load_sweep_config(filename, preset='desk'):
    """Load a SweepConfig from a json or python config file."""
    if filename.endswith('.py'):
        try:
            loader = PyFileConfigLoader(osp.basename(filename),
                                        path=osp.dirname(filename) or '.')
            data = loader.load_config().get('SweepConfig', {})
        except Exception as err:
            raise InvalidConfigError('Cannot load {}: {}'.format(
                filename, err))
        return make_sweep_config(dict(data), preset)

    data, error = load_json(filename)
    if error is not None:
        raise InvalidConfigError('Cannot load {}: {}'.format(filename, error))
    section = data.get('SweepConfig', data) if isinstance(data, dict) else data
    return make_sweep_config(section, preset)


# =============================================================================
# ---- Random streams
# =============================================================================
@dataclass(frozen=True)
class RngStream:
    """Random stream of one trial, independent of execution order."""
    seed: int
    cell: int
    trial: int

    def generator(self):
        entropy = np.random.SeedSequence([self.seed, self.cell, self.trial])
        return np.random.default_rng(entropy)
