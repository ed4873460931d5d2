# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Monte-Carlo sweep over the synthetic experiment grid.

Every trial is generated from its own random stream, so records do not
depend on the number of workers. Cells are sent to worker processes as
cloudpickle payloads and come back in canonical (cell, trial) order.
"""

# Standard library imports
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
import logging

# Third party imports
import cloudpickle
import pandas as pd

# Local imports
from limvote.election.structure import detect_party_structure
from limvote.generators.pipeline import generate_trial
from limvote.metrics.closed_form import closed_form_cc_improvement_bpl
from limvote.metrics.improvement import resolute_improvements
from limvote.rules.winners import TieBreakPolicy
from limvote.utils.config import worker_count
from limvote.utils.errors import ConsistencyAlarm, TrialErrorWrapper
from limvote.utils.misc import format_fraction


logger = logging.getLogger(__name__)

SWEEP_METRICS = ('cc', 'pav', 'av')

CELL_COLUMNS = ['cell', 'phi', 'g', 'k', 'l', 'partition_mode']

RECORD_COLUMNS = CELL_COLUMNS + [
    'approval_noise', 'order_dispersion', 'trial', 'seed',
    'cc_improvement', 'cc_improvement_decimal',
    'pav_improvement', 'pav_improvement_decimal',
    'av_improvement', 'av_improvement_decimal',
    'cc_closed_form', 'party_voters', 'tie_breaks',
]

SUMMARY_COLUMNS = CELL_COLUMNS + [
    'metric', 'trials', 'min', 'q1', 'median', 'q3', 'max']


@dataclass(frozen=True)
class TrialRecord:
    cell: int
    phi: float
    g: int
    k: int
    l: int
    partition_mode: str
    approval_noise: float
    order_dispersion: float
    trial: int
    seed: int
    cc_improvement: str
    cc_improvement_decimal: float
    pav_improvement: str
    pav_improvement_decimal: float
    av_improvement: str
    av_improvement_decimal: float
    cc_closed_form: str
    party_voters: str
    tie_breaks: int

    def to_row(self):
        return asdict(self)


def _closed_form_check(election, value):
    """
    On a noiseless draw, compare the CC improvement with its closed form.

    Only checked when every party can fill a ballot and supporter counts
    are all different; returns '' otherwise.
    """
    structure = detect_party_structure(election.frame)
    if not structure:
        raise ConsistencyAlarm('A noiseless draw is not party-list')
    if (min(structure.sizes) < election.l
            or len(set(structure.supporters)) < structure.g):
        return ''
    expected = closed_form_cc_improvement_bpl(structure, election.k,
                                              election.l, 'exact')
    if expected != value:
        raise ConsistencyAlarm(
            'CC improvement {} differs from its closed form {}'.format(
                format_fraction(value), format_fraction(expected)))
    return format_fraction(expected)


def run_trial(params, cell, trial):
    """Generate one trial election and measure LV against AV."""
    drawn = generate_trial(params, cell, trial)
    election = drawn.election
    policy = TieBreakPolicy('random', params['seed'])
    reports = resolute_improvements(election, SWEEP_METRICS, policy,
                                    drawn.rng)

    closed_form = ''
    if cell.phi == 0:
        closed_form = _closed_form_check(election, reports['cc'].value)

    values = {}
    for name in SWEEP_METRICS:
        values[name + '_improvement'] = format_fraction(reports[name].value)
        values[name + '_improvement_decimal'] = float(reports[name].value)
    return TrialRecord(
        cell=cell.index, phi=cell.phi, g=cell.g, k=cell.k, l=cell.l,
        partition_mode=params['partition_mode'],
        approval_noise=drawn.approval_noise,
        order_dispersion=drawn.order_dispersion, trial=trial,
        seed=params['seed'], cc_closed_form=closed_form,
        party_voters='-'.join(str(x) for x in
                              drawn.profile.party_voters()),
        tie_breaks=reports['cc'].tie_breaks,
        **values)


def _run_cell(params, cell, trials):
    results = []
    for trial in range(trials):
        try:
            results.append(run_trial(params, cell, trial))
        except Exception:
            results.append(TrialErrorWrapper(cell.index, trial,
                                             params['seed']))
            break
    return results


def _run_payload(payload):
    """Worker side: unpickle a cell task, pickle its records back."""
    params, cell, trials = cloudpickle.loads(payload)
    return cloudpickle.dumps(_run_cell(params, cell, trials))


def run_sweep(config, workers=None):
    """
    Records of every trial of every cell, in canonical order.

    The first failing trial aborts the sweep with a TrialError naming
    (cell, trial, seed).
    """
    params = config.to_dict()
    cells = config.cells()
    workers = worker_count() if workers is None else workers
    payloads = [cloudpickle.dumps((params, cell, params['trials']))
                for cell in cells]
    logger.info("Sweeping %d cells x %d trials with %d worker(s)",
                len(cells), params['trials'], workers)

    if workers == 1:
        results = map(_run_payload, payloads)
        executor = None
    else:
        executor = ProcessPoolExecutor(max_workers=workers)
        results = executor.map(_run_payload, payloads)

    records = []
    try:
        for cell, result in zip(cells, results):
            for item in cloudpickle.loads(result):
                if isinstance(item, TrialErrorWrapper):
                    logger.debug("".join(item.format_error()))
                    item.raise_error()
                records.append(item)
            logger.info("Cell %d/%d done: %s", cell.index + 1, len(cells),
                        cell)
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)
    return records


def summarize(records):
    """Five-number summary of every metric, per cell."""
    frame = pd.DataFrame([r.to_row() for r in records],
                         columns=RECORD_COLUMNS)
    grouped = frame.groupby(CELL_COLUMNS, sort=False)
    parts = []
    for name in SWEEP_METRICS:
        column = grouped[name + '_improvement_decimal']
        stats = column.quantile([0, .25, .5, .75, 1]).unstack()
        stats.columns = ['min', 'q1', 'median', 'q3', 'max']
        stats.insert(0, 'trials', column.count())
        stats.insert(0, 'metric', name)
        parts.append(stats.reset_index())
    summary = pd.concat(parts, ignore_index=True)
    summary = summary.sort_values('cell', kind='stable')
    return summary.reset_index(drop=True)[SUMMARY_COLUMNS]
