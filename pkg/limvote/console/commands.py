# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Subcommand handlers.

Each handler takes the parsed arguments and returns a CommandResult: a
json-ready document, the same data as csv rows, and an exit status.
"""

# Standard library imports
from collections import namedtuple
import logging
import os.path as osp

# Local imports
from limvote.axioms.checks import (
    AXIOMS, check_laminar_proportionality, check_lower_quota)
from limvote.console.sweep import RECORD_COLUMNS, run_sweep, summarize
from limvote.election.model import check_committee, validate_election
from limvote.election.structure import detect_party_structure, is_laminar
from limvote.games.lvgame import (
    LVGame, game_outcome, lq_profile, profile_from_dict, profile_to_dict,
    quota_gap, verify_equilibrium)
from limvote.generators.config import load_sweep_config, make_sweep_config
from limvote.generators.pipeline import generate_trial
from limvote.metrics.families import worst_case_family
from limvote.metrics.improvement import (
    METRICS, cc_guarantee_ratio, improvement, laminar_cc_check,
    resolute_improvements)
from limvote.oracle.bruteforce import oracle_argmax
from limvote.rules.winners import (
    RULES, TieBreakPolicy, make_resolute, winners)
from limvote.utils.errors import (
    BudgetExceededError, ConsistencyAlarm, SchemaError, UsageError)
from limvote.utils.iofuncs import (
    election_to_dict, load_election, load_json, save_csv)
from limvote.utils.misc import format_committee, format_fraction


logger = logging.getLogger(__name__)

CommandResult = namedtuple('CommandResult', ['document', 'rows', 'status'])

EVAL_METRICS = tuple(METRICS) + ('cc-optimum', 'laminar-cc')

DEFAULT_AXIOMS = ('jr', 'pjr', 'ejr', 'lower-quota',
                  'laminar-proportionality')


def split_names(value, allowed, what):
    """Comma separated names, checked against `allowed`."""
    names = [name.strip() for name in value.split(',') if name.strip()]
    for name in names:
        if name not in allowed:
            raise UsageError('Unknown {} {!r}; choose from {}'.format(
                what, name, ', '.join(allowed)))
    return names


def parse_committee(value):
    try:
        return frozenset(int(c) for c in value.split(',') if c.strip())
    except ValueError:
        raise UsageError('A committee is a comma separated list of '
                         'candidate ids, got {!r}'.format(value))


def _sweep_config(args):
    if args.config:
        return load_sweep_config(args.config, args.preset)
    return make_sweep_config(None, args.preset)


# =============================================================================
# ---- gen
# =============================================================================
def cmd_gen(args):
    """Build a worst-case family member or replay one sweep trial."""
    if args.family:
        if args.k is None or args.l is None or args.size is None:
            raise UsageError('--family needs --size, -k and -l')
        election = worst_case_family(args.family, args.size, args.k, args.l)
        meta = {'family': args.family, 'size': args.size}
        order = None
    else:
        overrides = {} if args.seed is None else {'seed': args.seed}
        config = _sweep_config(args)
        if overrides:
            config = make_sweep_config(dict(config.to_dict(), **overrides))
        cells = config.cells()
        if not 0 <= args.cell < len(cells):
            raise UsageError('--cell must lie in 0..{}'.format(
                len(cells) - 1))
        cell = cells[args.cell]
        drawn = generate_trial(config, cell, args.trial)
        election, order = drawn.election, drawn.order
        meta = {'cell': cell._asdict(), 'trial': args.trial,
                'seed': config.seed}

    document = election_to_dict(election, order, meta)
    rows = [{'voter': i,
             'approvals': ' '.join(str(c) for c in sorted(a)),
             'ballot': ' '.join(str(c) for c in sorted(b))}
            for i, (a, b) in enumerate(zip(election.approvals,
                                           election.ballots))]
    return CommandResult(document, rows, 0)


# =============================================================================
# ---- eval
# =============================================================================
def _winner_entry(ws, committee):
    try:
        size = len(ws)
    except BudgetExceededError:
        size = None
    return {
        'rule': ws.rule,
        'score': format_fraction(ws.score),
        'winning_committees': size,
        'committee': format_committee(committee),
    }


def _certify(election, rule, ws):
    """Compare a winner set with the exhaustive oracle."""
    if rule in ('lpav', 'lsav'):
        reference = oracle_argmax(election.ballot_frame, rule[1:])
    else:
        reference = oracle_argmax(election, rule)
    if (set(ws) != set(reference) or ws.score != reference.score):
        raise ConsistencyAlarm(
            '{} winners differ from the exhaustive search'.format(rule))
    logger.debug("Certified %s: %d committees", rule, len(reference))


def cmd_eval(args):
    doc = load_election(args.election)
    rules = split_names(args.rules, RULES, 'rule')
    metrics = split_names(args.metrics, EVAL_METRICS, 'metric')
    needs_ballots = (any(r in ('lv', 'lpav', 'lsav') for r in rules)
                     or bool(metrics))
    election = doc.require_election() if needs_ballots else doc.frame
    report = validate_election(election) if needs_ballots else None
    if report is not None and not report.is_valid:
        raise SchemaError('/ballots', str(report))

    policy = TieBreakPolicy(args.tiebreak, args.seed or 0)
    rng = policy.rng() if policy.mode == 'random' else None

    document = {'winners': [], 'metrics': [], 'tiebreak': policy.to_dict()}
    rows = []
    for rule in rules:
        ws = winners(election, rule, args.budget)
        if args.certify:
            _certify(election, rule, ws)
        entry = _winner_entry(ws, make_resolute(ws, policy, rng))
        document['winners'].append(entry)
        rows.append({'kind': 'winners', 'name': rule,
                     'value': entry['score'],
                     'committee': ' '.join(map(str, entry['committee']))})

    plain = [m for m in metrics if m in METRICS]
    reports = []
    if args.mode == 'resolute' and plain:
        reports += resolute_improvements(election, plain, policy).values()
    else:
        reports += [improvement(election, m, args.mode) for m in plain]
    if 'cc-optimum' in metrics:
        reports.append(cc_guarantee_ratio(election, args.budget))
    if 'laminar-cc' in metrics:
        if doc.order is None:
            raise SchemaError('/order', 'laminar-cc needs an order')
        reports.append(laminar_cc_check(election, doc.order))

    for report in reports:
        entry = report.to_dict()
        document['metrics'].append(entry)
        rows.append({'kind': 'metric', 'name': entry['metric'],
                     'value': entry['value'],
                     'committee': ' '.join(
                         map(str, entry['committees'].get('lv', [])))})
    return CommandResult(document, rows, 0)


# =============================================================================
# ---- axioms
# =============================================================================
def cmd_axioms(args):
    doc = load_election(args.election)
    frame = doc.frame
    if args.committee:
        committee = check_committee(frame, parse_committee(args.committee))
    else:
        committee = winners(doc.require_election(), 'lv').first()

    explicit = args.axioms is not None
    names = (split_names(args.axioms, DEFAULT_AXIOMS, 'axiom') if explicit
             else list(DEFAULT_AXIOMS))

    verdicts = []
    skipped = []
    for name in names:
        if name in AXIOMS:
            verdicts.append(AXIOMS[name](frame, committee))
        elif name == 'lower-quota':
            structure = detect_party_structure(frame)
            if not structure and not explicit:
                skipped.append(name)
                continue
            verdicts.append(check_lower_quota(structure, frame.n, frame.k,
                                              committee))
        elif not explicit and not is_laminar(frame):
            skipped.append(name)
        else:
            verdicts.append(check_laminar_proportionality(frame, committee))

    document = {
        'committee': format_committee(committee),
        'verdicts': [v.to_dict() for v in verdicts],
        'skipped': skipped,
    }
    rows = [{'axiom': v.axiom, 'holds': v.holds,
             'voters': '' if v.witness is None
             else ' '.join(map(str, v.witness.voters))}
            for v in verdicts]
    return CommandResult(document, rows, 0)


# =============================================================================
# ---- game
# =============================================================================
def cmd_game(args):
    game = LVGame.from_frame(load_election(args.game).frame)
    if args.lq:
        profile = lq_profile(game)
    elif args.profile:
        data, error = load_json(args.profile)
        if error is not None:
            raise SchemaError('', 'cannot read {}: {}'.format(
                args.profile, error))
        profile = profile_from_dict(data)
    else:
        raise UsageError('game needs --profile or --lq')

    outcome = game_outcome(game, profile)
    verdict = verify_equilibrium(game, profile, args.epsilon)
    ws = outcome.winners
    document = {
        'profile': profile_to_dict(profile),
        'tallies': list(outcome.tallies),
        'winners': {'locked': sorted(ws.locked), 'tied': list(ws.tied),
                    'slots': ws.slots},
        'utilities': list(outcome.utilities),
        'quota_gap': quota_gap(game),
        'equilibrium': verdict.to_dict(),
    }
    rows = [{'party': i, 'utility': u, 'best_response': b,
             'gain': b - u}
            for i, (u, b) in enumerate(zip(verdict.utilities,
                                           verdict.best_utilities))]
    return CommandResult(document, rows, 0)


# =============================================================================
# ---- sweep
# =============================================================================
def summary_path(out):
    stem, _ = osp.splitext(out)
    return stem + '.summary.csv'


def cmd_sweep(args):
    if not args.out:
        raise UsageError('sweep needs --out')
    config = _sweep_config(args)
    if args.seed is not None:
        config = make_sweep_config(dict(config.to_dict(), seed=args.seed))

    records = run_sweep(config)
    rows = [r.to_row() for r in records]
    error = save_csv(rows, args.out, columns=RECORD_COLUMNS)
    if error is None:
        error = save_csv(summarize(records), summary_path(args.out))
    if error is not None:
        raise UsageError('Cannot write the sweep results: {}'.format(error))

    document = {'records': len(records), 'out': args.out,
                'summary': summary_path(args.out),
                'config': config.to_dict()}
    return CommandResult(document, None, 0)


