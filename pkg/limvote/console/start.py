# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Entry point of the limvote command
"""

# Standard library imports
import argparse
import json
import logging
import os
import sys

# Local imports
from limvote import __version__
from limvote.console.commands import (
    cmd_axioms, cmd_eval, cmd_game, cmd_gen, cmd_sweep)
from limvote.console.repro import cmd_repro
from limvote.generators.config import PRESETS
from limvote.metrics.families import FAMILIES
from limvote.utils.config import debug_enabled
from limvote.utils.errors import LimVoteError, UsageError
from limvote.utils.iofuncs import save_csv, save_json


logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """Parser reporting bad arguments as a UsageError (exit status 1)."""

    def error(self, message):
        raise UsageError('{}: {}'.format(self.prog, message))


def _add_sweep_options(parser):
    parser.add_argument('--config', default=None,
                        help="Sweep config file (.json or .py)")
    parser.add_argument('--preset', default='desk', choices=sorted(PRESETS),
                        help="Base grid the config overrides")
    parser.add_argument('--seed', type=int, default=None,
                        help="Master seed override")


def make_parser():
    parser = ArgumentParser(
        prog='limvote',
        description="Limited Voting: winners, metrics, axioms, games and "
                    "synthetic sweeps.")
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + __version__)
    parser.add_argument('--out', default=None,
                        help="Output file (stdout when missing)")
    parser.add_argument('--format', default='json', choices=['json', 'csv'],
                        dest='fmt')
    parser.add_argument('--budget', type=int, default=None,
                        help="Maximum number of committees to enumerate")
    parser.add_argument('--verbose', '-v', action='store_true')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND',
                                parser_class=ArgumentParser)

    gen = sub.add_parser('gen', help="Generate an election")
    _add_sweep_options(gen)
    gen.add_argument('--cell', type=int, default=0)
    gen.add_argument('--trial', type=int, default=0)
    gen.add_argument('--family', choices=FAMILIES, default=None,
                     help="Build a worst-case family member instead")
    gen.add_argument('--size', type=int, default=None)
    gen.add_argument('-k', type=int, default=None)
    gen.add_argument('-l', type=int, default=None)
    gen.set_defaults(handler=cmd_gen)

    ev = sub.add_parser('eval', help="Winners and LV improvements")
    ev.add_argument('election')
    ev.add_argument('--rules', default='lv,av')
    ev.add_argument('--metrics', default='cc,pav,av')
    ev.add_argument('--mode', default='irresolute',
                    choices=['irresolute', 'resolute'])
    ev.add_argument('--tiebreak', default='lex', choices=['lex', 'random'])
    ev.add_argument('--seed', type=int, default=None)
    ev.add_argument('--certify', action='store_true', help=argparse.SUPPRESS)
    ev.set_defaults(handler=cmd_eval)

    ax = sub.add_parser('axioms', help="Proportionality axioms")
    ax.add_argument('election')
    ax.add_argument('--committee', default=None,
                    help="Comma separated candidate ids (LV when missing)")
    ax.add_argument('--axioms', default=None)
    ax.set_defaults(handler=cmd_axioms)

    game = sub.add_parser('game', help="Strategic LV game")
    game.add_argument('game')
    source = game.add_mutually_exclusive_group()
    source.add_argument('--profile', default=None)
    source.add_argument('--lq', action='store_true',
                        help="Use the lower-quota profile")
    game.add_argument('--epsilon', type=int, default=0)
    game.set_defaults(handler=cmd_game)

    sweep = sub.add_parser('sweep', help="Monte-Carlo sweep to csv")
    _add_sweep_options(sweep)
    sweep.set_defaults(handler=cmd_sweep)

    repro = sub.add_parser('repro', help="Replay the bundled fixtures")
    repro.set_defaults(handler=cmd_repro)
    return parser


def emit(result, args):
    """Write a command result as json or csv."""
    if args.command == 'sweep':
        print(json.dumps(result.document, indent=2))
        return
    if args.fmt == 'csv' and result.rows is not None:
        error = save_csv(result.rows, args.out or sys.stdout)
    elif args.out:
        error = save_json(result.document, args.out)
    else:
        print(json.dumps(result.document, indent=2))
        error = None
    if error is not None:
        raise UsageError('Cannot write {}: {}'.format(args.out, error))


def main(argv=None):
    try:
        parser = make_parser()
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError('A command is required; see limvote --help')
    except UsageError as err:
        print(str(err), file=sys.stderr)
        sys.exit(err.exit_code)

    level = logging.DEBUG if args.verbose or debug_enabled() else \
        logging.WARNING
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')
    if args.budget is not None:
        os.environ['LIMVOTE_BUDGET'] = str(args.budget)

    try:
        result = args.handler(args)
        emit(result, args)
    except LimVoteError as err:
        logger.error("%s", err)
        logger.debug("Details", exc_info=True)
        sys.exit(err.exit_code)
    sys.exit(result.status)


if __name__ == '__main__':
    main()
