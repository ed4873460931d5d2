# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Exceptions raised by limvote.

Every error carries the exit status the command line uses for it.
"""

# Standard library imports
import sys
import traceback


class LimVoteError(RuntimeError):
    """Base class for all limvote errors."""
    exit_code = 1


class InvalidElectionError(LimVoteError):
    pass


class InvalidCommitteeError(LimVoteError):
    pass


class UnknownRuleError(LimVoteError):
    pass


class UndefinedRatioError(LimVoteError):
    pass


class InvalidStrategyError(LimVoteError):
    pass


class InvalidConfigError(LimVoteError):
    pass


class UsageError(LimVoteError):
    pass


class SchemaError(LimVoteError):
    """A JSON document does not follow the expected schema."""

    def __init__(self, pointer, message):
        self.pointer = pointer
        super().__init__('{}: {}'.format(pointer or '/', message))


class PreconditionError(LimVoteError):
    pass


class NotPartyListError(PreconditionError):
    """The profile is not party-list; witness is a voter pair."""

    def __init__(self, witness, message=None):
        self.witness = witness
        if message is None:
            message = ('Profile is not party-list: voters {} and {} have '
                       'overlapping but unequal approvals'.format(*witness))
        super().__init__(message)


class NotLaminarError(PreconditionError):
    pass


class BlueprintError(PreconditionError):
    """A laminar blueprint node breaks the proportion condition."""

    def __init__(self, path, message):
        self.path = path
        super().__init__('{}: {}'.format(path, message))


class BudgetExceededError(LimVoteError):
    exit_code = 3


class ConsistencyAlarm(LimVoteError):
    exit_code = 2


class TrialError(LimVoteError):
    """A sweep trial failed; carries what is needed to replay it."""

    def __init__(self, cell, trial, seed, message, exit_code=1):
        self.cell = cell
        self.trial = trial
        self.seed = seed
        self.exit_code = exit_code
        super().__init__(
            'Trial failed (cell={}, trial={}, seed={}): {}'.format(
                cell, trial, seed, message))


# =============================================================================
# Error wrapper
# =============================================================================
class TrialErrorWrapper():
    """
    Exception captured inside a sweep worker.

    Keeps the formatted traceback so it survives being pickled back to
    the parent process.
    """

    def __init__(self, cell, trial, seed):
        self.cell = cell
        self.trial = trial
        self.seed = seed
        etype, error, tb = sys.exc_info()
        self.etype_name = etype.__name__
        self.message = str(error)
        self.exit_code = getattr(error, 'exit_code', 1)
        self.tb = traceback.format_list(traceback.extract_tb(tb))
        self.error_lines = traceback.format_exception_only(etype, error)

    def raise_error(self):
        """Raise the error in the parent, naming the failing trial."""
        raise TrialError(self.cell, self.trial, self.seed,
                         '{}: {}'.format(self.etype_name, self.message),
                         exit_code=self.exit_code)

    def format_error(self):
        """
        Format the error received from the worker and return a list of
        strings.
        """
        lines = (['Exception in trial {} of cell {} (seed {}):\n'.format(
                      self.trial, self.cell, self.seed)]
                 + self.tb + self.error_lines)
        return lines

    def __str__(self):
        """Get string representation."""
        return self.message

    def __repr__(self):
        """Get repr."""
        return '{}({!r})'.format(self.etype_name, self.message)
