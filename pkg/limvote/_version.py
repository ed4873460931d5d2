# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""Version File."""

VERSION_INFO = (0, 1, 0, 'dev0')
__version__ = '.'.join(map(str, VERSION_INFO))
