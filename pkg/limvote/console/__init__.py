# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

"""
Command line interface
"""
