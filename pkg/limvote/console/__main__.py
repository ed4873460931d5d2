# -*- coding: utf-8 -*-
# -----------------------------------------------------------------------------
# Copyright (c) 2009- LimVote Contributors
#
# Licensed under the terms of the MIT License
# (see limvote/__init__.py for details)
# -----------------------------------------------------------------------------

import sys
import os


if __name__ == '__main__':
    # 'python -m' puts the current working directory first on sys.path,
    # where a local file could shadow one of our modules.
    cwd = os.getcwd()
    if cwd in sys.path:
        sys.path.remove(cwd)

    from limvote.console import start
    try:
        start.main()
    except Exception:
        import traceback
        traceback.print_exc(file=sys.__stderr__)
        sys.__stderr__.flush()
        raise
