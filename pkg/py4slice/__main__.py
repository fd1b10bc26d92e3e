# -*- coding:utf-8 -*-

"""Allow ``python -m py4slice``."""

import sys

from .cli import main

sys.exit(main())
