# -*- coding:utf-8 -*-

""" Interface for py4slice: trace-driven GBR prediction for 5G network slices.
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

from .exceptions import *
from .traces import *
from .predictors import *
from .cost import *
from .simulator import *
from .cli import *
from .py4slice_utils import *
from .decorators import *

# Note that use of "import" statement project wide per advice of:
# https://stackoverflow.com/questions/44834/can-someone-explain-all-in-python
# http://effbot.org/zone/import-confusion.htm
