# -*- coding: utf-8 -*-

"""Functions common to test suites.
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

from .helpers import *
