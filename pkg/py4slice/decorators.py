# -*- coding: utf-8 -*-

"""Decorators useful for composing aspects onto py4slice functions and test cases.
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

# External library imports
import functools
import time

# Internal module convenience imports
from .py4slice_logger import detail_logger, summary_logger


def print_entry_exit(func):
    """Announce entry into and exit from a function (used on every test case)"""

    @functools.wraps(func)
    def wrapper_entry_exit(*args, **kwargs):
        summary_logger.info(f"Into {func.__name__}()")
        try:
            value = func(*args, **kwargs)
            summary_logger.info(f"Out of {func.__name__!r}")
            return value
        except Exception as e:
            summary_logger.info(f"{func.__name__!r} exception {e!r}")
            raise

    return wrapper_entry_exit


def timer(func):
    """Log the runtime of the decorated function to the detail log"""

    @functools.wraps(func)
    def wrapper_timer(*args, **kwargs):
        start_time = time.perf_counter()
        try:
            return func(*args, **kwargs)
        finally:
            run_time = time.perf_counter() - start_time
            detail_logger.info(f"Finished {func.__name__!r} in {run_time:.4f} secs")

    return wrapper_timer
