# -*- coding: utf-8 -*-

"""Logging configuration values that can be set by a user.
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

# Log level choices are here: https://docs.python.org/3/howto/logging.html#logging-levels

_SUMMARY_LOG_LEVEL = 'INFO' # 'DEBUG' to trace calls, 'NOTSET' to turn off, 'INFO' for progress lines only
_SUMMARY_ENABLE_QOS_REQUESTS = False

_DETAIL_LOG_LEVEL = 'DEBUG' # 'DEBUG' to turn on, 'NOTSET' to turn off
_DETAIL_ENABLE_QOS_REQUESTS = True
_DETAIL_LOG_DIR = 'logs'
_DETAIL_LOG_NAME = 'py4slice.log'
