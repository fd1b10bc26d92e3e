# -*- coding: utf-8 -*-

"""Error classes for py4slice.

Every error raised by the package derives from ``SliceError``. Errors caused by bad input (files, configs,
series handed to the cost functions) derive from ``SliceValidationError``. The ``exit_code`` attribute is what the
command line surfaces for each class.
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""


class SliceError(Exception):
    exit_code = 1


class SliceValidationError(SliceError):
    exit_code = 2


class ConfigError(SliceValidationError):
    pass


class SeriesError(SliceValidationError):
    pass


class AlignmentError(SliceValidationError):
    pass


class EmptyIntervalError(SliceValidationError):
    pass


# ------------------------------------------------------------------------------
# Trace ingestion errors. Line numbers are 1-based and count the header as line 1.
class TraceError(SliceValidationError):
    pass


class EmptyTraceError(TraceError):
    pass


class _LineError(TraceError):
    reason = 'bad row'

    def __init__(self, line, detail=None):
        self.line = line
        self.detail = detail
        message = f'{self.reason} at line {line}'
        if detail: message += f': {detail}'
        super().__init__(message)


class MalformedRowError(_LineError):
    reason = 'malformed row'


class NegativeBitrateError(_LineError):
    reason = 'negative bitrate'


class DuplicateTimestampError(_LineError):
    reason = 'duplicate timestamp'


class TraceGapError(_LineError):
    reason = 'gap too large'
