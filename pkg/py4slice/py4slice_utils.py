# -*- coding: utf-8 -*-

"""Utility functions useful across multiple modules.

I. Exact summation
II. Series validation
III. File and JSON helpers
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

# External library imports
import json
import math
import os
import tempfile

import numpy as np

# Internal module convenience imports
from .exceptions import SeriesError, ConfigError

# ==============================================================================
# I. Exact summation
# ------------------------------------------------------------------------------
# Every double is m * 2**(e - 53) with m a signed 53-bit integer and e >= -1073, so scaling by 2**1126 turns
# any finite double into an integer. Sums are kept as Python ints, which makes them exact, and the final
# int / int division is correctly rounded. math.fsum is correctly rounded too, so both agree bit for bit.
_MANTISSA_BITS = 53
_HALF_BITS = 26
_LOW_MASK = (1 << _HALF_BITS) - 1
_EXPONENT_OFFSET = 1073
_SCALE = 1 << (_MANTISSA_BITS + _EXPONENT_OFFSET)


class ExactSum:
    """Streaming sum of doubles with a single, correctly rounded result.

    Chunks of any size can be added in any order; ``value()`` always equals ``math.fsum`` over the concatenation
    of everything added.

    Examples:
        >>> acc = ExactSum()
        >>> acc.add([0.1, 0.2])
        >>> acc.add(0.3)
        >>> acc.value() == math.fsum([0.1, 0.2, 0.3])
        True
    """

    __slots__ = ('_total', '_count')

    def __init__(self):
        self._total = 0
        self._count = 0

    def add(self, values):
        values = np.asarray(values, dtype=np.float64).ravel()
        if values.size == 0: return
        if not np.all(np.isfinite(values)):
            raise SeriesError('cannot sum non-finite values')
        self._count += values.size

        mantissas, exponents = np.frexp(values)
        ints = np.ldexp(mantissas, _MANTISSA_BITS).astype(np.int64)
        # split so per-exponent int64 sums cannot overflow
        high = ints >> _HALF_BITS
        low = ints & _LOW_MASK

        order = np.argsort(exponents, kind='stable')
        exponents = exponents[order]
        starts = np.flatnonzero(np.r_[True, exponents[1:] != exponents[:-1]])
        high_sums = np.add.reduceat(high[order], starts)
        low_sums = np.add.reduceat(low[order], starts)

        for exponent, hi, lo in zip(exponents[starts].tolist(), high_sums.tolist(), low_sums.tolist()):
            self._total += ((hi << _HALF_BITS) + lo) << (exponent + _EXPONENT_OFFSET)

    @property
    def count(self):
        return self._count

    def value(self):
        return self._total / _SCALE if self._total else 0.0


def exact_sum(values):
    """Correctly rounded sum of a sequence of doubles (``math.fsum`` semantics)."""
    return math.fsum(np.asarray(values, dtype=np.float64).ravel().tolist())


# ==============================================================================
# II. Series validation
# ------------------------------------------------------------------------------
def as_series(values, name='series', allow_empty=False):
    """Return ``values`` as a read-only float64 array of finite, non-negative numbers."""
    arr = np.array(values, dtype=np.float64).ravel()
    if arr.size == 0 and not allow_empty:
        raise SeriesError(f'{name} is empty')
    if not np.all(np.isfinite(arr)):
        raise SeriesError(f'{name} contains non-finite values')
    if np.any(arr < 0):
        raise SeriesError(f'{name} contains negative values')
    arr.setflags(write=False)
    return arr


def paired_series(a, b, a_name='actual', b_name='gbr'):
    a = as_series(a, a_name)
    b = as_series(b, b_name)
    if a.size != b.size:
        raise SeriesError(f'length mismatch: {a_name} has {a.size} values, {b_name} has {b.size}')
    return a, b


def check_number(value, name, minimum=0.0, allow_none=False, strict=False):
    """Validate a scalar config value; raise ConfigError naming the field."""
    if value is None and allow_none: return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f'{name} must be a number, got {value!r}')
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f'{name} must be finite, got {value!r}')
    if (strict and value <= minimum) or value < minimum:
        raise ConfigError(f'{name} must be {">" if strict else ">="} {minimum}, got {value!r}')
    return value


def check_integer(value, name, minimum=0):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise ConfigError(f'{name} must be an integer, got {value!r}')
    if value < minimum:
        raise ConfigError(f'{name} must be >= {minimum}, got {value!r}')
    return int(value)


# ==============================================================================
# III. File and JSON helpers
# ------------------------------------------------------------------------------
def format_number(value):
    """Shortest decimal text that reads back as exactly ``value`` (at most 17 significant digits)."""
    if isinstance(value, (bool, np.bool_)): return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)): return str(int(value))
    return repr(float(value))


def to_json(document):
    """Serialize a document deterministically: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + '\n'


def load_json_document(path, what='document'):
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f'{what} {path} is not valid JSON: {e}')
    if not isinstance(document, dict):
        raise ConfigError(f'{what} {path} must hold a JSON object')
    return document


def write_text_atomic(path, text):
    """Write ``text`` to ``path`` through a temp file in the same directory and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(prefix='.tmp-', dir=directory)
    try:
        with os.fdopen(fd, 'w', encoding='utf-8', newline='\n') as f:
            f.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path): os.remove(tmp_path)
        raise
    return path


def reject_unknown_keys(document, allowed, what):
    unknown = sorted(set(document) - set(allowed))
    if unknown:
        raise ConfigError(f'unknown {what} field(s): {", ".join(unknown)}')
