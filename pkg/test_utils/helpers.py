# -*- coding: utf-8 -*-

"""Functions common to test suites.

The oracles here recompute costs and losses sample by sample with plain loops and ``math.fsum``, independently of
the vectorized code in the package.
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

from py4slice import *
import io
import math
import os
import shutil
import tempfile

import numpy as np


def make_trace(bitrates, stream_id='s', period=1.0, start=0):
    period_ms = int(round(period * 1000))
    return BandwidthTrace(stream_id, period, [start + i * period_ms for i in range(len(bitrates))], bitrates)


def constant_trace(value, count, stream_id='s', period=1.0):
    return make_trace([value] * count, stream_id, period)


def small_suite(count=3, duration=3600.0, seed=7):
    config = SyntheticTraceConfig(duration=duration, seed=seed)
    return generate_trace_suite(config, count)


def csv_source(text):
    return io.BytesIO(text.encode('utf-8'))


def brute_force_cost(a, gbr, p_u=0.1, p_o=30.0):
    shortfall = []
    excess = []
    for actual, reserved in zip(a, gbr):
        f_u = 1 if reserved > actual else 0
        f_o = 1 if actual > reserved else 0
        shortfall.append(f_u * (reserved - actual))
        excess.append(f_o * (actual - reserved))
    return p_u * math.fsum(shortfall) + p_o * math.fsum(excess)


def brute_force_subscription(a, gbr):
    over = [x - g for x, g in zip(a, gbr) if x > g]
    under = [g - x for x, g in zip(a, gbr) if g > x]
    return {'over_magnitude': math.fsum(over), 'over_count': len(over),
            'under_magnitude': math.fsum(under), 'under_count': len(under)}


def brute_force_data_loss(a, granted, period):
    return math.fsum(max(0.0, x - g) for x, g in zip(a, granted)) * period


def brute_force_aggregate(traces, result):
    """Per-sample aggregate actual and granted GBR rebuilt from the traces and the result's request list."""
    streams = sorted(traces, key=lambda trace: trace.stream_id)
    n = len(streams[0])
    spi = result.samples_per_interval
    actual = [math.fsum(float(trace.bitrates[t]) for trace in streams) for t in range(n)]
    granted = [result.requests[t // spi].granted_gbr for t in range(n)]
    return actual, granted


def relative_close(x, y, tolerance=1e-9):
    return abs(x - y) <= tolerance * max(1.0, abs(x), abs(y))


class TempDir:
    """Context manager yielding a scratch directory that is removed on exit."""

    def __enter__(self):
        self.path = tempfile.mkdtemp(prefix='py4slice-test-')
        return self.path

    def __exit__(self, *exc):
        shutil.rmtree(self.path, ignore_errors=True)
        return False


GOLDEN_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'tests', 'data')


def check_golden(test, name, text):
    """Compare ``text`` byte for byte with ``tests/data/<name>``.

    A missing fixture is written from ``text`` and the check passes; later runs must reproduce it exactly. Set
    PY4SLICE_UPDATE_GOLDENS=1 to rewrite fixtures after an intended change.
    """
    path = os.path.join(GOLDEN_DIR, name)
    data = text.encode('utf-8')
    if os.environ.get('PY4SLICE_UPDATE_GOLDENS') == '1' or not os.path.exists(path):
        os.makedirs(GOLDEN_DIR, exist_ok=True)
        with open(path, 'wb') as f:
            f.write(data)
        return
    with open(path, 'rb') as f:
        expected = f.read()
    test.assertEqual(expected, data, f'{name} differs from its golden fixture')
