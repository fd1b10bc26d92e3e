# -*- coding: utf-8 -*-

"""Functions for ingesting, resampling, synthesizing and summarizing per-stream bandwidth traces.

A trace is the bitrate profile of one camera (or any other stream), sampled on a uniform grid. Traces come from
CSV files with the header ``timestamp_ms,bitrate_bps`` or from a seeded synthetic generator that mimics the
day/night swing and short bursts of surveillance video traffic.

I. Trace types
II. CSV ingestion and serialization
III. Resampling and statistics
IV. Synthetic traces
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

# External library imports
from dataclasses import dataclass, asdict, fields
import io
import math
import os
import re

import numpy as np
import pandas as pd

# Internal module convenience imports
from .exceptions import ConfigError, TraceError, EmptyTraceError, MalformedRowError, NegativeBitrateError, \
    DuplicateTimestampError, TraceGapError
from .py4slice_logger import slice_log
from .py4slice_tuning import DEFAULT_SAMPLING_PERIOD_SECS, MAX_GAP_PERIODS, SYNTHETIC_BITRATE_DECIMALS
from .py4slice_utils import check_number, check_integer, exact_sum, load_json_document, reject_unknown_keys, \
    write_text_atomic

CSV_HEADER = ('timestamp_ms', 'bitrate_bps')
_INT64_MIN = float(np.iinfo(np.int64).min)


def period_to_ms(period):
    """Convert a period in seconds to whole milliseconds; reject periods that are not whole milliseconds."""
    if isinstance(period, bool) or not isinstance(period, (int, float)) or not math.isfinite(period) or period <= 0:
        raise ConfigError(f'sampling period must be > 0 seconds, got {period!r}')
    period_ms = int(round(period * 1000))
    if period_ms <= 0 or abs(period * 1000 - period_ms) > 1e-6:
        raise ConfigError(f'sampling period must be a whole number of milliseconds, got {period!r}')
    return period_ms


# ==============================================================================
# I. Trace types
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class BandwidthSample:
    timestamp: int
    bitrate: float


@dataclass(frozen=True)
class TraceStats:
    min: float
    max: float
    mean: float
    sample_count: int


class BandwidthTrace:
    """Immutable bitrate time series for one stream.

    Timestamps are integer milliseconds, strictly increasing; bitrates are finite bits per second, never negative.
    The arrays are stored read-only, so a trace can be shared freely between readers.

    Args:
        stream_id (str): Name of the stream, e.g. the camera the trace came from
        sampling_period (float): Sampling period in seconds (whole milliseconds)
        timestamps (list or ndarray): Sample times in integer milliseconds
        bitrates (list or ndarray): Bitrates in bits per second

    Raises:
        EmptyTraceError: if there are no samples
        TraceError: if timestamps are not strictly increasing, or a bitrate is negative or not finite
        ConfigError: if the sampling period is not a positive whole number of milliseconds
    """

    __slots__ = ('_stream_id', '_sampling_period', '_timestamps', '_bitrates')

    def __init__(self, stream_id, sampling_period, timestamps, bitrates):
        period_to_ms(sampling_period)
        ts = np.array(timestamps, dtype=np.int64).ravel()
        br = np.array(bitrates, dtype=np.float64).ravel()
        if ts.size == 0: raise EmptyTraceError(f'trace {stream_id!r} has no samples')
        if ts.size != br.size:
            raise TraceError(f'trace {stream_id!r} has {ts.size} timestamps but {br.size} bitrates')
        if np.any(np.diff(ts) <= 0):
            raise TraceError(f'trace {stream_id!r} timestamps are not strictly increasing')
        if not np.all(np.isfinite(br)) or np.any(br < 0):
            raise TraceError(f'trace {stream_id!r} has negative or non-finite bitrates')
        ts.setflags(write=False)
        br.setflags(write=False)
        self._stream_id = str(stream_id)
        self._sampling_period = float(sampling_period)
        self._timestamps = ts
        self._bitrates = br

    stream_id = property(lambda self: self._stream_id)
    sampling_period = property(lambda self: self._sampling_period)
    timestamps = property(lambda self: self._timestamps)
    bitrates = property(lambda self: self._bitrates)

    @property
    def sampling_period_ms(self):
        return period_to_ms(self._sampling_period)

    @property
    def samples(self):
        return [BandwidthSample(int(t), float(b)) for t, b in zip(self._timestamps, self._bitrates)]

    @property
    def start(self):
        return int(self._timestamps[0])

    def is_uniform(self):
        return bool(np.all(np.diff(self._timestamps) == self.sampling_period_ms))

    def __len__(self):
        return int(self._timestamps.size)

    def __eq__(self, other):
        if not isinstance(other, BandwidthTrace): return NotImplemented
        return self._stream_id == other._stream_id and self._sampling_period == other._sampling_period and \
            np.array_equal(self._timestamps, other._timestamps) and np.array_equal(self._bitrates, other._bitrates)

    __hash__ = None

    def __repr__(self):
        return f'BandwidthTrace(stream_id={self._stream_id!r}, sampling_period={self._sampling_period!r}, ' \
               f'samples={len(self)})'


# ==============================================================================
# II. CSV ingestion and serialization
# ------------------------------------------------------------------------------

@slice_log
def parse_trace_csv(source, stream_id=None, sampling_period=None):
    """Read a trace from CSV text with the header ``timestamp_ms,bitrate_bps``.

    Rows may appear in any order; they are sorted by timestamp. Decimal bitrates are allowed; timestamps must be
    whole milliseconds. When ``sampling_period`` is not given it is inferred as the smallest spacing between
    consecutive timestamps (1 second for a single-sample trace).

    Args:
        source (str or file): Path to a CSV file, or a binary or text stream holding CSV
        stream_id (str): Name for the trace. Default is the file name without extension, or 'stream'.
        sampling_period (float or None): Sampling period in seconds. Default is inferred.

    Returns:
        BandwidthTrace: samples sorted by timestamp

    Raises:
        EmptyTraceError: if the file has no data rows
        TraceError: if the file is not UTF-8 text
        MalformedRowError: if the header is wrong or a row cannot be parsed, or a timestamp is out of range (the
            line number is reported)
        NegativeBitrateError: if a bitrate is below zero
        DuplicateTimestampError: if two rows share a timestamp
        TraceGapError: if consecutive samples are more than 100 sampling periods apart

    Examples:
        >>> parse_trace_csv(io.BytesIO(b'timestamp_ms,bitrate_bps\\n0,1000\\n1000,2000'))
        BandwidthTrace(stream_id='stream', sampling_period=1.0, samples=2)
        >>> parse_trace_csv('traces/stream_0.csv')
        BandwidthTrace(stream_id='stream_0', sampling_period=1.0, samples=86400)
    """
    if stream_id is None:
        stream_id = os.path.splitext(os.path.basename(source))[0] if isinstance(source, (str, os.PathLike)) \
            else 'stream'

    try:
        df = pd.read_csv(source, dtype=str, keep_default_na=False, skip_blank_lines=False, skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise EmptyTraceError(f'trace {stream_id!r} is empty')
    except UnicodeDecodeError as e:
        raise TraceError(f'trace {stream_id!r} is not UTF-8 text: {e.reason} at byte {e.start}')
    except pd.errors.ParserError as e:
        match = re.search(r'line (\d+)', str(e))
        raise MalformedRowError(int(match.group(1)) if match else 0, 'wrong number of fields')
    df = df.fillna('')

    if tuple(col.strip() for col in df.columns) != CSV_HEADER:
        raise MalformedRowError(1, 'expected header ' + ','.join(CSV_HEADER))

    # Data row i sits on file line i + 2; blank lines are kept as rows so numbering stays true
    df['line'] = np.arange(len(df)) + 2
    blank = (df[CSV_HEADER[0]].str.strip() == '') & (df[CSV_HEADER[1]].str.strip() == '')
    df = df[~blank]
    if df.empty: raise EmptyTraceError(f'trace {stream_id!r} has no samples')

    timestamps = df[CSV_HEADER[0]].map(_parse_timestamp)
    bitrates = df[CSV_HEADER[1]].map(_parse_bitrate)
    for line, ts, br in zip(df['line'], timestamps, bitrates):
        if ts is None or br is None:
            raise MalformedRowError(int(line), 'expected an integer timestamp and a numeric bitrate')
        if br < 0:
            raise NegativeBitrateError(int(line), f'{br!r}')

    frame = pd.DataFrame({'ts': timestamps.astype(np.int64).to_numpy(),
                          'br': bitrates.astype(np.float64).to_numpy(),
                          'line': df['line'].to_numpy()}).sort_values('ts', kind='stable')
    ts = frame['ts'].to_numpy()
    steps = np.diff(ts)
    if np.any(steps == 0):
        raise DuplicateTimestampError(int(frame['line'].to_numpy()[1:][steps == 0][0]), str(ts[1:][steps == 0][0]))

    if sampling_period is None:
        period_ms = int(steps.min()) if steps.size else period_to_ms(DEFAULT_SAMPLING_PERIOD_SECS)
        sampling_period = period_ms / 1000
    else:
        period_ms = period_to_ms(sampling_period)

    too_far = steps > MAX_GAP_PERIODS * period_ms
    if np.any(too_far):
        raise TraceGapError(int(frame['line'].to_numpy()[1:][too_far][0]),
                            f'{int(steps[too_far][0])} ms exceeds {MAX_GAP_PERIODS} sampling periods')

    return BandwidthTrace(stream_id, sampling_period, ts, frame['br'].to_numpy())


def _parse_timestamp(text):
    try:
        value = float(text)
    except ValueError:
        return None
    if not math.isfinite(value) or value != int(value) or not _INT64_MIN <= value < -_INT64_MIN: return None
    return int(value)


def _parse_bitrate(text):
    try:
        value = float(text)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def serialize_trace_csv(trace):
    """Render a trace as CSV text that ``parse_trace_csv`` reads back to an identical trace."""
    lines = [','.join(CSV_HEADER)]
    lines.extend(f'{t},{b!r}' for t, b in zip(trace.timestamps.tolist(), trace.bitrates.tolist()))
    return '\n'.join(lines) + '\n'


@slice_log
def write_trace_csv(trace, path):
    """Write a trace to ``path`` as CSV (UTF-8, LF line endings), atomically.

    Args:
        trace (BandwidthTrace): trace to write
        path (str): destination file

    Returns:
        str: ``path``

    Raises:
        OSError: if the destination can't be written
    """
    return write_text_atomic(path, serialize_trace_csv(trace))


# ==============================================================================
# III. Resampling and statistics
# ------------------------------------------------------------------------------

@slice_log
def resample_trace(trace, period):
    """Put a trace on a uniform grid using last-observation-carried-forward.

    The grid starts at the first timestamp and steps by exactly ``period``; it ends at the first grid point at or
    after the last sample. Each grid point takes the most recent sample at or before it. Resampling a uniform
    trace at its own period returns an identical trace.

    Args:
        trace (BandwidthTrace): trace to resample
        period (float): grid spacing in seconds

    Returns:
        BandwidthTrace: uniformly sampled trace with ``sampling_period == period``

    Raises:
        ConfigError: if ``period`` is not > 0 or not a whole number of milliseconds

    Examples:
        >>> resample_trace(BandwidthTrace('s', 1.0, [0, 2500], [10, 20]), 1.0).samples
        [BandwidthSample(timestamp=0, bitrate=10.0), BandwidthSample(timestamp=1000, bitrate=10.0),
         BandwidthSample(timestamp=2000, bitrate=10.0), BandwidthSample(timestamp=3000, bitrate=20.0)]
    """
    period_ms = period_to_ms(period)
    ts = trace.timestamps
    span = int(ts[-1] - ts[0])
    steps = -(-span // period_ms)
    grid = ts[0] + np.arange(steps + 1, dtype=np.int64) * period_ms
    held = np.searchsorted(ts, grid, side='right') - 1
    return BandwidthTrace(trace.stream_id, period, grid, trace.bitrates[held])


def trace_stats(trace):
    """Exact minimum, maximum and mean bitrate of a trace.

    The maximum is the worst-case bandwidth a static, one-time reservation has to cover.

    Args:
        trace (BandwidthTrace): trace to summarize

    Returns:
        TraceStats: min, max and mean in bits per second, and the sample count

    Raises:
        EmptyTraceError: if the trace has no samples

    Examples:
        >>> trace_stats(BandwidthTrace('s', 1.0, [0, 1000, 2000], [3, 5, 4]))
        TraceStats(min=3.0, max=5.0, mean=4.0, sample_count=3)
    """
    if trace is None or len(trace) == 0: raise EmptyTraceError('cannot summarize an empty trace')
    br = trace.bitrates
    low, high = float(br.min()), float(br.max())
    mean = min(max(exact_sum(br) / br.size, low), high)
    return TraceStats(min=low, max=high, mean=mean, sample_count=int(br.size))


# ==============================================================================
# IV. Synthetic traces
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class SyntheticTraceConfig:
    """Parameters of the synthetic bitrate model.

    bitrate(t) = max(0, base_rate + diurnal_amplitude * sin(2 pi t / diurnal_period) + burst(t) + noise(t)),
    where bursts are rectangular pulses of ``burst_magnitude`` lasting ``burst_duration`` seconds, placed uniformly
    at random with ``burst_rate`` expected bursts per hour, and noise is Gaussian with ``noise_stddev``.
    """
    duration: float = 86400.0
    sampling_period: float = 1.0
    base_rate: float = 4.0e6
    diurnal_amplitude: float = 2.0e6
    diurnal_period: float = 86400.0
    burst_rate: float = 1.0
    burst_magnitude: float = 1.0e6
    burst_duration: float = 60.0
    noise_stddev: float = 5.0e4
    seed: int = 42

    def __post_init__(self):
        for f in fields(self):
            if f.name == 'seed':
                check_integer(self.seed, 'seed', minimum=-(1 << 63))
                if self.seed >= (1 << 64): raise ConfigError(f'seed must fit in 64 bits, got {self.seed!r}')
            elif f.name in ('sampling_period', 'diurnal_period'):
                check_number(getattr(self, f.name), f.name, strict=True)
            else:
                check_number(getattr(self, f.name), f.name)
        period_to_ms(self.sampling_period)
        if self.duration < self.sampling_period:
            raise ConfigError(f'duration ({self.duration!r}) must be >= sampling_period ({self.sampling_period!r})')

    @classmethod
    def from_dict(cls, document):
        reject_unknown_keys(document, [f.name for f in fields(cls)], 'synthetic trace config')
        return cls(**document)

    def to_dict(self):
        return asdict(self)


@slice_log
def load_synthetic_config(path):
    """Load a ``SyntheticTraceConfig`` from a flat JSON document whose keys are the config field names.

    Raises:
        ConfigError: if the document is not valid JSON, has unknown keys, or holds invalid values
        OSError: if the file can't be read
    """
    return SyntheticTraceConfig.from_dict(load_json_document(path, 'synthetic trace config'))


@slice_log
def generate_synthetic_trace(config, stream_id='synthetic'):
    """Generate a trace from the sinusoid + bursts + Gaussian noise model.

    The result depends only on ``config``: the same config (seed included) always yields an identical trace.
    Bitrates are rounded to 1/1000 bit/s.

    Args:
        config (SyntheticTraceConfig): model parameters and seed
        stream_id (str): name of the generated stream

    Returns:
        BandwidthTrace: ``floor(duration / sampling_period)`` samples starting at timestamp 0

    Raises:
        ConfigError: if ``config`` is not a valid SyntheticTraceConfig

    Examples:
        >>> cfg = SyntheticTraceConfig(diurnal_amplitude=0, burst_rate=0, noise_stddev=0, base_rate=5e6)
        >>> trace_stats(generate_synthetic_trace(cfg))
        TraceStats(min=5000000.0, max=5000000.0, mean=5000000.0, sample_count=86400)
    """
    if not isinstance(config, SyntheticTraceConfig):
        raise ConfigError(f'expected a SyntheticTraceConfig, got {type(config).__name__}')

    period_ms = period_to_ms(config.sampling_period)
    count = int(round(config.duration * 1000)) // period_ms
    t = np.arange(count, dtype=np.float64) * (period_ms / 1000)
    rng = np.random.default_rng(config.seed & 0xFFFFFFFFFFFFFFFF)

    bitrate = np.full(count, config.base_rate, dtype=np.float64)
    if config.diurnal_amplitude:
        bitrate += config.diurnal_amplitude * np.sin(2 * np.pi * t / config.diurnal_period)

    # bursts are drawn before noise so the noise stream does not depend on burst placement details
    burst_count = rng.poisson(config.burst_rate * config.duration / 3600) if config.burst_rate else 0
    if burst_count:
        starts = np.sort(rng.uniform(0, config.duration, burst_count))
        begin = np.searchsorted(t, starts, side='left')
        end = np.searchsorted(t, starts + config.burst_duration, side='left')
        pulse = np.zeros(count + 1, dtype=np.float64)
        np.add.at(pulse, begin, config.burst_magnitude)
        np.add.at(pulse, end, -config.burst_magnitude)
        bitrate += np.cumsum(pulse)[:count]

    if config.noise_stddev:
        bitrate += rng.normal(0.0, config.noise_stddev, count)

    bitrate = np.round(np.maximum(bitrate, 0.0), SYNTHETIC_BITRATE_DECIMALS) + 0.0
    return BandwidthTrace(stream_id, config.sampling_period, np.arange(count, dtype=np.int64) * period_ms, bitrate)


def generate_trace_suite(config, count):
    """Generate ``count`` synthetic streams; stream ``i`` is named ``stream_<i>`` and uses seed ``config.seed + i``.

    Raises:
        ConfigError: if ``count`` < 1 or the config is invalid
    """
    count = check_integer(count, 'count', minimum=1)
    return [generate_synthetic_trace(_with_seed(config, config.seed + i), stream_id=f'stream_{i}')
            for i in range(count)]


def _with_seed(config, seed):
    document = config.to_dict()
    document['seed'] = seed
    return SyntheticTraceConfig(**document)
