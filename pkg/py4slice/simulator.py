# -*- coding: utf-8 -*-

"""Trace-driven replay of the adaptive slice-request loop.

Every re-prediction interval, each stream's predictor proposes a GBR, the proposals are summed into one slice
request, and a mock slice controller grants it (up to an optional capacity). The samples of the interval are then
charged against the per-stream GBRs and against the granted aggregate, and fed back to the predictors. Replay is
open loop: data lost to an undersized grant never alters what the predictors observe.

I. Simulation config
II. Mock slice controller
III. Aggregation and data loss
IV. Replay
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

# External library imports
from dataclasses import dataclass, asdict, field, fields, replace
import json
import math

import numpy as np

# Internal module imports
from .cost import CostParams, ClassicAccumulator, SubscriptionAccumulator, classic_metrics, savings_from_total, \
    subscription_metrics
from .predictors import BandwidthPredictor, PredictorConfig, normalize_technique
from .traces import BandwidthTrace, period_to_ms, resample_trace, trace_stats

# Internal module convenience imports
from .decorators import timer
from .exceptions import AlignmentError, ConfigError, SeriesError
from .py4slice_logger import log_qos_request, slice_log, detail_logger
from .py4slice_tuning import DEFAULT_INTERVAL_SECS, DEFAULT_WARMUP_INTERVALS
from .py4slice_utils import as_series, check_integer, check_number, exact_sum, load_json_document, paired_series, \
    reject_unknown_keys, to_json, write_text_atomic

SCHEMA_VERSION = 'v1'


# ==============================================================================
# I. Simulation config
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class SimConfig:
    """Replay parameters.

    ``interval`` is the re-prediction period in seconds and must be a whole multiple of the traces' sampling
    period. The first ``warmup_intervals`` intervals are replayed but left out of every reported metric; set it to
    0 to score the bootstrap interval too.
    """
    interval: float = DEFAULT_INTERVAL_SECS
    warmup_intervals: int = DEFAULT_WARMUP_INTERVALS
    slice_capacity: float = None
    cost: CostParams = field(default_factory=CostParams)
    predictor: PredictorConfig = field(default_factory=PredictorConfig)

    def __post_init__(self):
        object.__setattr__(self, 'interval', check_number(self.interval, 'interval', strict=True))
        check_integer(self.warmup_intervals, 'warmup_intervals')
        check_number(self.slice_capacity, 'slice_capacity', allow_none=True)
        if not isinstance(self.cost, CostParams):
            raise ConfigError(f'cost must be CostParams, got {type(self.cost).__name__}')
        if not isinstance(self.predictor, PredictorConfig):
            raise ConfigError(f'predictor must be PredictorConfig, got {type(self.predictor).__name__}')

    @classmethod
    def from_dict(cls, document):
        reject_unknown_keys(document, [f.name for f in fields(cls)], 'simulation config')
        document = dict(document)
        for name, config_class in (('cost', CostParams), ('predictor', PredictorConfig)):
            if name in document:
                if not isinstance(document[name], dict): raise ConfigError(f'{name} must be a JSON object')
                document[name] = config_class.from_dict(document[name])
        return cls(**document)

    def to_dict(self):
        return asdict(self)

    def with_technique(self, technique):
        return replace(self, predictor=replace(self.predictor, technique=normalize_technique(technique)))


@slice_log
def load_sim_config(path):
    """Load a ``SimConfig`` from JSON; ``cost`` and ``predictor`` are nested objects and every key is optional.

    Raises:
        ConfigError: if the document is not valid JSON, has unknown keys, or holds invalid values
        OSError: if the file can't be read
    """
    return SimConfig.from_dict(load_json_document(path, 'simulation config'))


# ==============================================================================
# II. Mock slice controller
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceRequest:
    interval_index: int
    requested_gbr: float
    granted_gbr: float
    per_stream: dict = None

    def to_dict(self):
        document = {'interval_index': self.interval_index, 'requested_gbr': self.requested_gbr,
                    'granted_gbr': self.granted_gbr}
        if self.per_stream is not None: document['per_stream'] = dict(self.per_stream)
        return document


def slice_modify(request, capacity=None):
    """Grant a GBR request the way the mock slice controller does: in full, up to ``capacity`` when set.

    Args:
        request (float): requested GBR, bits per second
        capacity (float or None): most the slice can grant, bits per second

    Returns:
        float: granted GBR

    Raises:
        SeriesError: if ``request`` is negative or not finite

    Examples:
        >>> slice_modify(10)
        10.0
        >>> slice_modify(10, capacity=8)
        8.0
    """
    if isinstance(request, bool) or not isinstance(request, (int, float)) or not math.isfinite(request) \
            or request < 0:
        raise SeriesError(f'slice request must be a finite number >= 0, got {request!r}')
    request = float(request)
    return request if capacity is None else min(request, float(capacity))


class SliceController:
    """Stand-in for the private 5G network's slice controller.

    Grants every request in full up to an optional capacity and keeps a log of all requests, which can be written
    out as JSON Lines.

    Args:
        capacity (float or None): most the slice can grant, bits per second
    """

    def __init__(self, capacity=None):
        self.capacity = check_number(capacity, 'slice_capacity', allow_none=True)
        self._log = []

    @property
    def request_log(self):
        return list(self._log)

    def slice_modify(self, requested_gbr, interval_index=None, per_stream=None):
        granted = slice_modify(requested_gbr, self.capacity)
        if interval_index is None: interval_index = len(self._log)
        entry = SliceRequest(interval_index, float(requested_gbr), granted,
                             None if per_stream is None else dict(per_stream))
        self._log.append(entry)
        log_qos_request(interval_index, entry.requested_gbr, granted, per_stream)
        return granted

    def write_qos_log(self, path):
        """Write one JSON object per request: interval_index, requested_gbr, granted_gbr, per_stream."""
        lines = [json.dumps(entry.to_dict(), sort_keys=True, allow_nan=False) for entry in self._log]
        return write_text_atomic(path, ''.join(line + '\n' for line in lines))

    def __repr__(self):
        return f'SliceController(capacity={self.capacity!r}, requests={len(self._log)})'


# ==============================================================================
# III. Aggregation and data loss
# ------------------------------------------------------------------------------

def aggregate_requests(per_stream_gbrs):
    """Sum per-stream GBRs into the single slice request.

    Raises:
        SeriesError: if the list is empty or holds negative or non-finite values

    Examples:
        >>> aggregate_requests([1, 2, 3])
        6.0
    """
    return exact_sum(as_series(per_stream_gbrs, 'per-stream GBRs'))


def account_data_loss(a, granted, sampling_period):
    """Bits that could not be carried because actual usage exceeded the granted GBR.

    Args:
        a (list or ndarray): actual bitrate per sample, bits per second
        granted (list or ndarray): granted GBR per sample, bits per second
        sampling_period (float): seconds per sample

    Returns:
        float: sum of max(0, a - granted) over the samples, times ``sampling_period``

    Raises:
        SeriesError: if the series differ in length or hold negative or non-finite values

    Examples:
        >>> account_data_loss([10], [8], 1.0)
        2.0
    """
    a, granted = paired_series(a, granted, 'actual', 'granted')
    period = check_number(sampling_period, 'sampling_period', strict=True)
    return exact_sum(np.maximum(a - granted, 0.0)) * period


def check_alignment(traces):
    """Raise AlignmentError unless all traces share sampling period, start and length."""
    first = traces[0]
    for trace in traces[1:]:
        if trace.sampling_period != first.sampling_period or trace.start != first.start or len(trace) != len(first):
            raise AlignmentError(f'traces not aligned: {first.stream_id!r} and {trace.stream_id!r} differ in '
                                 f'sampling period, start or length')


def _aggregate_actual(streams):
    if len(streams) == 1: return streams[0].bitrates
    columns = np.stack([trace.bitrates for trace in streams]).T.tolist()
    return np.array([math.fsum(column) for column in columns], dtype=np.float64)


# ==============================================================================
# IV. Replay
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class StreamLedger:
    """What one stream requested and how those requests scored against its own trace."""
    stream_id: str
    predictions: tuple
    metrics: object
    classic: object
    data_loss_bits: float
    trace_max: float
    savings_vs_static: float = None

    def to_dict(self):
        document = self.metrics.to_dict()
        document.update(predictions=list(self.predictions), classic=self.classic.to_dict(),
                        data_loss_bits=self.data_loss_bits, trace_max=self.trace_max,
                        savings_vs_static=self.savings_vs_static)
        return document


@dataclass(frozen=True)
class SimulationResult:
    technique: str
    config: SimConfig
    sampling_period: float
    samples_per_interval: int
    scored_samples: int
    requests: tuple
    metrics: object
    classic: object
    data_loss_bits: float
    static_gbr: float
    savings_vs_static: float
    per_stream: dict
    per_stream_total_cost: float

    def to_dict(self):
        aggregate = self.metrics.to_dict()
        aggregate.update(requests=[request.to_dict() for request in self.requests], classic=self.classic.to_dict(),
                         data_loss_bits=self.data_loss_bits, savings_vs_static=self.savings_vs_static)
        return {'schema_version': SCHEMA_VERSION,
                'technique': self.technique,
                'config': self.config.to_dict(),
                'sampling_period': self.sampling_period,
                'samples_per_interval': self.samples_per_interval,
                'interval_count': len(self.requests),
                'scored_samples': self.scored_samples,
                'static_gbr': self.static_gbr,
                'aggregate': aggregate,
                'per_stream': {stream_id: ledger.to_dict() for stream_id, ledger in sorted(self.per_stream.items())},
                'per_stream_total_cost': self.per_stream_total_cost}

    def to_json(self):
        return to_json(self.to_dict())

    def __repr__(self):
        return f'SimulationResult(technique={self.technique!r}, streams={len(self.per_stream)}, ' \
               f'intervals={len(self.requests)}, total_cost={self.metrics.total_cost!r})'


@slice_log
@timer
def run_simulation(traces, config=None, controller=None):
    """Replay traces through the predict / aggregate / grant loop and score the result.

    Streams are processed in ``stream_id`` order. For interval k, each stream's predictor (having observed
    intervals 0..k-1) proposes a GBR, the proposals are summed and granted by the controller, and every sample of
    interval k is charged against its stream's GBR (per-stream metrics) and against the grant (aggregate metrics).
    A trace whose samples are not evenly spaced is first resampled at its sampling period. A trailing partial
    interval is replayed and scored like any other.

    Args:
        traces (list): BandwidthTrace objects, time-aligned, with distinct stream ids
        config (SimConfig or None): replay parameters. Default is SimConfig().
        controller (SliceController or None): controller to send requests to; one with
            ``config.slice_capacity`` is created when omitted. Pass one in to keep its QoS request log.

    Returns:
        SimulationResult: per-interval requests, aggregate and per-stream metrics

    Raises:
        AlignmentError: if the traces differ in sampling period, start or length
        ConfigError: if the interval is not a whole multiple of the sampling period, stream ids repeat, or the
            warmup leaves nothing to score
        SeriesError: if the list of traces is empty

    Examples:
        >>> result = run_simulation([trace], SimConfig(predictor=PredictorConfig(technique='max')))
        >>> result.metrics.total_cost
        0.0
    """
    config = config if config is not None else SimConfig()
    if not isinstance(config, SimConfig):
        raise ConfigError(f'expected a SimConfig, got {type(config).__name__}')
    if traces is None or len(traces) == 0: raise SeriesError('no traces to simulate')
    if not all(isinstance(trace, BandwidthTrace) for trace in traces):
        raise SeriesError('every trace must be a BandwidthTrace')
    streams = sorted(traces, key=lambda trace: trace.stream_id)
    ids = [trace.stream_id for trace in streams]
    if len(set(ids)) != len(ids): raise ConfigError(f'stream ids must be distinct, got {ids}')

    streams = [trace if trace.is_uniform() else resample_trace(trace, trace.sampling_period) for trace in streams]
    check_alignment(streams)
    period = streams[0].sampling_period
    spi = _samples_per_interval(config.interval, period)
    n = len(streams[0])
    interval_count = -(-n // spi)
    scored_from = config.warmup_intervals * spi
    if scored_from >= n:
        raise ConfigError(f'warmup of {config.warmup_intervals} interval(s) leaves no samples to score')
    if controller is None: controller = SliceController(config.slice_capacity)

    stats = [trace_stats(trace) for trace in streams]
    predictors = [BandwidthPredictor(config.predictor, trace.stream_id, trace_max=stat.max,
                                     priming_sample=float(trace.bitrates[0]))
                  for trace, stat in zip(streams, stats)]

    # interval k+1 depends on k, so the loop is sequential
    per_stream_gbr = np.empty((len(streams), interval_count), dtype=np.float64)
    granted_gbr = np.empty(interval_count, dtype=np.float64)
    requests = []
    for k in range(interval_count):
        gbrs = [predictor.predict_next().requested_gbr for predictor in predictors]
        requested = aggregate_requests(gbrs)
        granted = controller.slice_modify(requested, interval_index=k, per_stream=dict(zip(ids, gbrs)))
        requests.append(SliceRequest(k, requested, granted))
        per_stream_gbr[:, k] = gbrs
        granted_gbr[k] = granted
        block = slice(k * spi, min((k + 1) * spi, n))
        for predictor, trace, gbr in zip(predictors, streams, gbrs):
            predictor.observe_interval(trace.bitrates[block], predicted_gbr=gbr)
    detail_logger.debug(f'replayed {interval_count} intervals of {spi} samples for {len(streams)} stream(s)')

    scored = slice(scored_from, n)
    ledgers = {}
    for i, (trace, stat) in enumerate(zip(streams, stats)):
        gbr_series = np.repeat(per_stream_gbr[i], spi)[:n]
        metrics = SubscriptionAccumulator(config.cost).add(trace.bitrates[scored], gbr_series[scored]).metrics()
        classic = ClassicAccumulator().add(trace.bitrates[scored], gbr_series[scored]).metrics()
        ledgers[trace.stream_id] = StreamLedger(
            stream_id=trace.stream_id, predictions=tuple(per_stream_gbr[i].tolist()), metrics=metrics,
            classic=classic, data_loss_bits=metrics.over_magnitude * period, trace_max=stat.max,
            savings_vs_static=_savings(metrics, stat.max))

    actual = _aggregate_actual(streams)[scored]
    granted_series = np.repeat(granted_gbr, spi)[:n][scored]
    metrics = subscription_metrics(actual, granted_series, config.cost)
    static_gbr = exact_sum([stat.max for stat in stats])
    return SimulationResult(
        technique=config.predictor.technique, config=config, sampling_period=period, samples_per_interval=spi,
        scored_samples=metrics.sample_count, requests=tuple(requests), metrics=metrics,
        classic=classic_metrics(actual, granted_series), data_loss_bits=account_data_loss(actual, granted_series, period),
        static_gbr=static_gbr, savings_vs_static=_savings(metrics, static_gbr), per_stream=ledgers,
        per_stream_total_cost=exact_sum([ledger.metrics.total_cost for ledger in ledgers.values()]))


def _samples_per_interval(interval, sampling_period):
    period_ms = period_to_ms(sampling_period)
    interval_ms = interval * 1000
    if interval_ms < period_ms:
        raise ConfigError(f'interval ({interval!r} s) is shorter than the sampling period ({sampling_period!r} s)')
    spi = int(round(interval_ms / period_ms))
    if abs(spi * period_ms - interval_ms) > 1e-6:
        raise ConfigError(f'interval ({interval!r} s) is not a multiple of the sampling period ({sampling_period!r} s)')
    return spi


def _savings(metrics, static_gbr):
    return savings_from_total(metrics.reserved_total, metrics.sample_count, static_gbr) if static_gbr > 0 else None
