# -*- coding: utf-8 -*-

"""Per-stream guaranteed-bit-rate (GBR) predictors.

A ``BandwidthPredictor`` is fed the samples of each elapsed re-prediction interval and answers what GBR to request
for the next one. Techniques:

* ``max``: the highest bitrate seen in the previous interval.
* ``modified_max``: ``max`` pushed up by the mean overshoot when any sample in the last ``window_t`` intervals
  exceeded the GBR in force, otherwise pulled down by the mean undershoot.
* ``static_worst_case``: the whole-trace maximum, requested once and kept.
* ``moving_average``, ``ewma``, ``linreg``: classical forecasts of the per-interval peak.

I. Predictor types
II. The predictor
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

# External library imports
from collections import deque
from dataclasses import dataclass, asdict, fields
import math

import numpy as np

# Internal module convenience imports
from .exceptions import ConfigError, EmptyIntervalError, SeriesError
from .py4slice_tuning import BOOTSTRAP_FACTOR
from .py4slice_utils import check_number, check_integer, exact_sum, reject_unknown_keys

STATIC_WORST_CASE = 'static_worst_case'
MAX = 'max'
MODIFIED_MAX = 'modified_max'
MOVING_AVERAGE = 'moving_average'
EWMA = 'ewma'
LINREG = 'linreg'

TECHNIQUES = (STATIC_WORST_CASE, MAX, MODIFIED_MAX, MOVING_AVERAGE, EWMA, LINREG)
BASELINE_TECHNIQUES = (STATIC_WORST_CASE, MOVING_AVERAGE, EWMA, LINREG)
TECHNIQUE_ALIASES = {'static': STATIC_WORST_CASE}


def normalize_technique(name):
    """Map a technique name (or alias) to its canonical name.

    Raises:
        ConfigError: if the name is not a known technique

    Examples:
        >>> normalize_technique('static')
        'static_worst_case'
    """
    if not isinstance(name, str):
        raise ConfigError(f'technique must be a string, got {name!r}')
    canonical = TECHNIQUE_ALIASES.get(name.strip().lower(), name.strip().lower())
    if canonical not in TECHNIQUES:
        raise ConfigError(f'unknown technique {name!r}; expected one of {", ".join(TECHNIQUES)}')
    return canonical


# ==============================================================================
# I. Predictor types
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class PredictorConfig:
    technique: str = MODIFIED_MAX
    window_t: int = 3
    ma_window: int = 3
    ewma_alpha: float = 0.3
    initial_gbr: float = None
    capacity_cap: float = None

    def __post_init__(self):
        object.__setattr__(self, 'technique', normalize_technique(self.technique))
        check_integer(self.window_t, 'window_t', minimum=1)
        check_integer(self.ma_window, 'ma_window', minimum=2 if self.technique == LINREG else 1)
        alpha = check_number(self.ewma_alpha, 'ewma_alpha', strict=True)
        if alpha > 1: raise ConfigError(f'ewma_alpha must be in (0, 1], got {alpha!r}')
        check_number(self.initial_gbr, 'initial_gbr', allow_none=True)
        check_number(self.capacity_cap, 'capacity_cap', allow_none=True)

    @classmethod
    def from_dict(cls, document):
        reject_unknown_keys(document, [f.name for f in fields(cls)], 'predictor config')
        return cls(**document)

    def to_dict(self):
        return asdict(self)


class IntervalObservation:
    """Samples of one elapsed interval, paired with the GBR that was in force while they were observed."""

    __slots__ = ('interval_index', 'predicted_gbr', 'samples', 'peak')

    def __init__(self, interval_index, predicted_gbr, samples):
        self.interval_index = interval_index
        self.predicted_gbr = predicted_gbr
        self.samples = samples
        self.peak = float(samples.max())

    def __repr__(self):
        return f'IntervalObservation(interval_index={self.interval_index}, predicted_gbr={self.predicted_gbr!r}, ' \
               f'samples={self.samples.size}, peak={self.peak!r})'


@dataclass(frozen=True)
class PredictionRecord:
    stream_id: str
    interval_index: int
    requested_gbr: float
    technique: str
    bootstrap: bool = False


# ==============================================================================
# II. The predictor
# ------------------------------------------------------------------------------

class BandwidthPredictor:
    """Stateful GBR predictor for a single stream.

    Use ``predict_next()`` before each interval and ``observe_interval()`` after it. The state after k observations
    is a pure function of the config and those k observations, so replays are deterministic. One instance serves
    one stream and must not be shared between threads; distinct instances share nothing.

    Args:
        config (PredictorConfig): technique and its parameters
        stream_id (str): name of the stream, copied into each PredictionRecord
        trace_max (float or None): whole-trace maximum; required by ``static_worst_case``
        priming_sample (float or None): a first observed bitrate; when ``config.initial_gbr`` is unset the
            bootstrap request is twice this value

    Raises:
        ConfigError: if no bootstrap request can be derived, or ``static_worst_case`` has no ``trace_max``

    Examples:
        >>> p = BandwidthPredictor(PredictorConfig(technique='max', initial_gbr=10))
        >>> p.predict_next_max()
        10.0
        >>> p.observe_interval([3, 5, 4]).predict_next_max()
        5.0
    """

    def __init__(self, config=None, stream_id='stream', trace_max=None, priming_sample=None):
        self.config = config if config is not None else PredictorConfig()
        self.stream_id = stream_id

        initial = self.config.initial_gbr
        if initial is None and priming_sample is not None:
            initial = BOOTSTRAP_FACTOR * check_number(priming_sample, 'priming_sample')
        if initial is None and self.config.technique != STATIC_WORST_CASE:
            raise ConfigError('initial_gbr is not set and no priming sample is available')
        self.initial_gbr = None if initial is None else float(initial)

        if self.config.technique == STATIC_WORST_CASE and trace_max is None:
            raise ConfigError('static_worst_case needs the whole-trace maximum (trace_max)')
        self.trace_max = check_number(trace_max, 'trace_max', allow_none=True)

        self._history = deque(maxlen=self.config.window_t)
        self._peaks = deque(maxlen=self.config.ma_window)
        self._peak_indexes = deque(maxlen=self.config.ma_window)
        self._ewma = None
        self._observed = 0
        self._in_force = None

    @property
    def history(self):
        return list(self._history)

    @property
    def observed_intervals(self):
        return self._observed

    def observe_interval(self, samples, predicted_gbr=None):
        """Record the samples of the interval that just elapsed.

        Args:
            samples (list or ndarray): bitrates observed during the interval, bits per second
            predicted_gbr (float or None): GBR in force during the interval. Default is the last value returned by
                ``predict_next()``, or the bootstrap request if none was made.

        Returns:
            BandwidthPredictor: this predictor, updated

        Raises:
            EmptyIntervalError: if ``samples`` is empty
            SeriesError: if a sample is negative or not finite
        """
        samples = np.array(samples, dtype=np.float64).ravel()
        if samples.size == 0:
            raise EmptyIntervalError(f'interval {self._observed} of {self.stream_id!r} has no samples')
        if not np.all(np.isfinite(samples)) or np.any(samples < 0):
            raise SeriesError(f'interval {self._observed} of {self.stream_id!r} has negative or non-finite samples')
        samples.setflags(write=False)

        if predicted_gbr is None:
            predicted_gbr = self._in_force if self._in_force is not None else self._bootstrap_value()
        observation = IntervalObservation(self._observed, float(predicted_gbr), samples)

        self._history.append(observation)
        self._peaks.append(observation.peak)
        self._peak_indexes.append(observation.interval_index)
        alpha = self.config.ewma_alpha
        self._ewma = observation.peak if self._ewma is None else alpha * observation.peak + (1 - alpha) * self._ewma
        self._observed += 1
        self._in_force = None
        return self

    def predict_next(self):
        """Predict the GBR for the next interval with the configured technique.

        Returns:
            PredictionRecord: the request, flagged ``bootstrap`` when it comes from ``initial_gbr``
        """
        technique = self.config.technique
        if technique == MAX:
            gbr = self.predict_next_max()
        elif technique == MODIFIED_MAX:
            gbr = self.predict_next_modified_max()
        else:
            gbr = self.predict_next_baseline()
        self._in_force = gbr
        return PredictionRecord(self.stream_id, self._observed, gbr, technique, bootstrap=self._is_bootstrap())

    def predict_next_max(self):
        """Highest bitrate of the most recent interval, or the bootstrap request before any history."""
        if not self._history: return self._clamp(self._bootstrap_value())
        return self._clamp(self._history[-1].peak)

    def predict_next_modified_max(self):
        """Max adjusted by the recent over- or under-subscription.

        Over the last ``window_t`` observed intervals, a sample is an over-sample when it exceeds the GBR that was in
        force for its interval. If any exists the trend is upward and the mean excess is added to the baseline (the
        highest bitrate of the most recent interval). Otherwise the mean shortfall of the under-samples is subtracted
        from it; with no under-samples either, the result equals the baseline.

        Examples:
            >>> p = BandwidthPredictor(PredictorConfig(window_t=1, initial_gbr=5))
            >>> p.observe_interval([4, 6, 7], predicted_gbr=5).predict_next_modified_max()
            8.5
        """
        if not self._history: return self._clamp(self._bootstrap_value())
        baseline = self._history[-1].peak

        excess = [obs.samples[obs.samples > obs.predicted_gbr] - obs.predicted_gbr for obs in self._history]
        excess = np.concatenate(excess)
        if excess.size:
            return self._clamp(baseline + exact_sum(excess) / excess.size)

        shortfall = np.concatenate(
            [obs.predicted_gbr - obs.samples[obs.samples < obs.predicted_gbr] for obs in self._history])
        mean_shortfall = exact_sum(shortfall) / shortfall.size if shortfall.size else 0.0
        return self._clamp(baseline - mean_shortfall)

    def predict_next_baseline(self):
        """Prediction for the static and classical techniques, all of which forecast the per-interval peak.

        * ``static_worst_case``: the whole-trace maximum, for every interval
        * ``moving_average``: mean of the last ``ma_window`` interval peaks
        * ``ewma``: exponentially weighted mean of the peaks, weight ``ewma_alpha`` on the newest
        * ``linreg``: least-squares line through the last ``ma_window`` peaks against interval index, evaluated at
          the next index

        Without history, or with a single peak for ``linreg``, the bootstrap request is returned.

        Raises:
            ConfigError: if the configured technique is ``max`` or ``modified_max``
        """
        technique = self.config.technique
        if technique not in BASELINE_TECHNIQUES:
            raise ConfigError(f'{technique!r} is not a baseline technique')
        if technique == STATIC_WORST_CASE: return self._clamp(self.trace_max)
        if self._is_bootstrap(): return self._clamp(self._bootstrap_value())

        if technique == MOVING_AVERAGE:
            return self._clamp(exact_sum(self._peaks) / len(self._peaks))
        if technique == EWMA:
            return self._clamp(self._ewma)
        return self._clamp(_least_squares_next(list(self._peak_indexes), list(self._peaks), self._observed))

    def _bootstrap_value(self):
        return self.trace_max if self.config.technique == STATIC_WORST_CASE else self.initial_gbr

    def _is_bootstrap(self):
        if self.config.technique == STATIC_WORST_CASE: return False
        return len(self._peaks) < (2 if self.config.technique == LINREG else 1)

    def _clamp(self, value):
        value = max(0.0, float(value))
        if self.config.capacity_cap is not None: value = min(value, self.config.capacity_cap)
        if not math.isfinite(value): raise SeriesError(f'prediction for {self.stream_id!r} is not finite')
        return value

    def __repr__(self):
        return f'BandwidthPredictor(stream_id={self.stream_id!r}, technique={self.config.technique!r}, ' \
               f'observed={self._observed})'


def _least_squares_next(x, y, at):
    x_mean = exact_sum(x) / len(x)
    y_mean = exact_sum(y) / len(y)
    sxx = exact_sum([(xi - x_mean) ** 2 for xi in x])
    sxy = exact_sum([(xi - x_mean) * (yi - y_mean) for xi, yi in zip(x, y)])
    return y_mean + (sxy / sxx) * (at - x_mean)
