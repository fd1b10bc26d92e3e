# -*- coding: utf-8 -*-

"""Scoring of GBR requests against actual usage.

The total cost charges every time unit (one trace sample) whose actual bitrate A_t differs from the reserved
GBR_t: undersubscription (GBR_t > A_t) costs ``p_u`` per bit/s of shortfall, oversubscription (A_t > GBR_t) costs
``p_o`` per bit/s of excess. Beside the cost this module reports how often and by how much each happens, the
classical error metrics for comparison, and the bandwidth saved against a static reservation.

All sums are exact until a single final rounding, so the batch functions and the streaming accumulators agree bit
for bit.

I. Cost types
II. Batch functions
III. Streaming accumulators
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

# External library imports
from dataclasses import dataclass, asdict, fields
import math

import numpy as np

# Internal module convenience imports
from .exceptions import SeriesError
from .py4slice_utils import ExactSum, as_series, check_number, exact_sum, paired_series, reject_unknown_keys


# ==============================================================================
# I. Cost types
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class CostParams:
    p_u: float = 0.1
    p_o: float = 30.0

    def __post_init__(self):
        object.__setattr__(self, 'p_u', check_number(self.p_u, 'p_u'))
        object.__setattr__(self, 'p_o', check_number(self.p_o, 'p_o'))

    @classmethod
    def from_dict(cls, document):
        reject_unknown_keys(document, [f.name for f in fields(cls)], 'cost params')
        return cls(**document)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class SubscriptionMetrics:
    """Direction, magnitude and frequency of the mismatch between reserved and actual bandwidth.

    Magnitudes are totals in bit/s summed over samples; the per-occurrence means are ``over_mean`` and
    ``under_mean``. Samples where actual equals reserved count in neither direction.
    """
    over_magnitude: float
    over_count: int
    over_fraction: float
    under_magnitude: float
    under_count: int
    under_fraction: float
    total_cost: float
    reserved_total: float
    actual_total: float
    sample_count: int

    @property
    def over_mean(self):
        return self.over_magnitude / self.over_count if self.over_count else 0.0

    @property
    def under_mean(self):
        return self.under_magnitude / self.under_count if self.under_count else 0.0

    def to_dict(self):
        document = asdict(self)
        document.update(over_mean=self.over_mean, under_mean=self.under_mean)
        return document


@dataclass(frozen=True)
class ClassicMetrics:
    mae: float
    mse: float
    rmse: float
    mape: float
    mda: float

    def to_dict(self):
        return asdict(self)


# ==============================================================================
# II. Batch functions
# ------------------------------------------------------------------------------

def subscription_flags(a, gbr):
    """Under- and over-subscription flags for one time unit.

    Args:
        a (float): actual bitrate
        gbr (float): reserved bitrate

    Returns:
        tuple: (f_u, f_o); f_u is 1 when ``gbr > a``, f_o is 1 when ``a > gbr``, both 0 when they are equal

    Raises:
        SeriesError: if an input is negative or not finite

    Examples:
        >>> subscription_flags(10, 12)
        (1, 0)
        >>> subscription_flags(12, 10)
        (0, 1)
        >>> subscription_flags(7, 7)
        (0, 0)
    """
    a, gbr = paired_series([a], [gbr])
    a, gbr = a[0], gbr[0]
    return int(gbr > a), int(a > gbr)


def total_cost(a, gbr, params=None):
    """Total cost of a reservation series against actual usage; lower is better.

    Args:
        a (list or ndarray): actual bitrate per time unit
        gbr (list or ndarray): reserved bitrate per time unit, same length as ``a``
        params (CostParams or None): penalties. Default is p_u=0.1, p_o=30.

    Returns:
        float: p_u * (sum of shortfalls) + p_o * (sum of excesses)

    Raises:
        SeriesError: if the series are empty, differ in length, or hold negative or non-finite values

    Examples:
        >>> total_cost([10, 10], [12, 8])
        60.2
        >>> total_cost([3, 4], [3, 4])
        0.0
    """
    return subscription_metrics(a, gbr, params).total_cost


def subscription_metrics(a, gbr, params=None):
    """Magnitude and frequency of over- and under-subscription, and the total cost.

    Args:
        a (list or ndarray): actual bitrate per time unit
        gbr (list or ndarray): reserved bitrate per time unit, same length as ``a``
        params (CostParams or None): penalties. Default is p_u=0.1, p_o=30.

    Returns:
        SubscriptionMetrics: totals, counts and fractions in each direction

    Raises:
        SeriesError: if the series are empty, differ in length, or hold negative or non-finite values

    Examples:
        >>> m = subscription_metrics([10, 10], [12, 8])
        >>> m.over_magnitude, m.over_count, m.under_magnitude, m.under_count
        (2.0, 1, 2.0, 1)
    """
    params = params if params is not None else CostParams()
    a, gbr = paired_series(a, gbr)
    excess = a[a > gbr] - gbr[a > gbr]
    shortfall = gbr[gbr > a] - a[gbr > a]
    return _assemble_subscription(params, exact_sum(excess), excess.size, exact_sum(shortfall), shortfall.size,
                                  exact_sum(gbr), exact_sum(a), a.size)


def _assemble_subscription(params, over_magnitude, over_count, under_magnitude, under_count, reserved, actual, n):
    return SubscriptionMetrics(
        over_magnitude=over_magnitude, over_count=int(over_count), over_fraction=over_count / n,
        under_magnitude=under_magnitude, under_count=int(under_count), under_fraction=under_count / n,
        total_cost=params.p_u * under_magnitude + params.p_o * over_magnitude,
        reserved_total=reserved, actual_total=actual, sample_count=int(n))


def classic_metrics(a, f):
    """Classical forecast error metrics, reported only to contrast with the total cost.

    * mae = mean |f - a|, mse = mean (f - a)^2, rmse = sqrt(mse)
    * mape = mean |f - a| / |a| over the time units where a != 0 (0 when there are none)
    * mda = fraction of steps t >= 1 where sign(a_t - a_{t-1}) == sign(f_t - a_{t-1}); None for a single value

    Args:
        a (list or ndarray): actual values
        f (list or ndarray): forecasts, same length as ``a``

    Returns:
        ClassicMetrics: mae, mse, rmse, mape and mda (None when there is no step to compare)

    Raises:
        SeriesError: if the series differ in length, are empty, or hold negative or non-finite values

    Examples:
        >>> classic_metrics([1, 2], [2, 4])
        ClassicMetrics(mae=1.5, mse=2.5, rmse=1.5811388300841898, mape=1.0, mda=1.0)
    """
    a, f = paired_series(a, f, 'actual', 'forecast')
    error = f - a
    nonzero = a != 0
    ape = np.abs(error[nonzero]) / a[nonzero]
    hits = np.sign(a[1:] - a[:-1]) == np.sign(f[1:] - a[:-1])
    return _assemble_classic(exact_sum(np.abs(error)), exact_sum(error * error), exact_sum(ape), ape.size,
                             int(np.count_nonzero(hits)), a.size)


def _assemble_classic(abs_total, sq_total, ape_total, ape_count, hits, n):
    mse = sq_total / n
    return ClassicMetrics(mae=abs_total / n, mse=mse, rmse=math.sqrt(mse),
                          mape=ape_total / ape_count if ape_count else 0.0, mda=hits / (n - 1) if n > 1 else None)


def bandwidth_savings(gbr, static_gbr):
    """Fraction of bandwidth saved against a static reservation of ``static_gbr`` held for the same duration.

    Args:
        gbr (list or ndarray): reserved bitrate per time unit
        static_gbr (float): the one-time reservation, bits per second

    Returns:
        float: 1 - sum(gbr) / (len(gbr) * static_gbr); negative when the adaptive series reserves more

    Raises:
        SeriesError: if ``static_gbr`` <= 0 or ``gbr`` is empty or invalid

    Examples:
        >>> bandwidth_savings([5, 5, 5], 10)
        0.5
    """
    if isinstance(static_gbr, bool) or not isinstance(static_gbr, (int, float)) or not math.isfinite(static_gbr) \
            or static_gbr <= 0:
        raise SeriesError(f'static_gbr must be > 0, got {static_gbr!r}')
    gbr = as_series(gbr, 'gbr')
    return savings_from_total(exact_sum(gbr), gbr.size, static_gbr)


def savings_from_total(reserved_total, n, static_gbr):
    return 1.0 - reserved_total / (n * float(static_gbr))


# ==============================================================================
# III. Streaming accumulators
# ------------------------------------------------------------------------------

class SubscriptionAccumulator:
    """Single-pass counterpart of ``subscription_metrics``.

    Feed (actual, reserved) chunks in time order; ``reserved`` may be a scalar held for the whole chunk.
    ``metrics()`` equals ``subscription_metrics`` over the concatenated series exactly.
    """

    def __init__(self, params=None):
        self.params = params if params is not None else CostParams()
        self._over = ExactSum()
        self._under = ExactSum()
        self._reserved = ExactSum()
        self._actual = ExactSum()
        self._n = 0

    def add(self, a, gbr):
        a = as_series(a, 'actual', allow_empty=True)
        gbr = as_series(np.broadcast_to(np.asarray(gbr, dtype=np.float64), a.shape), 'gbr', allow_empty=True)
        over = a > gbr
        under = gbr > a
        self._over.add(a[over] - gbr[over])
        self._under.add(gbr[under] - a[under])
        self._reserved.add(gbr)
        self._actual.add(a)
        self._n += a.size
        return self

    @property
    def sample_count(self):
        return self._n

    def metrics(self):
        if self._n == 0: raise SeriesError('no samples accumulated')
        return _assemble_subscription(self.params, self._over.value(), self._over.count, self._under.value(),
                                      self._under.count, self._reserved.value(), self._actual.value(), self._n)


class ClassicAccumulator:
    """Single-pass counterpart of ``classic_metrics``; chunks are fed in time order."""

    def __init__(self):
        self._abs = ExactSum()
        self._sq = ExactSum()
        self._ape = ExactSum()
        self._hits = 0
        self._n = 0
        self._previous = None

    def add(self, a, f):
        a = as_series(a, 'actual', allow_empty=True)
        f = as_series(np.broadcast_to(np.asarray(f, dtype=np.float64), a.shape), 'forecast', allow_empty=True)
        if a.size == 0: return self
        error = f - a
        nonzero = a != 0
        self._abs.add(np.abs(error))
        self._sq.add(error * error)
        self._ape.add(np.abs(error[nonzero]) / a[nonzero])

        prior = a[:-1] if self._previous is None else np.concatenate(([self._previous], a[:-1]))
        now_a = a if self._previous is not None else a[1:]
        now_f = f if self._previous is not None else f[1:]
        self._hits += int(np.count_nonzero(np.sign(now_a - prior) == np.sign(now_f - prior)))
        self._previous = float(a[-1])
        self._n += a.size
        return self

    def metrics(self):
        if self._n == 0: raise SeriesError('classic metrics need at least 1 value')
        return _assemble_classic(self._abs.value(), self._sq.value(), self._ape.value(), self._ape.count,
                                 self._hits, self._n)
