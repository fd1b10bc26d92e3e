# -*- coding: utf-8 -*-

"""Tuning parameters for trace ingestion, bootstrapping and the replay loop.
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

# Sampling period assumed for a trace that has a single sample
DEFAULT_SAMPLING_PERIOD_SECS = 1.0

# Parsed traces whose gaps exceed this many sampling periods are rejected rather than filled
MAX_GAP_PERIODS = 100

# First request of a stream with no configured initial_gbr is this multiple of its first sample
BOOTSTRAP_FACTOR = 2.0

# Re-prediction interval and warmup used when a simulation config leaves them out
DEFAULT_INTERVAL_SECS = 300.0
DEFAULT_WARMUP_INTERVALS = 1

# Generated bitrates are rounded to this many decimals so CSV output is platform stable
SYNTHETIC_BITRATE_DECIMALS = 3
