# -*- coding: utf-8 -*-

"""Command line entry point: generate synthetic trace suites, replay traces, and compare techniques.

::

    py4slice generate --count 17 --out-dir traces
    py4slice simulate traces/*.csv --technique modified_max --out result.json --qos-log qos.jsonl
    py4slice compare traces/*.csv --techniques static,max,modified_max --out report.json --plot-csv bars.csv

Exit status is 0 on success, 1 on a runtime (I/O) failure and 2 on a usage or validation error; failures print a
single ``py4slice: error: <message>`` line to stderr.

I. Commands
II. Argument parsing
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

# External library imports
import argparse
from dataclasses import dataclass, replace
import os
import sys

import pandas as pd

# Internal module imports
from .simulator import SCHEMA_VERSION, SimConfig, SliceController, load_sim_config, run_simulation
from .traces import SyntheticTraceConfig, generate_trace_suite, load_synthetic_config, parse_trace_csv, \
    write_trace_csv

# Internal module convenience imports
from .exceptions import ConfigError, SliceError
from .predictors import TECHNIQUES, normalize_technique
from .py4slice_logger import slice_log, summary_logger
from .py4slice_utils import format_number, to_json, write_text_atomic

PROG = 'py4slice'
CONFIG_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'configs')
DEFAULT_TRACE_CONFIG = os.path.join(CONFIG_DIR, 'trace_config.json')
DEFAULT_SIM_CONFIG = os.path.join(CONFIG_DIR, 'sim_config.json')
DEFAULT_SUITE_SIZE = 17

REPORT_METRICS = ('total_cost', 'over_magnitude', 'over_count', 'under_magnitude', 'under_count', 'savings_vs_static',
                  'data_loss_bits')


# ==============================================================================
# I. Commands
# ------------------------------------------------------------------------------

@dataclass(frozen=True)
class CompareReport:
    """Aggregate scores of several techniques replayed on identical traces, and their ranking by total cost."""
    techniques: dict
    ranking: tuple
    config: SimConfig

    @classmethod
    def from_results(cls, results, config):
        frame = pd.DataFrame.from_dict({technique: _report_row(result) for technique, result in results.items()},
                                       orient='index')
        frame.index.name = 'technique'
        ranked = frame.reset_index().sort_values(['total_cost', 'technique'], kind='mergesort')
        techniques = {technique: _report_row(results[technique]) for technique in sorted(results)}
        return cls(techniques=techniques, ranking=tuple(ranked['technique']), config=config)

    def to_dict(self):
        return {'schema_version': SCHEMA_VERSION, 'techniques': self.techniques, 'ranking': list(self.ranking),
                'config': self.config.to_dict()}

    def to_json(self):
        return to_json(self.to_dict())

    def plot_frame(self):
        """One row per (technique, metric), values already formatted for lossless CSV output."""
        rows = [(technique, metric, '' if values[metric] is None else format_number(values[metric]))
                for technique, values in self.techniques.items() for metric in REPORT_METRICS]
        return pd.DataFrame(rows, columns=['technique', 'metric', 'value'])

    def plot_csv(self):
        return self.plot_frame().to_csv(index=False, lineterminator='\n')


def _report_row(result):
    metrics = result.metrics
    return {'total_cost': metrics.total_cost, 'over_magnitude': metrics.over_magnitude,
            'over_count': metrics.over_count, 'under_magnitude': metrics.under_magnitude,
            'under_count': metrics.under_count, 'savings_vs_static': result.savings_vs_static,
            'data_loss_bits': result.data_loss_bits}


@slice_log
def cmd_generate(config=None, count=DEFAULT_SUITE_SIZE, out_dir='.'):
    """Write ``count`` synthetic traces as ``stream_<i>.csv``; stream ``i`` uses seed ``config.seed + i``.

    Args:
        config (SyntheticTraceConfig or None): generator parameters. Default is the shipped trace config.
        count (int): number of streams, at least 1
        out_dir (str): directory to write to; created when missing

    Returns:
        list: paths of the files written, in stream order

    Raises:
        ConfigError: if ``count`` < 1 or the config is invalid
        OSError: if the directory can't be written
    """
    config = config if config is not None else load_synthetic_config(DEFAULT_TRACE_CONFIG)
    traces = generate_trace_suite(config, count)
    return [write_trace_csv(trace, os.path.join(out_dir, f'{trace.stream_id}.csv')) for trace in traces]


def load_traces(trace_files):
    if not trace_files: raise ConfigError('no trace files given')
    return [parse_trace_csv(path) for path in trace_files]


@slice_log
def cmd_simulate(trace_files, config=None, out_file=None, qos_log=None):
    """Replay trace files with one technique and write the SimulationResult JSON.

    Args:
        trace_files (list): CSV trace paths; each stream is named after its file
        config (SimConfig or None): replay parameters. Default is the shipped simulation config.
        out_file (str or None): where to write the result; stdout when None
        qos_log (str or None): where to write the QoS request log (JSON Lines)

    Returns:
        SimulationResult: the replay result

    Raises:
        SliceError: if a trace or the config is invalid, or the traces are not aligned
        OSError: if a file can't be read or written
    """
    config = config if config is not None else load_sim_config(DEFAULT_SIM_CONFIG)
    controller = SliceController(config.slice_capacity)
    result = run_simulation(load_traces(trace_files), config, controller=controller)
    _emit(result.to_json(), out_file)
    if qos_log: controller.write_qos_log(qos_log)
    return result


@slice_log
def cmd_compare(trace_files, config=None, techniques=TECHNIQUES, out_file=None, plot_csv=None):
    """Replay the same traces with each technique and rank the techniques by aggregate total cost.

    Every technique runs through ``run_simulation`` with the same config apart from the technique, so warmup and
    penalties are identical. Ties in total cost rank alphabetically.

    Args:
        trace_files (list): CSV trace paths
        config (SimConfig or None): replay parameters; its technique is ignored. Default is the shipped config.
        techniques (list): at least two distinct technique names (aliases accepted)
        out_file (str or None): where to write the CompareReport JSON; stdout when None
        plot_csv (str or None): where to write ``technique,metric,value`` rows for bar plots

    Returns:
        CompareReport: per-technique scores and ranking

    Raises:
        ConfigError: if fewer than two distinct techniques are given, or a name is unknown
        SliceError: if a trace or the config is invalid
        OSError: if a file can't be read or written
    """
    names = [normalize_technique(name) for name in techniques]
    if len(set(names)) != len(names): raise ConfigError(f'techniques repeat: {", ".join(names)}')
    if len(names) < 2: raise ConfigError('compare needs at least 2 techniques')
    config = config if config is not None else load_sim_config(DEFAULT_SIM_CONFIG)

    traces = load_traces(trace_files)
    results = {}
    for name in sorted(names):
        results[name] = run_simulation(traces, config.with_technique(name))
        summary_logger.info(f'{name}: total cost {results[name].metrics.total_cost!r}')

    report = CompareReport.from_results(results, config)
    _emit(report.to_json(), out_file)
    if plot_csv: write_text_atomic(plot_csv, report.plot_csv())
    return report


def _emit(text, out_file):
    if out_file:
        write_text_atomic(out_file, text)
    else:
        sys.stdout.write(text)


# ==============================================================================
# II. Argument parsing
# ------------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(prog=PROG, description='Trace-driven GBR prediction for 5G network slices')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    generate = commands.add_parser('generate', help='write a suite of synthetic trace CSV files')
    generate.add_argument('--config', help='synthetic trace config (JSON); default is the shipped config')
    generate.add_argument('--count', type=int, default=DEFAULT_SUITE_SIZE,
                          help=f'number of streams (default {DEFAULT_SUITE_SIZE})')
    generate.add_argument('--seed', type=int, help='base seed; stream i uses seed + i')
    generate.add_argument('--out-dir', required=True, help='directory for stream_<i>.csv files')

    simulate = commands.add_parser('simulate', help='replay traces with one technique')
    _add_replay_arguments(simulate)
    simulate.add_argument('--technique', help=f'one of {", ".join(TECHNIQUES)}')
    simulate.add_argument('--qos-log', help='write the QoS request log (JSON Lines) here')

    compare = commands.add_parser('compare', help='replay traces with several techniques and rank them')
    _add_replay_arguments(compare)
    compare.add_argument('--techniques', default=','.join(TECHNIQUES),
                         help='comma separated technique names (default: all)')
    compare.add_argument('--plot-csv', help='write technique,metric,value rows here')
    return parser


def _add_replay_arguments(parser):
    parser.add_argument('traces', nargs='+', help='trace CSV files (timestamp_ms,bitrate_bps)')
    parser.add_argument('--config', help='simulation config (JSON); default is the shipped config')
    parser.add_argument('--interval', type=float, help='re-prediction interval, seconds')
    parser.add_argument('--window-t', type=int, help='Modified-Max look-back window, intervals')
    parser.add_argument('--pu', type=float, help='undersubscription penalty per bit/s')
    parser.add_argument('--po', type=float, help='oversubscription penalty per bit/s')
    parser.add_argument('--capacity', type=float, help='slice capacity, bits/s')
    parser.add_argument('--warmup', type=int, help='leading intervals left out of the metrics')
    parser.add_argument('--out', help='output JSON file; stdout when omitted')


def sim_config_from_args(args):
    config = load_sim_config(args.config or DEFAULT_SIM_CONFIG)
    top = {name: value for name, value in (('interval', args.interval), ('warmup_intervals', args.warmup),
                                           ('slice_capacity', args.capacity)) if value is not None}
    cost = {name: value for name, value in (('p_u', args.pu), ('p_o', args.po)) if value is not None}
    predictor = {name: value for name, value in (('window_t', args.window_t),
                                                 ('technique', getattr(args, 'technique', None)))
                 if value is not None}
    return replace(config, cost=replace(config.cost, **cost), predictor=replace(config.predictor, **predictor),
                   **top)


def trace_config_from_args(args):
    config = load_synthetic_config(args.config) if args.config else load_synthetic_config(DEFAULT_TRACE_CONFIG)
    return config if args.seed is None else SyntheticTraceConfig.from_dict({**config.to_dict(), 'seed': args.seed})


def main(argv=None):
    """Run the command line and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    try:
        if args.command == 'generate':
            cmd_generate(trace_config_from_args(args), args.count, args.out_dir)
        elif args.command == 'simulate':
            cmd_simulate(args.traces, sim_config_from_args(args), args.out, args.qos_log)
        else:
            techniques = [name for name in args.techniques.split(',') if name.strip()]
            cmd_compare(args.traces, sim_config_from_args(args), techniques, args.out, args.plot_csv)
    except SliceError as e:
        sys.stderr.write(f'{PROG}: error: {e}\n')
        return e.exit_code
    except OSError as e:
        sys.stderr.write(f'{PROG}: error: {e}\n')
        return 1
    return 0
