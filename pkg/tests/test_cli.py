# -*- coding: utf-8 -*-

""" Test functions in cli.py.
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

import contextlib
import glob
import json
import unittest
from test_utils import *


def _write_config(directory, name, document):
    path = os.path.join(directory, name)
    with open(path, 'w') as f:
        json.dump(document, f)
    return path


def _run(argv):
    stderr = io.StringIO()
    with contextlib.redirect_stderr(stderr):
        status = main(argv)
    return status, stderr.getvalue()


class CliTests(unittest.TestCase):

    def setUp(self):
        self.tmp = TempDir()
        self.dir = self.tmp.__enter__()
        self.trace_config = _write_config(self.dir, 'trace.json', {'duration': 1800, 'seed': 42})

    def tearDown(self):
        self.tmp.__exit__(None, None, None)

    def _generate(self, count=3, out_dir=None):
        out_dir = out_dir or os.path.join(self.dir, 'traces')
        status, _ = _run(['generate', '--config', self.trace_config, '--count', str(count), '--out-dir', out_dir])
        self.assertEqual(status, 0)
        return sorted(glob.glob(os.path.join(out_dir, '*.csv')))

    @print_entry_exit
    def test_shipped_configs(self):
        self.assertEqual(load_synthetic_config(DEFAULT_TRACE_CONFIG), SyntheticTraceConfig())
        self.assertEqual(load_sim_config(DEFAULT_SIM_CONFIG), SimConfig())

    @print_entry_exit
    def test_generate(self):
        paths = self._generate(3)
        self.assertEqual([os.path.basename(path) for path in paths], ['stream_0.csv', 'stream_1.csv', 'stream_2.csv'])
        trace = parse_trace_csv(paths[1])
        self.assertEqual(len(trace), 1800)
        self.assertEqual(trace.bitrates.tolist(),
                         generate_synthetic_trace(SyntheticTraceConfig(duration=1800, seed=43)).bitrates.tolist())

        # re-running is byte identical
        again = self._generate(3, os.path.join(self.dir, 'again'))
        for first, second in zip(paths, again):
            with open(first, 'rb') as f, open(second, 'rb') as g:
                self.assertEqual(f.read(), g.read())

        self.assertEqual(len(self._generate(1, os.path.join(self.dir, 'one'))), 1)

        status, message = _run(['generate', '--config', self.trace_config, '--count', '0', '--out-dir', self.dir])
        self.assertEqual(status, 2)
        self.assertTrue(message.startswith('py4slice: error: '))

        status, _ = _run(['generate', '--count', '2'])
        self.assertEqual(status, 2)

    @print_entry_exit
    def test_generate_seed_override(self):
        out_dir = os.path.join(self.dir, 'seeded')
        status, _ = _run(['generate', '--config', self.trace_config, '--count', '1', '--seed', '7',
                          '--out-dir', out_dir])
        self.assertEqual(status, 0)
        self.assertEqual(parse_trace_csv(os.path.join(out_dir, 'stream_0.csv')).bitrates.tolist(),
                         generate_synthetic_trace(SyntheticTraceConfig(duration=1800, seed=7)).bitrates.tolist())

    @print_entry_exit
    def test_simulate(self):
        paths = self._generate(2)
        out = os.path.join(self.dir, 'result.json')
        qos = os.path.join(self.dir, 'qos.jsonl')
        status, _ = _run(['simulate', *paths, '--technique', 'max', '--interval', '60', '--po', '20',
                          '--out', out, '--qos-log', qos])
        self.assertEqual(status, 0)
        with open(out) as f:
            document = json.load(f)
        self.assertEqual(document['schema_version'], 'v1')
        self.assertEqual(document['technique'], 'max')
        self.assertIn('over_count', document['aggregate'])
        self.assertEqual(document['config']['cost'], {'p_u': 0.1, 'p_o': 20.0})
        self.assertEqual(sorted(document['per_stream']), ['stream_0', 'stream_1'])
        with open(qos) as f:
            entries = [json.loads(line) for line in f]
        self.assertEqual(len(entries), 30)
        self.assertEqual(entries[0]['interval_index'], 0)
        self.assertEqual(set(entries[0]['per_stream']), {'stream_0', 'stream_1'})

        # identical inputs give byte identical output
        again = os.path.join(self.dir, 'again.json')
        self.assertEqual(_run(['simulate', *paths, '--technique', 'max', '--interval', '60', '--po', '20',
                               '--out', again])[0], 0)
        with open(out, 'rb') as f, open(again, 'rb') as g:
            self.assertEqual(f.read(), g.read())

    @print_entry_exit
    def test_simulate_errors(self):
        paths = self._generate(1)
        short = os.path.join(self.dir, 'short.csv')
        write_trace_csv(constant_trace(1e6, 600, stream_id='short'), short)

        status, message = _run(['simulate', paths[0], short, '--out', os.path.join(self.dir, 'x.json')])
        self.assertEqual(status, 2)
        self.assertIn('traces not aligned', message)
        self.assertEqual(len(message.strip().splitlines()), 1)

        status, _ = _run(['simulate', paths[0], '--interval', '1.5'])
        self.assertEqual(status, 2)
        status, _ = _run(['simulate', paths[0], '--technique', 'arima'])
        self.assertEqual(status, 2)
        status, _ = _run(['simulate', os.path.join(self.dir, 'missing.csv')])
        self.assertEqual(status, 1)

        bad = os.path.join(self.dir, 'bad.csv')
        with open(bad, 'w') as f:
            f.write('timestamp_ms,bitrate_bps\n0,1\n1000,-5\n')
        status, message = _run(['simulate', bad])
        self.assertEqual(status, 2)
        self.assertIn('line 3', message)

        with open(bad, 'wb') as f:
            f.write(b'timestamp_ms,bitrate_bps\n0,1\xff\xfe\n1000,2\n')
        status, message = _run(['simulate', bad, '--interval', '1'])
        self.assertEqual(status, 2)
        self.assertTrue(message.startswith('py4slice: error: '))
        self.assertEqual(len(message.strip().splitlines()), 1)

        with open(bad, 'w') as f:
            f.write('timestamp_ms,bitrate_bps\n0,1\n1e30,2\n')
        status, message = _run(['simulate', bad, '--interval', '1'])
        self.assertEqual(status, 2)
        self.assertIn('line 3', message)

    @print_entry_exit
    def test_compare(self):
        paths = self._generate(2)
        out = os.path.join(self.dir, 'report.json')
        plot = os.path.join(self.dir, 'bars.csv')
        status, _ = _run(['compare', *paths, '--techniques', 'static,max,modified_max', '--interval', '60',
                          '--out', out, '--plot-csv', plot])
        self.assertEqual(status, 0)
        with open(out) as f:
            document = json.load(f)
        self.assertEqual(document['schema_version'], 'v1')
        self.assertEqual(sorted(document['ranking']), ['max', 'modified_max', 'static_worst_case'])
        costs = [document['techniques'][name]['total_cost'] for name in document['ranking']]
        self.assertEqual(costs, sorted(costs))
        for name in document['ranking']:
            self.assertEqual(set(document['techniques'][name]), set(REPORT_METRICS))
        self.assertEqual(document['techniques']['static_worst_case']['over_count'], 0)
        self.assertEqual(document['techniques']['static_worst_case']['data_loss_bits'], 0.0)

        frame = pd.read_csv(plot)
        self.assertEqual(list(frame.columns), ['technique', 'metric', 'value'])
        self.assertEqual(len(frame), 3 * 7)

        status, _ = _run(['compare', *paths, '--techniques', 'max'])
        self.assertEqual(status, 2)
        status, _ = _run(['compare', *paths, '--techniques', 'max,svr'])
        self.assertEqual(status, 2)
        status, _ = _run(['compare', *paths, '--techniques', 'static,static_worst_case'])
        self.assertEqual(status, 2)

    @print_entry_exit
    def test_compare_matches_simulate(self):
        paths = self._generate(2)
        config = SimConfig(interval=60)
        report = cmd_compare(paths, config, ['max', 'ewma'], out_file=os.path.join(self.dir, 'r.json'))
        for technique in ('max', 'ewma'):
            result = cmd_simulate(paths, config.with_technique(technique), out_file=os.path.join(self.dir, 's.json'))
            self.assertEqual(report.techniques[technique]['total_cost'], result.metrics.total_cost)
            self.assertEqual(report.techniques[technique]['data_loss_bits'], result.data_loss_bits)

    @print_entry_exit
    def test_compare_ties_rank_alphabetically(self):
        path = os.path.join(self.dir, 'flat.csv')
        write_trace_csv(constant_trace(2e6, 1200, stream_id='flat'), path)
        report = cmd_compare([path], SimConfig(), ['static', 'max'], out_file=os.path.join(self.dir, 'r.json'))
        self.assertEqual(report.techniques['max']['total_cost'], 0.0)
        self.assertEqual(report.techniques['static_worst_case']['total_cost'], 0.0)
        self.assertEqual(report.ranking, ('max', 'static_worst_case'))
        self.assertEqual(report.plot_frame().shape, (14, 3))
        self.assertIn('max,total_cost,0.0', report.plot_csv().splitlines())


if __name__ == '__main__':
    unittest.main()
