# -*- coding: utf-8 -*-

""" Test functions in predictors.py.
"""

"""Copyright 2026 The py4slice Authors

Licensed under the MIT License. See the LICENSE file at the root of the repository.
"""

import unittest
from test_utils import *


def _predictor(technique='modified_max', **kwargs):
    trace_max = kwargs.pop('trace_max', None)
    priming_sample = kwargs.pop('priming_sample', None)
    return BandwidthPredictor(PredictorConfig(technique=technique, **kwargs), trace_max=trace_max,
                              priming_sample=priming_sample)


class PredictorsTests(unittest.TestCase):

    def setUp(self):
        pass

    def tearDown(self):
        pass

    @print_entry_exit
    def test_predictor_config(self):
        config = PredictorConfig()
        self.assertEqual((config.technique, config.window_t, config.ma_window, config.ewma_alpha),
                         ('modified_max', 3, 3, 0.3))
        self.assertEqual(PredictorConfig(technique='static').technique, 'static_worst_case')
        self.assertEqual(PredictorConfig.from_dict(config.to_dict()), config)
        self.assertRaises(ConfigError, PredictorConfig, technique='arima')
        self.assertRaises(ConfigError, PredictorConfig, window_t=0)
        self.assertRaises(ConfigError, PredictorConfig, ewma_alpha=0)
        self.assertRaises(ConfigError, PredictorConfig, ewma_alpha=1.5)
        self.assertRaises(ConfigError, PredictorConfig, initial_gbr=-1)
        self.assertRaises(ConfigError, PredictorConfig.from_dict, {'window': 3})

    @print_entry_exit
    def test_observe_interval(self):
        p = _predictor(initial_gbr=10)
        p.observe_interval([3, 5, 4])
        self.assertEqual(len(p.history), 1)
        self.assertEqual(p.history[0].peak, 5.0)
        self.assertEqual(p.history[0].predicted_gbr, 10.0)
        self.assertEqual(p.observed_intervals, 1)

        # the window keeps only the last window_t intervals
        for _ in range(5): p.observe_interval([1])
        self.assertEqual(len(p.history), 3)
        self.assertEqual(p.observed_intervals, 6)

        self.assertRaises(EmptyIntervalError, p.observe_interval, [])
        self.assertRaises(SeriesError, p.observe_interval, [1, -2])
        self.assertRaises(SeriesError, p.observe_interval, [float('nan')])

    @print_entry_exit
    def test_bootstrap(self):
        self.assertEqual(_predictor('max', initial_gbr=10).predict_next_max(), 10.0)
        self.assertEqual(_predictor('max', priming_sample=3).predict_next_max(), 6.0)
        self.assertRaises(ConfigError, _predictor, 'max')
        self.assertRaises(ConfigError, _predictor, 'static_worst_case', initial_gbr=1)

        record = _predictor('max', initial_gbr=10).predict_next()
        self.assertEqual(record, PredictionRecord('stream', 0, 10.0, 'max', bootstrap=True))
        p = _predictor('max', initial_gbr=10).observe_interval([4])
        self.assertFalse(p.predict_next().bootstrap)

    @print_entry_exit
    def test_predict_next_max(self):
        p = _predictor('max', initial_gbr=10)
        self.assertEqual(p.observe_interval([3, 5, 4]).predict_next_max(), 5.0)
        self.assertEqual(p.observe_interval([9, 2]).predict_next_max(), 9.0)
        self.assertEqual(_predictor('max', initial_gbr=10, capacity_cap=4).observe_interval([3, 5]).predict_next_max(),
                         4.0)

    @print_entry_exit
    def test_predict_next_modified_max(self):
        # upward: over-samples {6, 7}, mean excess 1.5, baseline 7
        up = _predictor(window_t=1, initial_gbr=5).observe_interval([4, 6, 7], predicted_gbr=5)
        self.assertEqual(up.predict_next_modified_max(), 8.5)

        # downward: under magnitudes {4, 3, 2}, mean 3, baseline 8
        down = _predictor(window_t=1, initial_gbr=10).observe_interval([6, 7, 8], predicted_gbr=10)
        self.assertEqual(down.predict_next_modified_max(), 5.0)

        # no deviation at all reduces to max
        flat = _predictor(window_t=1, initial_gbr=4).observe_interval([4, 4, 4], predicted_gbr=4)
        self.assertEqual(flat.predict_next_modified_max(), 4.0)
        self.assertEqual(flat.predict_next_modified_max(),
                         _predictor('max', initial_gbr=4).observe_interval([4, 4, 4]).predict_next_max())

        # an over-sample anywhere in the window wins over later shortfalls
        p = _predictor(window_t=2, initial_gbr=5)
        p.observe_interval([6], predicted_gbr=5).observe_interval([1, 2], predicted_gbr=10)
        self.assertEqual(p.predict_next_modified_max(), 3.0)

        # downward results are clamped at 0
        low = _predictor(window_t=1, initial_gbr=100).observe_interval([0, 1], predicted_gbr=100)
        self.assertEqual(low.predict_next_modified_max(), 0.0)

    @print_entry_exit
    def test_modified_max_cycles_on_flat_traffic(self):
        # shortfalls are taken against the doubled request, which empties the next one
        p = _predictor(window_t=3, priming_sample=4)
        requests = []
        for _ in range(10):
            requests.append(p.predict_next().requested_gbr)
            p.observe_interval([4, 4])
        self.assertEqual(requests, [8.0, 0.0, 8.0, 8.0, 8.0, 0.0, 8.0, 8.0, 8.0, 0.0])

        # with a request that matches the traffic there is nothing to correct
        p = _predictor(window_t=3, initial_gbr=4)
        for _ in range(6):
            self.assertEqual(p.predict_next().requested_gbr, 4.0)
            p.observe_interval([4, 4])

    @print_entry_exit
    def test_modified_max_direction_property(self):
        rng = np.random.default_rng(99)
        for _ in range(10000):
            window_t = int(rng.integers(1, 4))
            p = _predictor(window_t=window_t, initial_gbr=1)
            for _ in range(int(rng.integers(1, 5))):
                p.observe_interval(rng.integers(0, 50, int(rng.integers(1, 6))).astype(float),
                                   predicted_gbr=float(rng.integers(0, 50)))
            window = p.history
            baseline = window[-1].peak
            over = any(np.any(obs.samples > obs.predicted_gbr) for obs in window)
            prediction = p.predict_next_modified_max()
            if over:
                self.assertGreater(prediction, baseline)
            else:
                self.assertLessEqual(prediction, baseline)

    @print_entry_exit
    def test_predict_next_baseline(self):
        static = _predictor('static', trace_max=9.2e6)
        self.assertEqual(static.predict_next_baseline(), 9.2e6)
        static.observe_interval([1e6, 2e6])
        self.assertEqual(static.predict_next().requested_gbr, 9.2e6)
        self.assertFalse(static.predict_next().bootstrap)

        ma = _predictor('moving_average', ma_window=2, initial_gbr=1)
        self.assertEqual(ma.predict_next_baseline(), 1.0)
        ma.observe_interval([1, 4]).observe_interval([6, 2])
        self.assertEqual(ma.predict_next_baseline(), 5.0)

        ewma = _predictor('ewma', ewma_alpha=0.5, initial_gbr=1)
        ewma.observe_interval([4]).observe_interval([8])
        self.assertEqual(ewma.predict_next_baseline(), 6.0)

        linreg = _predictor('linreg', ma_window=3, initial_gbr=1)
        linreg.observe_interval([2]).observe_interval([4]).observe_interval([6])
        self.assertEqual(linreg.predict_next_baseline(), 8.0)
        # one peak is not enough for a line
        single = _predictor('linreg', initial_gbr=1).observe_interval([7])
        self.assertEqual(single.predict_next_baseline(), 1.0)
        self.assertTrue(single.predict_next().bootstrap)
        self.assertFalse(single.observe_interval([9]).predict_next().bootstrap)
        self.assertEqual(single.predict_next_baseline(), 11.0)
        self.assertRaises(ConfigError, PredictorConfig, technique='linreg', ma_window=1)
        falling = _predictor('linreg', initial_gbr=1).observe_interval([6]).observe_interval([1])
        self.assertEqual(falling.predict_next_baseline(), 0.0)

        self.assertRaises(ConfigError, _predictor('max', initial_gbr=1).predict_next_baseline)

    @print_entry_exit
    def test_predictions_are_bounded_and_deterministic(self):
        rng = np.random.default_rng(5)
        intervals = [rng.uniform(0, 1e6, 30) for _ in range(20)]
        for technique in TECHNIQUES:
            runs = []
            for _ in range(2):
                p = BandwidthPredictor(PredictorConfig(technique=technique, capacity_cap=8e5), trace_max=1e6,
                                       priming_sample=intervals[0][0])
                series = []
                for samples in intervals:
                    record = p.predict_next()
                    self.assertTrue(math.isfinite(record.requested_gbr))
                    self.assertGreaterEqual(record.requested_gbr, 0.0)
                    self.assertLessEqual(record.requested_gbr, 8e5)
                    series.append(record.requested_gbr)
                    p.observe_interval(samples)
                runs.append(series)
            self.assertEqual(runs[0], runs[1])

    @print_entry_exit
    def test_normalize_technique(self):
        self.assertEqual(normalize_technique('static'), 'static_worst_case')
        self.assertEqual(normalize_technique('Modified_Max'), 'modified_max')
        self.assertRaises(ConfigError, normalize_technique, 'svr')
        self.assertRaises(ConfigError, normalize_technique, None)


if __name__ == '__main__':
    unittest.main()
