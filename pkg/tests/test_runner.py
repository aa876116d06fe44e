import contextlib
import io
import os
import tempfile
import unittest

import pandas as pd

from runner.experiment_runner import ExperimentRunner
from runner.metrics import Metrics
from utils.config import parse_config
from utils.io import load_params, read_json


def tfim_config(**sections):
    data = {
        "model": {"model": "tfim1d", "nx": "6", "gx": "1.0"},
        "ansatz": {"reps": "1"},
        "optimizer": {"eta": "0.05", "record_every": "5"},
        "schedule": {"iterations": "10", "delta_c": "1e-4"},
        "report": {"delta_c": "0"},
    }
    data.update(sections)
    return parse_config(data)


class TestMetrics(unittest.TestCase):
    """Energy evaluation metrics."""

    def test_relative_error(self):
        self.assertAlmostEqual(Metrics.relative_error(-9.9, -10.0), 0.01)
        self.assertIsNone(Metrics.relative_error(-9.9, None))
        self.assertIsNone(Metrics.relative_error(-9.9, 0.0))

    def test_undershoot_and_ground(self):
        self.assertAlmostEqual(Metrics.truncation_undershoot(-10.2, -10.0), -0.2)
        self.assertTrue(Metrics.below_ground(-10.2, -10.0))
        self.assertFalse(Metrics.below_ground(-10.0 - 1e-8, -10.0))
        self.assertFalse(Metrics.below_ground(-11.0, None))

    def test_compare_runs(self):
        stats = Metrics.compare_runs([-9.0, -9.5, -10.0], exact=-10.0)
        self.assertEqual(stats["best_energy"], -10.0)
        self.assertAlmostEqual(stats["median_relative_error"], 0.05)
        self.assertEqual(Metrics.bond_uniformity([0.2, 0.5, 0.3]), 0.3)
        self.assertEqual(Metrics.bond_uniformity([]), 0.0)


class TestExperimentRunner(unittest.TestCase):
    """Run directories written by training and sweeps."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def quiet(self):
        return contextlib.redirect_stdout(io.StringIO())

    def test_training_run_directory(self):
        runner = ExperimentRunner(tfim_config(), runs_dir=self.tmp.name, verbose=False)
        with self.quiet():
            report = runner.run_training()
        run_dir = report["run_dir"]
        for name in ("config.cfg", "run_info.json", "checkpoint.json", "trace.csv", "params.json", "report.json"):
            self.assertTrue(os.path.exists(os.path.join(run_dir, name)), name)
        saved = read_json(os.path.join(run_dir, "report.json"))
        self.assertEqual(saved["model"], "tfim1d")
        self.assertIsNotNone(saved["exact"])
        self.assertAlmostEqual(saved["undershoot"], saved["energy_train"] - saved["energy_report"])
        self.assertGreaterEqual(saved["energy_report"], saved["exact"] - 1e-6)
        self.assertEqual(load_params(os.path.join(run_dir, "params.json"), 3).size, 3)
        self.assertEqual(read_json(os.path.join(run_dir, "run_info.json"))["seed"], 0)

    def test_proxy_run_reports_full_energy(self):
        config = parse_config({
            "model": {"model": "kitaev", "nx": "4", "ny": "4", "jx": "0.3", "jy": "0.3", "use_proxy": "true"},
            "ansatz": {"reps": "1"},
            "optimizer": {"record_every": "5"},
            "schedule": {"iterations": "5", "delta_c": "1e-3"},
            "report": {"delta_c": "0"},
        })
        runner = ExperimentRunner(config, runs_dir=self.tmp.name, verbose=False)
        self.assertEqual(len(runner.cost_operator(runner.build_hamiltonian())), 3)
        with self.quiet():
            report = runner.run_training()
        self.assertTrue(report["use_proxy"])
        self.assertIn("energy_full_report", report)
        self.assertAlmostEqual(report["energy_full_report"], report["energy_report"], places=8)

    def test_sweep_chains_warm_starts(self):
        config = tfim_config(sweep={"parameter": "gx", "values": "0.5, 1.0, 1.5"})
        runner = ExperimentRunner(config, runs_dir=self.tmp.name, verbose=False)
        with self.quiet():
            frame = runner.run_sweep()
        self.assertEqual(list(frame["coupling"]), [0.5, 1.0, 1.5])
        self.assertEqual(list(frame["warm_start"]), [False, True, True])
        self.assertTrue((frame["error"] == "").all())
        sweep_dirs = [d for d in os.listdir(self.tmp.name) if d.startswith("sweep-tfim1d")]
        self.assertEqual(len(sweep_dirs), 1)
        written = pd.read_csv(os.path.join(self.tmp.name, sweep_dirs[0], "sweep.csv"))
        self.assertEqual(len(written), 3)
        self.assertEqual(len(runner.results), 3)

    def test_sweep_needs_section(self):
        with self.assertRaises(ValueError):
            ExperimentRunner(tfim_config(), runs_dir=self.tmp.name, verbose=False).run_sweep()


if __name__ == '__main__':
    unittest.main()
