import contextlib
import io
import os
import tempfile
import unittest
from unittest import mock

from pps import main
from utils.io import read_json


ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

TFIM_CFG = """\
[model]
model = tfim1d
nx = 6
gx = 1.0

[ansatz]
reps = 1

[optimizer]
eta = 0.05
record_every = 5

[schedule]
iterations = 10
delta_c = 1e-4

[report]
delta_c = 0
"""


class TestCommandLine(unittest.TestCase):
    """End-to-end runs of the pps command."""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        patcher = mock.patch.dict(os.environ, {"PPS_RUNS_DIR": os.path.join(self.tmp.name, "runs"),
                                               "PPS_NUM_WORKERS": "1"})
        patcher.start()
        self.addCleanup(patcher.stop)
        self.config = self.path("tfim.cfg")
        with open(self.config, "w") as f:
            f.write(TFIM_CFG)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def run_cli(self, *argv):
        out = io.StringIO()
        with contextlib.redirect_stdout(out):
            code = main(list(argv))
        return code, out.getvalue()

    def train_once(self):
        code, _ = self.run_cli("train", self.config)
        self.assertEqual(code, 0)
        runs = os.path.join(self.tmp.name, "runs")
        run_dir = os.path.join(runs, sorted(os.listdir(runs))[0])
        return run_dir

    def test_train_then_evaluate(self):
        run_dir = self.train_once()
        report = read_json(os.path.join(run_dir, "report.json"))
        params = os.path.join(run_dir, "params.json")
        output = self.path("evaluate.json")
        code, _ = self.run_cli("evaluate", self.config, "--params", params, "--simulator", "statevector",
                               "--output", output)
        self.assertEqual(code, 0)
        self.assertAlmostEqual(read_json(output)["energy"], report["energy_report"], places=8)

        trace = self.path("engine.csv")
        code, _ = self.run_cli("evaluate", self.config, "--params", params, "--trace", trace)
        self.assertEqual(code, 0)
        self.assertTrue(os.path.exists(trace))

        compare = self.path("compare.json")
        code, _ = self.run_cli("evaluate", self.config, "--params", params, "--simulator", "pauli_path",
                               "statevector", "pauli_path", "--delta-c", "0", "--output", compare)
        self.assertEqual(code, 0)
        result = read_json(compare)
        self.assertEqual([row["simulator"] for row in result["comparison"]], ["pauli_path", "statevector"])
        self.assertLess(result["max_deviation"], 1e-9)

    def test_observables_and_tomography(self):
        out_dir = self.path("obs")
        code, _ = self.run_cli("observables", self.config, "--output-dir", out_dir)
        self.assertEqual(code, 0)
        for name in ("bonds.csv", "correlations.csv", "observables.json"):
            self.assertTrue(os.path.exists(os.path.join(out_dir, name)), name)
        # theta = 0 is the |+...+> product state
        self.assertAlmostEqual(read_json(os.path.join(out_dir, "observables.json"))["magnetization_x"], 1.0)

        output = self.path("rho.json")
        code, _ = self.run_cli("tomography", self.config, "--sites", "0,1", "--output", output,
                               "--coefficients", self.path("coefficients.csv"))
        self.assertEqual(code, 0)
        result = read_json(output)
        self.assertAlmostEqual(result["trace"], 1.0)
        self.assertAlmostEqual(result["entropy"], 0.0, places=9)

    def test_oracle(self):
        output = self.path("oracle.json")
        code, _ = self.run_cli("oracle", "kitaev", "8", "6", "0.3", "0.3", "1.0", "--output", output)
        self.assertEqual(code, 0)
        self.assertAlmostEqual(read_json(output)["energy"], -25.0873, delta=1e-3)
        self.assertLess(read_json(output)["ground_energy"], read_json(output)["energy"])
        code, _ = self.run_cli("oracle", "tfim1d", "8", "0", "--output", output)
        self.assertEqual(code, 0)
        self.assertAlmostEqual(read_json(output)["energy"], -8.0)
        code, text = self.run_cli("oracle", "kitaev", "8", "6")
        self.assertEqual(code, 1)
        self.assertIn("❌ Error", text)

    def test_braid_fixed_point(self):
        output = self.path("braid.json")
        code, _ = self.run_cli("braid", os.path.join(ROOT, "configs", "kitaev_8x6_j03.cfg"),
                               "--params", os.path.join(ROOT, "data", "params", "kitaev_8x6_fixed_point.json"),
                               "--kind", "epsi", "--output", output)
        self.assertEqual(code, 0)
        phase = read_json(output)["epsi"]
        self.assertAlmostEqual(phase["real"], -1.0, places=9)
        self.assertAlmostEqual(phase["imag"], 0.0, places=9)

    def test_braid_needs_kitaev(self):
        code, text = self.run_cli("braid", self.config)
        self.assertEqual(code, 1)
        self.assertIn("kitaev", text)

    def test_export_qasm(self):
        output = self.path("ansatz.qasm")
        code, _ = self.run_cli("export-qasm", self.config, "--output", output)
        self.assertEqual(code, 0)
        with open(output) as f:
            text = f.read()
        self.assertTrue(text.startswith("// tfim1d ansatz, 1 reps"))
        self.assertIn("qreg q[6];", text)

    def test_invalid_config(self):
        bad = self.path("bad.cfg")
        with open(bad, "w") as f:
            f.write(TFIM_CFG.replace("reps = 1", ""))
        code, text = self.run_cli("train", bad)
        self.assertEqual(code, 1)
        self.assertIn("ansatz.reps", text)

    def test_wrong_parameter_count(self):
        params = self.path("params.json")
        with open(params, "w") as f:
            f.write('{"theta": [0.1, 0.2]}')
        code, text = self.run_cli("evaluate", self.config, "--params", params)
        self.assertEqual(code, 1)
        self.assertIn("parameters", text)


if __name__ == '__main__':
    unittest.main()
