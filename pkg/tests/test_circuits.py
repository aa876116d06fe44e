import unittest

import numpy as np

from circuits.circuit import Circuit, InitialState, compose
from circuits.gates import Bound, CliffordGate, Free, PauliRotation, reduce_angle
from circuits.qasm import from_qasm, rotation_lines, to_qasm
from pauli.pauli_string import PauliString
from pauli.sparse_operator import SparseOperator
from simulators.statevector import statevector_evolve, statevector_expectation
from utils.exceptions import DimensionError, ParameterError


def _zz(n, i, j):
    return PauliString.from_sites(n, {i: "Z", j: "Z"})


class TestGates(unittest.TestCase):
    """Unit tests for gate records."""

    def test_rotation_validation(self):
        with self.assertRaises(ParameterError):
            PauliRotation(PauliString.identity(2), Bound(0.1))
        with self.assertRaises(ParameterError):
            PauliRotation(PauliString.from_label("XZ"), Bound(0.1), sign=2)
        with self.assertRaises(ParameterError):
            Bound(float("inf"))
        with self.assertRaises(ParameterError):
            Free(-1)

    def test_resolve(self):
        gate = PauliRotation(PauliString.from_label("XZ"), Free(1), sign=-1)
        self.assertEqual(gate.resolve([0.5, 0.25]), -0.25)
        self.assertEqual(gate.qubits, (0, 1))
        self.assertEqual(PauliRotation(PauliString.from_label("Y"), Bound(0.7)).resolve([]), 0.7)

    def test_clifford_validation(self):
        with self.assertRaises(ParameterError):
            CliffordGate("T", (0,))
        with self.assertRaises(ParameterError):
            CliffordGate("CNOT", (1, 1))
        with self.assertRaises(ParameterError):
            CliffordGate("H", (0, 1))

    def test_reduce_angle(self):
        self.assertAlmostEqual(reduce_angle(3 * np.pi / 2), -np.pi / 2)
        self.assertAlmostEqual(reduce_angle(np.pi), -np.pi)
        self.assertAlmostEqual(reduce_angle(0.3), 0.3)


class TestCircuit(unittest.TestCase):
    """Unit tests for circuit construction."""

    def setUp(self):
        self.circuit = (
            Circuit(3)
            .append_rotation(_zz(3, 0, 1), Free(0))
            .append_clifford("H", 2)
            .append_rotation(PauliString.from_label("XXX"), Free(1))
            .append_rotation(_zz(3, 1, 2), Free(0))
        )

    def test_parameter_count(self):
        self.assertEqual(self.circuit.param_count, 2)
        self.assertEqual(len(self.circuit), 4)
        self.assertEqual(self.circuit.two_qubit_rotation_count(), 2)
        self.assertFalse(self.circuit.is_clifford())

    def test_free_index_must_not_skip(self):
        with self.assertRaises(ParameterError):
            Circuit(2).append_rotation(_zz(2, 0, 1), Free(1))

    def test_size_checks(self):
        with self.assertRaises(DimensionError):
            Circuit(2).append_rotation(PauliString.from_label("XXX"), Bound(0.1))
        with self.assertRaises(DimensionError):
            Circuit(2).append_clifford("CNOT", 0, 2)
        with self.assertRaises(ParameterError):
            Circuit(0)

    def test_bind(self):
        bound = self.circuit.bind([0.1, 0.2])
        self.assertEqual(bound.param_count, 0)
        self.assertEqual(bound.gates[3].angle, Bound(0.1))
        with self.assertRaises(DimensionError):
            self.circuit.bind([0.1])
        with self.assertRaises(ParameterError):
            self.circuit.bind([0.1, float("nan")])

    def test_compose_shifts_parameters(self):
        first = Circuit(3, initial_state=InitialState.ALL_PLUS).append_rotation(_zz(3, 0, 2), Free(0))
        combined = compose(self.circuit, first)
        self.assertEqual(combined.param_count, 3)
        self.assertEqual(combined.initial_state, InitialState.ALL_PLUS)
        self.assertEqual(combined.gates[0].angle, Free(0))
        self.assertEqual(combined.gates[1].angle, Free(1))
        self.assertEqual(combined.gates[3].angle, Free(2))

    def test_json_preserves_circuit(self):
        restored = Circuit.from_json(self.circuit.to_json())
        self.assertEqual(restored, self.circuit)


class TestQasm(unittest.TestCase):
    """OpenQASM export and re-import."""

    def test_rotation_lowering(self):
        lines = rotation_lines(PauliString.from_label("XYZ"), 0.5)
        self.assertEqual(lines[0], "h q[0];")
        self.assertIn("cx q[0],q[1];", lines)
        self.assertIn("rz(0.5) q[2];", lines)
        self.assertEqual(lines[-1], "s q[1];")

    def test_unbound_export_rejected(self):
        circuit = Circuit(2).append_rotation(_zz(2, 0, 1), Free(0))
        with self.assertRaises(ParameterError):
            to_qasm(circuit)

    def test_header_and_measurements(self):
        circuit = Circuit(2).append_clifford("CNOT", 0, 1)
        text = to_qasm(circuit, measure=[1], comments=["bell pair"])
        self.assertTrue(text.startswith("// bell pair\nOPENQASM 2.0;"))
        self.assertIn("creg c[1];", text)
        self.assertIn("measure q[1] -> c[0];", text)

    def test_reimport_reproduces_expectations(self):
        rng = np.random.default_rng(11)
        n = 4
        circuit = Circuit(n, initial_state=InitialState.ALL_PLUS)
        for k, label in enumerate(["ZZII", "IYXI", "XIIZ", "IIYY"]):
            circuit = circuit.append_rotation(PauliString.from_label(label), Free(k))
        circuit = circuit.append_clifford("CNOT", 1, 3).append_clifford("Sdg", 2)
        theta = rng.uniform(-np.pi, np.pi, circuit.param_count)
        observable = SparseOperator.from_labels({"ZIZI": 0.7, "IXYI": -1.1, "YIIX": 0.4})

        restored = from_qasm(to_qasm(circuit, theta, measure=[0, 1]))
        self.assertEqual(restored.n, n)
        expected = statevector_expectation(circuit, theta, observable)
        self.assertAlmostEqual(statevector_expectation(restored, None, observable), expected, places=10)

    def test_reimport_state_matches_up_to_phase(self):
        circuit = Circuit(3).append_clifford("H", 0).append_rotation(PauliString.from_label("YXZ"), Bound(0.9))
        original = statevector_evolve(circuit)
        restored = statevector_evolve(from_qasm(to_qasm(circuit)))
        self.assertAlmostEqual(abs(np.vdot(original, restored)), 1.0, places=10)

    def test_unsupported_statement(self):
        with self.assertRaises(ParameterError):
            from_qasm('OPENQASM 2.0;\nqreg q[2];\nccx q[0],q[1],q[2];\n')
        with self.assertRaises(ParameterError):
            from_qasm('OPENQASM 2.0;\nh q[0];\n')


if __name__ == '__main__':
    unittest.main()
