import os
import tempfile
import unittest

import numpy as np

from circuits.circuit import Circuit, InitialState
from circuits.gates import Bound, CliffordGate, Free, PauliRotation
from pauli.pauli_string import PauliString
from pauli.sparse_operator import SparseOperator
from simulators.pauli_path import (
    PauliPathSimulator,
    conjugate_clifford,
    conjugate_rotation,
    expectation,
    heisenberg_evolve,
)
from simulators.statevector import StatevectorSimulator, statevector_expectation
from utils.exceptions import CapacityError, DimensionError, ParameterError


def random_pauli(rng: np.random.Generator, n: int, max_weight: int = 3) -> PauliString:
    weight = int(rng.integers(1, min(max_weight, n) + 1))
    sites = rng.choice(n, size=weight, replace=False)
    return PauliString.from_sites(n, {int(q): "XYZ"[int(rng.integers(3))] for q in sites})


def random_circuit(rng: np.random.Generator, n: int, num_gates: int) -> Circuit:
    state = InitialState.ALL_PLUS if rng.random() < 0.5 else InitialState.ALL_ZERO
    circuit = Circuit(n, initial_state=state)
    for _ in range(num_gates):
        roll = rng.random()
        if roll < 0.55:
            angle = Free(circuit.param_count) if rng.random() < 0.7 else Bound(float(rng.uniform(-np.pi, np.pi)))
            circuit = circuit.append(PauliRotation(random_pauli(rng, n), angle, int(rng.choice([-1, 1]))))
        elif roll < 0.8 and n >= 2:
            a, b = rng.choice(n, size=2, replace=False)
            circuit = circuit.append_clifford("CNOT", int(a), int(b))
        else:
            circuit = circuit.append_clifford(str(rng.choice(["H", "S", "Sdg"])), int(rng.integers(n)))
    return circuit


def random_observable(rng: np.random.Generator, n: int, terms: int = 4) -> SparseOperator:
    return SparseOperator(n, [(random_pauli(rng, n, n), float(rng.normal())) for _ in range(terms)])


class TestCliffordRules(unittest.TestCase):
    """Heisenberg conjugation of single Pauli strings by Clifford gates."""

    def conj(self, label, kind, *qubits):
        op = SparseOperator.from_labels({label: 1.0})
        out = conjugate_clifford(op, CliffordGate(kind, qubits)).terms()
        self.assertEqual(len(out), 1)
        return out[0].coeff, out[0].string.to_label()

    def test_hadamard(self):
        self.assertEqual(self.conj("X", "H", 0), (1.0, "Z"))
        self.assertEqual(self.conj("Z", "H", 0), (1.0, "X"))
        self.assertEqual(self.conj("Y", "H", 0), (-1.0, "Y"))

    def test_phase_gates(self):
        # S^dag P S
        self.assertEqual(self.conj("X", "S", 0), (-1.0, "Y"))
        self.assertEqual(self.conj("Y", "S", 0), (1.0, "X"))
        self.assertEqual(self.conj("Z", "S", 0), (1.0, "Z"))
        self.assertEqual(self.conj("X", "Sdg", 0), (1.0, "Y"))
        self.assertEqual(self.conj("Y", "Sdg", 0), (-1.0, "X"))

    def test_cnot(self):
        self.assertEqual(self.conj("XI", "CNOT", 0, 1), (1.0, "XX"))
        self.assertEqual(self.conj("IZ", "CNOT", 0, 1), (1.0, "ZZ"))
        self.assertEqual(self.conj("ZI", "CNOT", 0, 1), (1.0, "ZI"))
        self.assertEqual(self.conj("IX", "CNOT", 0, 1), (1.0, "IX"))
        self.assertEqual(self.conj("YY", "CNOT", 0, 1), (-1.0, "XZ"))

    def test_clifford_on_high_qubits(self):
        n = 100
        op = SparseOperator.single(PauliString.from_sites(n, {70: "X"}))
        out = conjugate_clifford(op, CliffordGate("CNOT", (70, 3))).terms()[0]
        self.assertEqual(out.string.to_word(), "X3 X70")

    def test_out_of_range(self):
        with self.assertRaises(DimensionError):
            conjugate_clifford(SparseOperator.from_labels({"XX": 1.0}), CliffordGate("H", (2,)))


class TestRotations(unittest.TestCase):
    """Conjugation by Pauli rotations."""

    def test_commuting_term_untouched(self):
        op = SparseOperator.from_labels({"ZZ": 0.5})
        out = conjugate_rotation(op, PauliString.from_label("ZI"), 0.8)
        self.assertTrue(out.allclose(op, atol=0.0))

    def test_anticommuting_term_splits(self):
        theta = 0.37
        out = conjugate_rotation(SparseOperator.from_labels({"Z": 1.0}), PauliString.from_label("X"), theta)
        self.assertAlmostEqual(out.coefficient(PauliString.from_label("Z")), np.cos(theta))
        self.assertAlmostEqual(out.coefficient(PauliString.from_label("Y")), np.sin(theta))

    def test_pi_rotation_is_exact_pauli_conjugation(self):
        out = conjugate_rotation(SparseOperator.from_labels({"ZI": 1.0}), PauliString.from_label("XX"), np.pi)
        self.assertEqual(len(out), 1)
        self.assertEqual(out.coefficient(PauliString.from_label("ZI")), -1.0)

    def test_half_pi_rotation_is_clifford(self):
        out = conjugate_rotation(SparseOperator.from_labels({"X": 1.0}), PauliString.from_label("Z"), np.pi / 2)
        self.assertEqual(len(out), 1)

    def test_strict_truncation(self):
        op = SparseOperator.from_labels({"Z": 1.0})
        theta = np.pi / 3
        kept = conjugate_rotation(op, PauliString.from_label("X"), theta, delta_c=0.6)
        self.assertEqual(len(kept), 1)
        self.assertAlmostEqual(kept.coefficient(PauliString.from_label("Y")), np.sin(theta))
        with self.assertRaises(ParameterError):
            conjugate_rotation(op, PauliString.from_label("X"), theta, delta_c=-0.1)


class TestEngineExactness(unittest.TestCase):
    """Untruncated Pauli path simulation against dense amplitudes."""

    def test_random_circuits_match_statevector(self):
        rng = np.random.default_rng(2024)
        for trial in range(100):
            n = int(rng.integers(1, 9))
            circuit = random_circuit(rng, n, int(rng.integers(1, 41)))
            theta = rng.uniform(-np.pi, np.pi, circuit.param_count)
            observable = random_observable(rng, n)
            exact = statevector_expectation(circuit, theta, observable)
            value = expectation(circuit, observable, theta, delta_c=0.0)
            self.assertLess(abs(value - exact), 1e-10, f"trial {trial}: n={n}, {len(circuit)} gates")

    def test_simulator_classes_agree(self):
        rng = np.random.default_rng(7)
        circuit = random_circuit(rng, 6, 30)
        theta = rng.uniform(-1, 1, circuit.param_count)
        observable = random_observable(rng, 6)
        pps = PauliPathSimulator(delta_c=0.0)
        dense = StatevectorSimulator()
        self.assertAlmostEqual(pps.expectation(circuit, observable, theta),
                               dense.expectation(circuit, observable, theta), places=10)
        self.assertGreaterEqual(pps.get_run_time(), 0.0)

    def test_initial_state_expectations(self):
        self.assertEqual(expectation(Circuit(3), SparseOperator.from_labels({"ZZI": 1.0, "XII": 1.0})), 1.0)
        plus = Circuit(3, initial_state=InitialState.ALL_PLUS)
        self.assertEqual(expectation(plus, SparseOperator.from_labels({"ZZI": 1.0, "XII": 1.0})), 1.0)

    def test_truncation_error_is_bounded(self):
        rng = np.random.default_rng(3)
        circuit = random_circuit(rng, 8, 40)
        theta = rng.uniform(-np.pi, np.pi, circuit.param_count)
        observable = random_observable(rng, 8)
        exact = statevector_expectation(circuit, theta, observable)
        tight = abs(expectation(circuit, observable, theta, delta_c=1e-12) - exact)
        self.assertLessEqual(tight, 1e-5)
        loose = heisenberg_evolve(observable, circuit, theta, 1e-1)
        self.assertTrue(np.all(np.abs(loose.coeffs) > 1e-1))

    def test_evolution_is_deterministic(self):
        rng = np.random.default_rng(5)
        circuit = random_circuit(rng, 7, 35)
        theta = rng.uniform(-np.pi, np.pi, circuit.param_count)
        observable = random_observable(rng, 7)
        first = heisenberg_evolve(observable, circuit, theta, 1e-4)
        second = heisenberg_evolve(observable, circuit, theta, 1e-4)
        self.assertEqual(first.dump(), second.dump())

    def test_sharded_merge_matches_serial(self):
        n = 12
        circuit = Circuit(n, initial_state=InitialState.ALL_PLUS)
        for q in range(n):
            circuit = circuit.append_rotation(PauliString.from_sites(n, {q: "Y"}), Free(0))
            circuit = circuit.append_rotation(PauliString.from_sites(n, {q: "Z", (q + 1) % n: "Z"}), Free(1))
        observable = SparseOperator(n, [(PauliString.from_sites(n, {q: "X"}), 1.0) for q in range(n)])
        theta = [0.3, 0.7]
        serial = heisenberg_evolve(observable, circuit, theta, 0.0, num_workers=1)
        sharded = heisenberg_evolve(observable, circuit, theta, 0.0, num_workers=4)
        self.assertEqual(len(serial), len(sharded))
        self.assertTrue(serial.allclose(sharded, atol=1e-12))

    def test_hundred_qubit_clifford_circuit(self):
        n = 100
        circuit = Circuit(n).append_clifford("H", 0)
        for q in range(n - 1):
            circuit = circuit.append_clifford("CNOT", q, q + 1)
        observable = SparseOperator.single(PauliString.from_sites(n, {0: "Z", 99: "Z"}))
        self.assertAlmostEqual(expectation(circuit, observable), 1.0)
        self.assertAlmostEqual(expectation(circuit, PauliString.from_sites(n, {50: "Z"})), 0.0)

    def test_trace_records_every_gate(self):
        rng = np.random.default_rng(9)
        circuit = random_circuit(rng, 5, 20)
        simulator = PauliPathSimulator(delta_c=1e-3)
        simulator.expectation(circuit, random_observable(rng, 5), rng.uniform(-1, 1, circuit.param_count))
        frame = simulator.engine_stats().to_frame()
        self.assertEqual(len(frame), len(circuit))
        self.assertEqual(frame["gate_index"].iloc[0], len(circuit) - 1)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "trace.csv")
            simulator.engine_stats().write_csv(path)
            self.assertTrue(os.path.exists(path))

    def test_size_and_threshold_errors(self):
        with self.assertRaises(DimensionError):
            expectation(Circuit(2), SparseOperator.from_labels({"ZZZ": 1.0}))
        with self.assertRaises(ParameterError):
            PauliPathSimulator(delta_c=float("nan"))
        with self.assertRaises(CapacityError):
            StatevectorSimulator(max_qubits=4).expectation(Circuit(5), PauliString.from_label("ZIIII"))


if __name__ == '__main__':
    unittest.main()
