import unittest

import numpy as np

from circuits.circuit import InitialState
from models.ansatz import kitaev_ansatz
from models.hamiltonians import plaquette_operator, plaquette_operators
from models.lattices import honeycomb
from pauli.pauli_string import PauliString
from simulators.pauli_path import expectation
from simulators.statevector import StatevectorSimulator, statevector_expectation
from topo.braiding import (
    BRAID_KINDS,
    BraidSpec,
    ancilla_phase,
    braid_qasm,
    braid_spec,
    braiding_phase,
    controlled_braid_circuit,
    measurement_basis,
)
from topo.flux_free import (
    EffectiveGate,
    EffectiveLayout,
    basis_change_effective,
    effective_circuit,
    effective_gate,
    flux_free_circuit,
    toric_prep_effective,
)
from utils.exceptions import DimensionError, ParameterError


def hexagon_braid_4x4() -> BraidSpec:
    """A fermion loop around hexagon 2 of the 4x4 lattice, with a Z7 creation gate."""
    n = 16
    words = ["X5 X6", "Y6 Y7", "Z7 Z11", "X10 X11", "Y9 Y10", "Z5 Z9"]
    return BraidSpec("epsi", 4, 4, (PauliString.from_word(n, "Z7"),),
                     tuple(PauliString.from_word(n, w) for w in words))


class TestEffectiveLayout(unittest.TestCase):
    """Effective qubits living on the z-bonds."""

    def setUp(self):
        self.layout = EffectiveLayout.build(8, 6)

    def test_bijection(self):
        self.assertEqual(self.layout.size, 24)
        self.assertEqual(self.layout.pair(0), (0, 8))
        self.assertEqual(self.layout.pair(4), (9, 17))
        for k in range(self.layout.size):
            r, c = self.layout.position(k)
            self.assertEqual(self.layout.index(r, c), k)

    def test_index_wraps_and_validates(self):
        self.assertEqual(self.layout.index(-1, 1), self.layout.index(5, 1))
        self.assertEqual(self.layout.index(0, 8), 0)
        with self.assertRaises(ParameterError):
            self.layout.index(0, 1)
        with self.assertRaises(DimensionError):
            self.layout.pair(24)

    def test_bad_pairs_rejected(self):
        with self.assertRaises(ParameterError):
            EffectiveLayout(4, 4, tuple((q, q) for q in range(8)))

    def test_plaquette_neighbors(self):
        neighbors = self.layout.plaquette_neighbors(9)
        self.assertEqual(self.layout.pair(neighbors["left"]), (18, 26))
        self.assertEqual(self.layout.pair(neighbors["right"]), (20, 28))
        self.assertEqual(self.layout.pair(neighbors["above"])[1], 19)
        self.assertEqual(self.layout.pair(neighbors["below"])[0], 27)

    def test_effective_gate_lowering(self):
        self.assertEqual(len(effective_gate(self.layout, EffectiveGate("H", (3,)))), 3)
        self.assertEqual(len(effective_gate(self.layout, EffectiveGate("S", (3,)))), 1)
        self.assertEqual(len(effective_gate(self.layout, EffectiveGate("CNOT", (3, 4)))), 3)
        with self.assertRaises(ParameterError):
            effective_gate(self.layout, EffectiveGate("CNOT", (3, 3)))
        with self.assertRaises(ParameterError):
            EffectiveGate("T", (0,))


class TestFluxFreePreparation(unittest.TestCase):
    """Stabilizers of the prepared states."""

    def test_toric_code_on_effective_register(self):
        layout = EffectiveLayout.build(8, 6)
        circuit = effective_circuit(layout, toric_prep_effective(layout))
        for p in range(layout.size):
            self.assertAlmostEqual(expectation(circuit, layout.toric_plaquette(p)), 1.0, places=10)

    def test_basis_change_gives_effective_fluxes(self):
        layout = EffectiveLayout.build(4, 4)
        circuit = effective_circuit(layout, toric_prep_effective(layout) + basis_change_effective(layout))
        for p in range(layout.size):
            self.assertAlmostEqual(statevector_expectation(circuit, None, layout.effective_flux(p)), 1.0, places=10)

    def test_flux_free_state_4x4_dense(self):
        circuit = flux_free_circuit(4, 4)
        self.assertTrue(circuit.is_clifford())
        self.assertEqual(circuit.initial_state, InitialState.ALL_ZERO)
        simulator = StatevectorSimulator()
        state_checks = [w for w in plaquette_operators(4, 4)]
        state_checks += [PauliString.from_sites(16, {b.i: "Z", b.j: "Z"}) for b in honeycomb(4, 4).bonds_of("z")]
        for check in state_checks:
            self.assertAlmostEqual(simulator.expectation(circuit, check), 1.0, places=10)

    def test_flux_free_state_8x6(self):
        circuit = flux_free_circuit(8, 6)
        for w in plaquette_operators(8, 6):
            self.assertAlmostEqual(expectation(circuit, w), 1.0, places=10)
        for bond in honeycomb(8, 6).bonds_of("z"):
            self.assertAlmostEqual(expectation(circuit, PauliString.from_sites(48, {bond.i: "Z", bond.j: "Z"})),
                                   1.0, places=10)


class TestBraiding(unittest.TestCase):
    """Braiding phases of the abelian anyons."""

    def test_loop_reduces_to_flux(self):
        k, q = braid_spec("epsi").loop_operator()
        self.assertEqual(k, 0)
        self.assertEqual(q, plaquette_operator(8, 6, 9))
        k, q = hexagon_braid_4x4().loop_operator()
        self.assertEqual(k, 0)
        self.assertEqual(q, plaquette_operator(4, 4, 2))

    def test_em_loop_reduces_to_a_stabilizer_outside_the_plaquettes(self):
        _, q = braid_spec("em").loop_operator()
        self.assertEqual(q, PauliString.from_sites(48, {9: "Y", 10: "Z", 11: "Y", 17: "X", 18: "Z", 19: "X"}))
        self.assertNotIn(q, plaquette_operators(8, 6))

    def test_fixed_point_phases(self):
        circuit = kitaev_ansatz(8, 6, 5)
        theta = np.zeros(circuit.param_count)
        for kind in BRAID_KINDS:
            phase = braiding_phase(circuit, theta, braid_spec(kind))
            self.assertLess(abs(phase - (-1.0)), 1e-10, kind)

    def test_ancilla_circuit_matches_pauli_reduction(self):
        spec = hexagon_braid_4x4()
        circuit = kitaev_ansatz(4, 4, 1)
        theta = np.random.default_rng(8).uniform(-1, 1, circuit.param_count)
        reduced = braiding_phase(circuit, theta, spec)
        controlled = controlled_braid_circuit(circuit, theta, spec)
        self.assertEqual(controlled.n, 17)
        measured = ancilla_phase(controlled, StatevectorSimulator())
        self.assertLess(abs(measured - reduced), 1e-10)
        self.assertLess(abs(reduced - (-1.0)), 1e-10)

    def test_spec_serialization(self):
        spec = braid_spec("em")
        self.assertEqual(BraidSpec.from_json(spec.to_json()), spec)
        self.assertEqual(spec.to_dict()["creation"][0], "Z10 Z12 Y13 X21")

    def test_spec_validation(self):
        with self.assertRaises(ParameterError):
            braid_spec("ee")
        with self.assertRaises(ParameterError):
            braid_spec("em", 4, 4)
        with self.assertRaises(DimensionError):
            braiding_phase(kitaev_ansatz(4, 4, 1), None, braid_spec("em"))

    def test_qasm_export(self):
        circuit = kitaev_ansatz(8, 6, 1)
        text = braid_qasm(circuit, np.zeros(circuit.param_count), braid_spec("mpsi"), basis="y")
        self.assertIn("qreg q[49];", text)
        self.assertIn("measure q[48] -> c[0];", text)
        self.assertTrue(text.startswith("// mpsi braiding interferometer"))
        with self.assertRaises(ParameterError):
            measurement_basis(49, "z")


if __name__ == '__main__':
    unittest.main()
