import os
import tempfile
import unittest

import numpy as np

from circuits.circuit import InitialState
from circuits.gates import Free
from models.ansatz import PARAMS_PER_REP, ising_ansatz, kitaev_ansatz, parameter_names
from models.hamiltonians import (
    build_hamiltonian,
    ising1d_hamiltonian,
    ising2d_hamiltonian,
    kitaev_hamiltonian,
    plaquette_operator,
    plaquette_operators,
    proxy_hamiltonian,
)
from models.lattices import (
    LatticeKind,
    chain,
    heavy_hex,
    honeycomb,
    plaquette_count,
    plaquette_sites,
    read_edge_list,
    square,
)
from pauli.pauli_string import PauliString, commutes, multiply_all
from pauli.sparse_operator import SparseOperator
from simulators.statevector import statevector_expectation
from utils.exceptions import ParameterError


class TestLattices(unittest.TestCase):
    """Lattice construction and bond bookkeeping."""

    def test_chain(self):
        lattice = chain(12)
        self.assertEqual(len(lattice.bonds), 12)
        self.assertEqual((lattice.bonds[-1].i, lattice.bonds[-1].j), (11, 0))
        self.assertEqual(lattice.max_degree(), 2)
        with self.assertRaises(ParameterError):
            chain(2)

    def test_square(self):
        lattice = square(4, 3)
        self.assertEqual(lattice.n, 12)
        self.assertEqual(len(lattice.bonds), 24)
        self.assertTrue(all(d == 4 for _, d in lattice.graph().degree()))
        self.assertTrue(lattice.is_translation_invariant())

    def test_heavy_hex(self):
        lattice = heavy_hex()
        self.assertEqual(lattice.n, 127)
        self.assertEqual(len(lattice.bonds), 144)
        self.assertLessEqual(lattice.max_degree(), 3)
        self.assertFalse(lattice.is_translation_invariant())

    def test_honeycomb_bond_types(self):
        lattice = honeycomb(8, 6)
        self.assertEqual(lattice.n, 48)
        for kind in "xyz":
            self.assertEqual(len(lattice.bonds_of(kind)), 24)
        graph = lattice.graph()
        for site in range(lattice.n):
            kinds = sorted(graph.edges[site, other]["kind"] for other in graph.neighbors(site))
            self.assertEqual(kinds, ["x", "y", "z"])

    def test_honeycomb_reference_bonds(self):
        lattice = honeycomb(8, 6)
        pairs = {kind: {frozenset((b.i, b.j)) for b in lattice.bonds_of(kind)} for kind in "xyz"}
        self.assertIn(frozenset((0, 1)), pairs["x"])
        self.assertIn(frozenset((8, 9)), pairs["y"])
        self.assertIn(frozenset((2, 10)), pairs["z"])

    def test_honeycomb_dimension_checks(self):
        with self.assertRaises(ParameterError):
            honeycomb(5, 6)
        with self.assertRaises(ParameterError):
            honeycomb(2, 4)

    def test_plaquette_sites(self):
        self.assertEqual(plaquette_count(8, 6), 24)
        self.assertEqual(plaquette_sites(8, 6, 9), [18, 19, 20, 26, 27, 28])
        self.assertEqual(plaquette_sites(4, 4, 2), [5, 6, 7, 9, 10, 11])
        with self.assertRaises(ParameterError):
            plaquette_sites(8, 6, 24)

    def test_edge_list_file(self):
        lattice = honeycomb(4, 4)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "honeycomb.txt")
            lattice.write_edge_list(path)
            restored = read_edge_list(path, LatticeKind.HONEYCOMB_PBC)
        self.assertEqual(restored.n, lattice.n)
        self.assertEqual({(frozenset((b.i, b.j)), b.kind) for b in restored.bonds},
                         {(frozenset((b.i, b.j)), b.kind) for b in lattice.bonds})


class TestHamiltonians(unittest.TestCase):
    """Model Hamiltonians and their proxies."""

    def test_tfim_terms(self):
        h = ising1d_hamiltonian(12, 1.0)
        self.assertEqual(len(h), 24)
        self.assertEqual(h.operator.coefficient(PauliString.from_sites(12, {11: "Z", 0: "Z"})), -1.0)
        self.assertEqual(len(ising1d_hamiltonian(12, 1.0, 0.5)), 36)
        self.assertEqual(len(ising1d_hamiltonian(12, 0.0)), 12)

    def test_ising2d(self):
        self.assertEqual(len(ising2d_hamiltonian(heavy_hex(), 1.0)), 144 + 127)
        self.assertEqual(ising2d_hamiltonian(square(4, 4), 0.5).model, "ising_square")
        with self.assertRaises(ParameterError):
            ising2d_hamiltonian(honeycomb(4, 4), 1.0)

    def test_kitaev_terms(self):
        h = kitaev_hamiltonian(8, 6, 0.3, 0.3, 1.0)
        self.assertEqual(len(h), 72)
        self.assertEqual(len(kitaev_hamiltonian(8, 6, 0.0, 0.0, 1.0)), 24)
        self.assertEqual(h.operator.coefficient(PauliString.from_sites(48, {0: "X", 1: "X"})), -0.3)

    def test_kitaev_proxy_has_three_terms(self):
        proxy = proxy_hamiltonian(kitaev_hamiltonian(8, 6, 0.3, 0.3, 1.0))
        self.assertEqual(len(proxy), 3)
        self.assertTrue(proxy.is_proxy)
        self.assertEqual(proxy.sites, 48)
        self.assertAlmostEqual(proxy.operator.coefficient(PauliString.from_sites(48, {2: "Z", 10: "Z"})), -24.0)

    def test_proxy_rejects_open_lattice(self):
        with self.assertRaises(ParameterError):
            proxy_hamiltonian(ising2d_hamiltonian(heavy_hex(), 1.0))

    def test_chain_proxy_matches_full_energy(self):
        h = ising1d_hamiltonian(8, 0.8, 0.3)
        circuit = ising_ansatz(h.lattice, 2)
        theta = np.random.default_rng(1).uniform(-1, 1, circuit.param_count)
        full = statevector_expectation(circuit, theta, h.operator)
        proxy = statevector_expectation(circuit, theta, proxy_hamiltonian(h).operator)
        self.assertAlmostEqual(full, proxy, places=9)

    def test_square_proxy_matches_full_energy(self):
        h = ising2d_hamiltonian(square(3, 3), 1.2)
        circuit = ising_ansatz(h.lattice, 1)
        theta = np.random.default_rng(4).uniform(-1, 1, circuit.param_count)
        full = statevector_expectation(circuit, theta, h.operator)
        proxy = statevector_expectation(circuit, theta, proxy_hamiltonian(h).operator)
        self.assertAlmostEqual(full, proxy, places=9)

    def test_build_hamiltonian(self):
        self.assertEqual(build_hamiltonian("tfim1d", 6, gx=1.0).model, "tfim1d")
        self.assertEqual(build_hamiltonian("kitaev", 4, 4, jz=1.0).lattice.kind, LatticeKind.HONEYCOMB_PBC)
        with self.assertRaises(ParameterError):
            build_hamiltonian("heisenberg", 6)

    def test_plaquette_word(self):
        self.assertEqual(plaquette_operator(8, 6, 9).to_word(), "Y18 Z19 X20 X26 Z27 Y28")

    def test_plaquettes_are_conserved(self):
        h = kitaev_hamiltonian(4, 4, 0.7, 0.4, 1.0).operator
        plaquettes = plaquette_operators(4, 4)
        self.assertEqual(len(plaquettes), 8)
        for w in plaquettes:
            self.assertTrue(h.commutes_with(SparseOperator.single(w)))
            self.assertTrue(all(commutes(w, v) for v in plaquettes))

    def test_plaquette_product_is_identity(self):
        _, product = multiply_all(plaquette_operators(8, 6))
        self.assertTrue(product.is_identity())


class TestAnsatz(unittest.TestCase):
    """Hamiltonian variational circuits."""

    def test_parameter_layout(self):
        self.assertEqual(parameter_names(2), ["gamma_1", "beta_1", "alpha_1", "gamma_2", "beta_2", "alpha_2"])
        circuit = ising_ansatz(chain(6), 3)
        self.assertEqual(circuit.param_count, 3 * PARAMS_PER_REP)
        self.assertEqual(circuit.initial_state, InitialState.ALL_PLUS)
        self.assertEqual(len(circuit), 3 * 18)
        self.assertEqual(circuit.gates[6].angle, Free(1))
        self.assertEqual(circuit.gates[12].angle, Free(2))

    def test_heavy_hex_two_qubit_count(self):
        circuit = ising_ansatz(heavy_hex(), 15)
        self.assertEqual(circuit.two_qubit_rotation_count(), 2160)
        self.assertEqual(circuit.param_count, 45)

    def test_reps_must_be_positive(self):
        with self.assertRaises(ParameterError):
            ising_ansatz(chain(4), 0)
        with self.assertRaises(ParameterError):
            kitaev_ansatz(4, 4, 0)

    def test_spin_flip_symmetry_without_longitudinal_layer(self):
        n = 6
        flip = PauliString.from_sites(n, {q: "X" for q in range(n)})
        circuit = ising_ansatz(chain(n), 2, longitudinal=False)
        self.assertTrue(all(commutes(g.axis, flip) for g in circuit.rotations))
        with_field = ising_ansatz(chain(n), 2)
        self.assertFalse(all(commutes(g.axis, flip) for g in with_field.rotations))
        self.assertTrue(ising1d_hamiltonian(n, 1.0).operator.commutes_with(SparseOperator.single(flip)))

    def test_kitaev_layers(self):
        circuit = kitaev_ansatz(4, 4, 2)
        self.assertEqual(circuit.param_count, 6)
        rotations = circuit.rotations
        self.assertEqual(len(rotations), 2 * 24)
        self.assertEqual(rotations[0].angle, Free(0))
        self.assertEqual({rotations[0].axis.letter(q) for q in rotations[0].axis.support()}, {"X"})
        self.assertEqual(rotations[8].angle, Free(1))
        self.assertEqual(rotations[16].angle, Free(2))
        self.assertGreater(len(circuit.cliffords), 0)
        self.assertTrue(kitaev_ansatz(4, 4, 1, flux_free_prefix=False).cliffords == [])

    def test_kitaev_layers_preserve_fluxes(self):
        circuit = kitaev_ansatz(4, 4, 1)
        for w in plaquette_operators(4, 4):
            self.assertTrue(all(commutes(g.axis, w) for g in circuit.rotations))


if __name__ == '__main__':
    unittest.main()
