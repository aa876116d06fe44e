from __future__ import annotations

import time
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np
from scipy import sparse

from circuits.circuit import Circuit, InitialState, check_theta
from circuits.gates import CliffordGate, PauliRotation
from pauli.pauli_string import PauliString
from pauli.sparse_operator import SparseOperator
from simulators.base_simulator import BaseSimulator, Observable, as_operator
from utils.exceptions import CapacityError, DimensionError, HermiticityError


MAX_QUBITS = 24

_SINGLE_QUBIT = {
    "H": np.array([[1.0, 1.0], [1.0, -1.0]], dtype=np.complex128) / np.sqrt(2.0),
    "S": np.array([[1.0, 0.0], [0.0, 1.0j]], dtype=np.complex128),
    "Sdg": np.array([[1.0, 0.0], [0.0, -1.0j]], dtype=np.complex128),
}


@lru_cache(maxsize=8)
def _basis_indices(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


def apply_pauli(state: np.ndarray, string: PauliString) -> np.ndarray:
    """P|psi> with qubit j stored in bit j of the amplitude index."""
    idx = _basis_indices(string.n)
    signs = 1 - 2 * (np.bitwise_count(idx & string.z) & 1).astype(np.int64)
    phase = 1j ** ((string.x & string.z).bit_count() % 4)
    out = np.empty_like(state)
    out[idx ^ string.x] = phase * signs * state
    return out


def _apply_single(state: np.ndarray, matrix: np.ndarray, q: int, n: int) -> np.ndarray:
    tensor = state.reshape(1 << (n - q - 1), 2, 1 << q)
    return np.einsum("ab,ibj->iaj", matrix, tensor).reshape(-1)


def _apply_cnot(state: np.ndarray, control: int, target: int, n: int) -> np.ndarray:
    idx = _basis_indices(n)
    return state[idx ^ (((idx >> control) & 1) << target)]


def initial_vector(n: int, initial_state: InitialState) -> np.ndarray:
    if InitialState(initial_state) == InitialState.ALL_PLUS:
        return np.full(1 << n, 1.0 / np.sqrt(1 << n), dtype=np.complex128)
    state = np.zeros(1 << n, dtype=np.complex128)
    state[0] = 1.0
    return state


def statevector_evolve(circuit: Circuit, theta: Optional[Sequence[float]] = None,
                       max_qubits: int = MAX_QUBITS) -> np.ndarray:
    """
    Dense amplitude vector U(theta)|init>.

    Args:
        circuit: Circuit to simulate
        theta: Parameter vector of length ``circuit.param_count``
        max_qubits: Hard cap on ``circuit.n``

    Returns:
        Complex vector of length 2**n
    """
    n = circuit.n
    if n > max_qubits:
        raise CapacityError(f"State-vector simulation limited to {max_qubits} qubits, got {n}")
    theta = check_theta(circuit, theta if theta is not None else np.zeros(circuit.param_count))

    state = initial_vector(n, circuit.initial_state)
    for gate in circuit.gates:
        if isinstance(gate, PauliRotation):
            half = 0.5 * gate.resolve(theta)
            state = np.cos(half) * state - 1j * np.sin(half) * apply_pauli(state, gate.axis)
        elif isinstance(gate, CliffordGate) and gate.kind == "CNOT":
            state = _apply_cnot(state, gate.qubits[0], gate.qubits[1], n)
        else:
            state = _apply_single(state, _SINGLE_QUBIT[gate.kind], gate.qubits[0], n)
    return state


def expectation_from_state(state: np.ndarray, observable: Observable) -> complex:
    op = as_operator(observable)
    if state.size != 1 << op.n:
        raise DimensionError(f"State of length {state.size} does not match {op.n} qubits")
    total = 0.0 + 0.0j
    for term in op.terms():
        total += term.coeff * np.vdot(state, apply_pauli(state, term.string))
    return complex(total)


def statevector_expectation(circuit: Circuit, theta: Optional[Sequence[float]], observable: Observable,
                            max_qubits: int = MAX_QUBITS) -> float:
    value = expectation_from_state(statevector_evolve(circuit, theta, max_qubits), observable)
    scale = max(1.0, as_operator(observable).one_norm())
    if abs(value.imag) > 1e-10 * scale:
        raise HermiticityError(f"Expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def reduced_density_matrix(state: np.ndarray, n: int, sites: Sequence[int]) -> np.ndarray:
    """
    Partial trace onto ``sites``; local qubit k is ``sites[k]`` (bit k of the row index).
    """
    sites = list(sites)
    tensor = state.reshape((2,) * n)
    # axis a of the C-ordered tensor holds qubit n-1-a
    kept_axes = [n - 1 - q for q in reversed(sites)]
    moved = np.moveaxis(tensor, kept_axes, list(range(len(sites))))
    matrix = moved.reshape(1 << len(sites), -1)
    return matrix @ matrix.conj().T


def operator_matrix(op: SparseOperator) -> sparse.csr_matrix:
    """Sparse CSR matrix of a Pauli sum; duplicate entries are summed."""
    dim = 1 << op.n
    idx = _basis_indices(op.n)
    rows, cols, values = [], [], []
    for term in op.terms():
        s = term.string
        signs = 1 - 2 * (np.bitwise_count(idx & s.z) & 1).astype(np.int64)
        rows.append(idx ^ s.x)
        cols.append(idx)
        values.append(term.coeff * (1j ** ((s.x & s.z).bit_count() % 4)) * signs)
    if not values:
        return sparse.csr_matrix((dim, dim), dtype=np.complex128)
    return sparse.coo_matrix(
        (np.concatenate(values), (np.concatenate(rows), np.concatenate(cols))), shape=(dim, dim)
    ).tocsr()


class StatevectorSimulator(BaseSimulator):
    """
    Exact dense state-vector simulation.

    Algorithm: amplitudes of all 2^N basis states are updated gate by gate;
    Pauli rotations use cos(theta/2)·psi - i·sin(theta/2)·P·psi.

    Complexity: O(G · 2^N) time and O(2^N) memory.

    Note: used as ground truth for the Pauli path engine; capped at 24 qubits.
    """

    def __init__(self, max_qubits: int = MAX_QUBITS):
        super().__init__("State vector (exact)")
        self.max_qubits = max_qubits

    def evolve(self, circuit: Circuit, theta: Optional[Sequence[float]] = None) -> np.ndarray:
        return statevector_evolve(circuit, self._theta(circuit, theta), self.max_qubits)

    def expectation(self, circuit: Circuit, observable: Observable, theta: Optional[Sequence[float]] = None) -> float:
        start_time = time.time()
        value = statevector_expectation(circuit, self._theta(circuit, theta), observable, self.max_qubits)
        self.run_time = time.time() - start_time
        return value
