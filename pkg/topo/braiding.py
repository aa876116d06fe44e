"""
Abelian anyon creation and braiding on the (8, 6) honeycomb.

A braid loop is a product of Pauli factors, so U_b = i^k Q for a single
Pauli string Q. With the creation operators C also Pauli products,
C† U_b C = s U_b where s = (-1)^(number of creation factors that
anticommute with Q), and the braiding phase <Phi|U_b|Phi> collapses to one
engine expectation value of Q.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from circuits.circuit import Circuit, InitialState, check_theta
from circuits.gates import Bound, CliffordGate, Gate, PauliRotation
from circuits.qasm import to_qasm
from pauli.pauli_string import PauliString, commutes, multiply_all
from simulators.base_simulator import BaseSimulator
from simulators.pauli_path import PauliPathSimulator
from utils.exceptions import DimensionError, ParameterError


BRAID_KINDS = ("em", "epsi", "mpsi")

# creation factors and loop factors in application order, per anyon pair
_BRAID_WORDS_8X6: Dict[str, Dict[str, List[str]]] = {
    "em": {
        "creation": ["Z10 Z12 Y13 X21", "Y18 X26 Z33 Z35"],
        "braid": ["Z10", "Y11 X19", "Z18", "Y9 X17"],
    },
    "epsi": {
        "creation": ["Z20", "Y17 Y18", "X16 X17"],
        "braid": ["X18 X19", "Y19 Y20", "Z20 Z28", "X27 X28", "Y26 Y27", "Z18 Z26"],
    },
    "mpsi": {
        "creation": ["Z11", "Y8 Y9", "X15 X8"],
        "braid": ["X9 X10", "Y10 Y11", "Z11 Z19", "X18 X19", "Y17 Y18", "Z9 Z17"],
    },
}


@dataclass(frozen=True)
class BraidSpec:
    """
    Anyon-pair creation gates plus the braid loop that encircles one anyon.

    ``creation`` and ``braid`` are Pauli-product gates in the order they are
    applied.
    """

    kind: str
    nx: int
    ny: int
    creation: Tuple[PauliString, ...]
    braid: Tuple[PauliString, ...]

    def __post_init__(self):
        if self.kind not in BRAID_KINDS:
            raise ParameterError(f"Unknown braid kind '{self.kind}', expected one of {BRAID_KINDS}")
        if not self.braid:
            raise ParameterError("Braid loop needs at least one factor")
        for string in self.creation + self.braid:
            if string.n != self.n:
                raise DimensionError(f"Braid word {string.to_word()} acts on {string.n} qubits, lattice has {self.n}")

    @property
    def n(self) -> int:
        return self.nx * self.ny

    def loop_operator(self) -> Tuple[int, PauliString]:
        """(k, Q) with U_b = F_m ... F_1 = i^k Q."""
        return multiply_all(reversed(self.braid))

    def creation_sign(self) -> int:
        _, q = self.loop_operator()
        flips = sum(1 for c in self.creation if not commutes(c, q))
        return -1 if flips % 2 else 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "nx": self.nx,
            "ny": self.ny,
            "creation": [s.to_word() for s in self.creation],
            "braid": [s.to_word() for s in self.braid],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "BraidSpec":
        n = int(data["nx"]) * int(data["ny"])
        return cls(
            data["kind"], int(data["nx"]), int(data["ny"]),
            tuple(PauliString.from_word(n, w) for w in data["creation"]),
            tuple(PauliString.from_word(n, w) for w in data["braid"]),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "BraidSpec":
        return cls.from_dict(json.loads(text))


def braid_spec(kind: str, nx: int = 8, ny: int = 6) -> BraidSpec:
    """
    Creation gates and braid loop for the em, epsi or mpsi pair.

    Only the (8, 6) lattice geometry is available. For epsi and mpsi the
    loop reduces to the flux operator of the hexagon it encloses.
    """
    if (nx, ny) != (8, 6):
        raise ParameterError(f"Braiding geometry is defined for the 8x6 lattice only, got {nx}x{ny}")
    if kind not in _BRAID_WORDS_8X6:
        raise ParameterError(f"Unknown braid kind '{kind}', expected one of {BRAID_KINDS}")
    return BraidSpec.from_dict({"kind": kind, "nx": nx, "ny": ny, **_BRAID_WORDS_8X6[kind]})


def braiding_phase(circuit: Circuit, theta: Optional[Sequence[float]], spec: BraidSpec,
                   delta_c: float = 0.0, num_workers: int = 1) -> complex:
    """
    Estimate <Phi|U_b|Phi> with |Phi> = C U(theta)|init>.

    Args:
        circuit: State-preparation circuit on spec.n qubits
        theta: Parameter vector for the circuit
        spec: Braid specification
        delta_c: Truncation threshold of the Pauli path engine
        num_workers: Engine shard count

    Returns:
        s * i^k * <psi|Q|psi>
    """
    if circuit.n != spec.n:
        raise DimensionError(f"Circuit acts on {circuit.n} qubits, braid spec on {spec.n}")
    k, q = spec.loop_operator()
    simulator = PauliPathSimulator(delta_c=delta_c, num_workers=num_workers, record_trace=False)
    value = simulator.expectation(circuit, q, theta)
    return complex(spec.creation_sign() * (1j ** k) * value)


def _widen(string: PauliString, n: int) -> PauliString:
    return PauliString(n, string.x, string.z)


def _controlled_pauli(control: int, target: int, letter: str) -> List[Gate]:
    if letter == "X":
        return [CliffordGate("CNOT", (control, target))]
    if letter == "Z":
        return [CliffordGate("H", (target,)), CliffordGate("CNOT", (control, target)), CliffordGate("H", (target,))]
    return [CliffordGate("Sdg", (target,)), CliffordGate("CNOT", (control, target)), CliffordGate("S", (target,))]


def controlled_braid_circuit(circuit: Circuit, theta: Optional[Sequence[float]], spec: BraidSpec) -> Circuit:
    """
    Interferometry circuit on N + 1 qubits with the ancilla as qubit N.

    Prepares |Phi>, puts the ancilla in |+>, and applies U_b controlled on
    the ancilla. Afterwards <X_a> + i<Y_a> = <Phi|U_b|Phi>.
    """
    if circuit.n != spec.n:
        raise DimensionError(f"Circuit acts on {circuit.n} qubits, braid spec on {spec.n}")
    n = circuit.n
    ancilla = n
    bound = circuit.bind(check_theta(circuit, theta if theta is not None else np.zeros(circuit.param_count)))

    gates: List[Gate] = []
    if InitialState(bound.initial_state) == InitialState.ALL_PLUS:
        gates += [CliffordGate("H", (q,)) for q in range(n)]
    for gate in bound.gates:
        if isinstance(gate, PauliRotation):
            gates.append(PauliRotation(_widen(gate.axis, n + 1), gate.angle, gate.sign))
        else:
            gates.append(gate)
    # a pi rotation is the Pauli itself up to a global phase
    gates += [PauliRotation(_widen(c, n + 1), Bound(np.pi)) for c in spec.creation]

    gates.append(CliffordGate("H", (ancilla,)))
    k, q = spec.loop_operator()
    for site in q.support():
        gates += _controlled_pauli(ancilla, site, q.letter(site))
    gates += [CliffordGate("S", (ancilla,))] * k
    return Circuit(n + 1, tuple(gates), 0, InitialState.ALL_ZERO)


def measurement_basis(n: int, basis: str) -> List[Gate]:
    """Final rotation of the ancilla (qubit n - 1) so a Z readout gives X or Y."""
    ancilla = n - 1
    if basis == "x":
        return [CliffordGate("H", (ancilla,))]
    if basis == "y":
        return [CliffordGate("Sdg", (ancilla,)), CliffordGate("H", (ancilla,))]
    raise ParameterError(f"Measurement basis must be 'x' or 'y', got '{basis}'")


def braid_qasm(circuit: Circuit, theta: Optional[Sequence[float]], spec: BraidSpec, basis: str = "x") -> str:
    controlled = controlled_braid_circuit(circuit, theta, spec)
    final = controlled.extend(measurement_basis(controlled.n, basis))
    comments = [f"{spec.kind} braiding interferometer, ancilla q[{controlled.n - 1}] read out in the {basis} basis"]
    return to_qasm(final, measure=[controlled.n - 1], comments=comments)


def ancilla_phase(controlled: Circuit, simulator: BaseSimulator) -> complex:
    """<X_a> + i<Y_a> of an interferometry circuit, from any simulator back-end."""
    n = controlled.n
    x = simulator.expectation(controlled, PauliString.from_sites(n, {n - 1: "X"}))
    y = simulator.expectation(controlled, PauliString.from_sites(n, {n - 1: "Y"}))
    return complex(x, y)
