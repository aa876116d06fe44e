from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, Iterable, List, Sequence, Tuple

import numpy as np

from circuits.gates import (
    Bound,
    CliffordGate,
    Free,
    Gate,
    ParamRef,
    PauliRotation,
    gate_from_dict,
    gate_to_dict,
)
from pauli.pauli_string import PauliString
from utils.exceptions import DimensionError, ParameterError


class InitialState(str, Enum):
    ALL_ZERO = "all_zero"
    ALL_PLUS = "all_plus"


@dataclass(frozen=True)
class Circuit:
    """
    Immutable gate list acting on a declared product initial state.

    Gates are stored in application order: ``gates[0]`` acts first. Every
    builder method returns a new Circuit.

    Example:
        >>> c = Circuit(2).append_rotation(PauliString.from_label("ZZ"), Free(0))
        >>> c.param_count, len(c.gates)
        (1, 1)
    """

    n: int
    gates: Tuple[Gate, ...] = ()
    param_count: int = 0
    initial_state: InitialState = InitialState.ALL_ZERO

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"Circuit needs at least one qubit, got n={self.n}")
        for gate in self.gates:
            self._validate_gate(gate, self.param_count)

    def _validate_gate(self, gate: Gate, param_count: int) -> None:
        if isinstance(gate, PauliRotation):
            if gate.axis.n != self.n:
                raise DimensionError(f"Rotation axis acts on {gate.axis.n} qubits, circuit on {self.n}")
            if isinstance(gate.angle, Free) and gate.angle.index >= param_count:
                raise ParameterError(f"Free index {gate.angle.index} out of range for {param_count} parameters")
        else:
            if max(gate.qubits) >= self.n:
                raise DimensionError(f"{gate.kind} on {gate.qubits} exceeds {self.n} qubits")

    def append(self, gate: Gate) -> "Circuit":
        return self.extend([gate])

    def append_rotation(self, axis: PauliString, angle: ParamRef, sign: int = 1) -> "Circuit":
        return self.append(PauliRotation(axis, angle, sign))

    def append_clifford(self, kind: str, *qubits: int) -> "Circuit":
        return self.append(CliffordGate(kind, tuple(qubits)))

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        """Append several gates at once; a new Free index must be the next unused one."""
        gates = tuple(gates)
        param_count = self.param_count
        for gate in gates:
            if isinstance(gate, PauliRotation) and isinstance(gate.angle, Free):
                if gate.angle.index > param_count:
                    raise ParameterError(
                        f"Free index {gate.angle.index} skips ahead of the next parameter {param_count}"
                    )
                param_count = max(param_count, gate.angle.index + 1)
        return Circuit(self.n, self.gates + gates, param_count, self.initial_state)

    def with_initial_state(self, state: InitialState) -> "Circuit":
        return Circuit(self.n, self.gates, self.param_count, InitialState(state))

    def bind(self, theta: Sequence[float]) -> "Circuit":
        """Replace every Free reference by its value in theta."""
        theta = check_theta(self, theta)
        bound: List[Gate] = []
        for gate in self.gates:
            if isinstance(gate, PauliRotation) and isinstance(gate.angle, Free):
                gate = PauliRotation(gate.axis, Bound(float(theta[gate.angle.index])), gate.sign)
            bound.append(gate)
        return Circuit(self.n, tuple(bound), 0, self.initial_state)

    @property
    def rotations(self) -> List[PauliRotation]:
        return [g for g in self.gates if isinstance(g, PauliRotation)]

    @property
    def cliffords(self) -> List[CliffordGate]:
        return [g for g in self.gates if isinstance(g, CliffordGate)]

    def is_clifford(self) -> bool:
        return not self.rotations

    def two_qubit_rotation_count(self) -> int:
        return sum(1 for g in self.rotations if g.axis.weight == 2)

    def two_qubit_gate_count(self) -> int:
        """Two-qubit rotations plus CNOTs, before any transpilation."""
        return self.two_qubit_rotation_count() + sum(1 for g in self.cliffords if g.kind == "CNOT")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "param_count": self.param_count,
            "initial_state": self.initial_state.value,
            "gates": [gate_to_dict(g) for g in self.gates],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Circuit":
        gates = tuple(gate_from_dict(g) for g in data["gates"])
        return cls(int(data["n"]), gates, int(data["param_count"]), InitialState(data["initial_state"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Circuit":
        return cls.from_dict(json.loads(text))

    def __len__(self) -> int:
        return len(self.gates)


def check_theta(circuit: Circuit, theta: Sequence[float]) -> np.ndarray:
    theta = np.asarray(theta if theta is not None else [], dtype=np.float64).reshape(-1)
    if theta.size != circuit.param_count:
        raise DimensionError(f"Expected {circuit.param_count} parameters, got {theta.size}")
    if not np.all(np.isfinite(theta)):
        raise ParameterError("Parameter vector contains non-finite values")
    return theta


def _shift(gate: Gate, offset: int) -> Gate:
    if isinstance(gate, PauliRotation) and isinstance(gate.angle, Free):
        return PauliRotation(gate.axis, Free(gate.angle.index + offset), gate.sign)
    return gate


def compose(a: Circuit, b: Circuit) -> Circuit:
    """
    Operator product a·b: b's gates run first, then a's.

    a's free indices are shifted past b's, and the result starts from b's
    initial state.
    """
    if a.n != b.n:
        raise DimensionError(f"Cannot compose circuits on {a.n} and {b.n} qubits")
    gates = b.gates + tuple(_shift(g, b.param_count) for g in a.gates)
    return Circuit(a.n, gates, a.param_count + b.param_count, b.initial_state)


def bind(circuit: Circuit, theta: Sequence[float]) -> Circuit:
    return circuit.bind(theta)


def append_rotation(circuit: Circuit, axis: PauliString, angle: ParamRef, sign: int = 1) -> Circuit:
    return circuit.append_rotation(axis, angle, sign)
