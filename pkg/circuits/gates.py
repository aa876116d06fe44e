from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple, Union

import numpy as np

from pauli.pauli_string import PauliString
from utils.exceptions import DimensionError, ParameterError


CLIFFORD_KINDS = ("H", "S", "Sdg", "CNOT")
_CLIFFORD_ARITY = {"H": 1, "S": 1, "Sdg": 1, "CNOT": 2}


@dataclass(frozen=True)
class Bound:
    value: float

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ParameterError(f"Bound angle must be finite, got {self.value}")


@dataclass(frozen=True)
class Free:
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ParameterError(f"Free parameter index must be >= 0, got {self.index}")


ParamRef = Union[Bound, Free]


@dataclass(frozen=True)
class PauliRotation:
    """exp(-i * sign * theta / 2 * axis)."""

    axis: PauliString
    angle: ParamRef
    sign: int = 1

    def __post_init__(self):
        if self.axis.is_identity():
            raise ParameterError("Rotation axis must be a non-identity Pauli string")
        if self.sign not in (1, -1):
            raise ParameterError(f"Rotation sign must be +1 or -1, got {self.sign}")

    @property
    def qubits(self) -> Tuple[int, ...]:
        return self.axis.support()

    def resolve(self, theta: Sequence[float]) -> float:
        """Signed rotation angle for the given parameter vector."""
        if isinstance(self.angle, Bound):
            value = self.angle.value
        else:
            value = float(theta[self.angle.index])
        return self.sign * value


@dataclass(frozen=True)
class CliffordGate:
    """
    Fixed Clifford gate: H, S, Sdg or CNOT (control, target).

    The engine applies the Heisenberg map P -> G^dagger P G, so for S the
    images are X -> -Y, Y -> X, Z -> Z. This is the adjoint of the
    Schrodinger-picture table S X S^dagger = Y; Sdg gives X -> Y, Y -> -X.
    """

    kind: str
    qubits: Tuple[int, ...]

    def __post_init__(self):
        if self.kind not in _CLIFFORD_ARITY:
            raise ParameterError(f"Unsupported Clifford '{self.kind}', expected one of {CLIFFORD_KINDS}")
        if len(self.qubits) != _CLIFFORD_ARITY[self.kind]:
            raise ParameterError(f"{self.kind} acts on {_CLIFFORD_ARITY[self.kind]} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ParameterError(f"{self.kind} qubits must be distinct, got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise DimensionError(f"Negative qubit index in {self.qubits}")


Gate = Union[PauliRotation, CliffordGate]


def reduce_angle(angle: float) -> float:
    """Map an angle into [-pi, pi)."""
    return float(np.remainder(angle + np.pi, 2.0 * np.pi) - np.pi)


def gate_to_dict(gate: Gate) -> Dict[str, Any]:
    if isinstance(gate, CliffordGate):
        return {"type": "clifford", "kind": gate.kind, "qubits": list(gate.qubits)}
    if isinstance(gate.angle, Bound):
        angle: Dict[str, Any] = {"bound": gate.angle.value}
    else:
        angle = {"free": gate.angle.index}
    return {"type": "rotation", "axis": gate.axis.to_label(), "angle": angle, "sign": gate.sign}


def gate_from_dict(data: Dict[str, Any]) -> Gate:
    if data["type"] == "clifford":
        return CliffordGate(data["kind"], tuple(int(q) for q in data["qubits"]))
    if data["type"] != "rotation":
        raise ParameterError(f"Unknown gate type '{data['type']}'")
    angle_data = data["angle"]
    angle: ParamRef = Bound(float(angle_data["bound"])) if "bound" in angle_data else Free(int(angle_data["free"]))
    return PauliRotation(PauliString.from_label(data["axis"]), angle, int(data.get("sign", 1)))
