"""
OpenQASM 2.0 export and re-import of the gate subset this project emits.

Pauli rotations exp(-i theta/2 P) are lowered to basis changes (H for X,
sdg then h for Y), a CNOT ladder onto the highest support qubit, an rz, and
the mirror image. rz is read back as exp(-i theta/2 Z); qelib1's rz differs
from that only by a global phase.
"""

import re
from typing import Iterable, List, Optional, Sequence

import numpy as np

from circuits.circuit import Circuit, InitialState, check_theta
from circuits.gates import Bound, CliffordGate, PauliRotation
from pauli.pauli_string import PauliString
from utils.exceptions import ParameterError


_NATIVE = {"H": "h", "S": "s", "Sdg": "sdg", "CNOT": "cx"}
_FROM_NATIVE = {value: key for key, value in _NATIVE.items()}

_STATEMENT = re.compile(r"^(?P<name>[a-z]+)(\((?P<arg>[^)]*)\))?\s+(?P<operands>.+)$")
_OPERAND = re.compile(r"^q\[(\d+)\]$")


def _format_angle(angle: float) -> str:
    return f"{angle:.17g}"


def rotation_lines(axis: PauliString, angle: float) -> List[str]:
    """QASM statements for exp(-i angle/2 axis)."""
    support = list(axis.support())
    letters = {q: axis.letter(q) for q in support}

    pre: List[str] = []
    post: List[str] = []
    for q in support:
        if letters[q] == "X":
            pre.append(f"h q[{q}];")
            post.append(f"h q[{q}];")
        elif letters[q] == "Y":
            pre.extend([f"sdg q[{q}];", f"h q[{q}];"])
            post.extend([f"h q[{q}];", f"s q[{q}];"])

    ladder = [f"cx q[{a}],q[{b}];" for a, b in zip(support[:-1], support[1:])]
    return pre + ladder + [f"rz({_format_angle(angle)}) q[{support[-1]}];"] + ladder[::-1] + post


def to_qasm(circuit: Circuit, theta: Optional[Sequence[float]] = None,
            measure: Optional[Iterable[int]] = None, comments: Optional[Iterable[str]] = None) -> str:
    """
    Serialize a circuit with all parameters bound.

    Args:
        circuit: Circuit to export
        theta: Parameter vector; required when the circuit has Free parameters
        measure: Optional qubits measured at the end into a classical register
        comments: Optional header comment lines

    Returns:
        OpenQASM 2.0 program text
    """
    if circuit.param_count and theta is None:
        raise ParameterError(f"Circuit has {circuit.param_count} unbound parameters")
    theta = check_theta(circuit, theta if theta is not None else np.zeros(0))

    lines: List[str] = [f"// {text}" for text in (comments or [])]
    lines += ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circuit.n}];"]
    measured = list(measure or [])
    if measured:
        lines.append(f"creg c[{len(measured)}];")

    if InitialState(circuit.initial_state) == InitialState.ALL_PLUS:
        lines.extend(f"h q[{q}];" for q in range(circuit.n))

    for gate in circuit.gates:
        if isinstance(gate, CliffordGate):
            operands = ",".join(f"q[{q}]" for q in gate.qubits)
            lines.append(f"{_NATIVE[gate.kind]} {operands};")
        else:
            lines.extend(rotation_lines(gate.axis, gate.resolve(theta)))

    lines.extend(f"measure q[{q}] -> c[{k}];" for k, q in enumerate(measured))
    return "\n".join(lines) + "\n"


def from_qasm(text: str) -> Circuit:
    """
    Parse the subset written by ``to_qasm`` into a bound all-zero circuit.

    Supported statements: qreg, creg, h, s, sdg, cx, rz, measure, barrier.
    Classical registers, measurements and barriers are skipped.
    """
    n = None
    gates = []
    body = "\n".join(line.split("//", 1)[0] for line in text.splitlines())
    for raw in body.split(";"):
        statement = " ".join(raw.split())
        if not statement or statement.startswith(("OPENQASM", "include", "creg", "measure", "barrier")):
            continue
        if statement.startswith("qreg"):
            n = int(re.search(r"\[(\d+)\]", statement).group(1))
            continue

        match = _STATEMENT.match(statement)
        if match is None or n is None:
            raise ParameterError(f"Unsupported QASM statement: '{statement}'")
        name = match.group("name")
        qubits = []
        for operand in match.group("operands").split(","):
            op_match = _OPERAND.match(operand.strip())
            if op_match is None:
                raise ParameterError(f"Unsupported operand '{operand}' in '{statement}'")
            qubits.append(int(op_match.group(1)))

        if name == "rz":
            axis = PauliString.from_sites(n, {qubits[0]: "Z"})
            gates.append(PauliRotation(axis, Bound(float(match.group("arg")))))
        elif name in _FROM_NATIVE:
            gates.append(CliffordGate(_FROM_NATIVE[name], tuple(qubits)))
        else:
            raise ParameterError(f"Unsupported QASM gate '{name}'")

    if n is None:
        raise ParameterError("QASM program declares no qreg")
    return Circuit(n, tuple(gates), 0, InitialState.ALL_ZERO)
