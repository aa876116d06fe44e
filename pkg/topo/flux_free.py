"""
Clifford preparation of the flux-free Kitaev state.

Every z-bond (top, bottom) of the honeycomb holds one effective qubit in the
ZZ = +1 subspace: |0̄> = |00>, |1̄> = |11>. On that subspace the flux
operator of a hexagon reads Ȳ Z̄ Ȳ Z̄ on the four effective qubits around it,
and the effective qubits form a rotated square lattice (a torus). The
circuit below first prepares the toric-code state with X̄X̄X̄X̄ plaquettes on
even rows and Z̄Z̄Z̄Z̄ plaquettes on odd rows, then rotates it into the
flux-free state with a layer of effective H̄ and S̄ gates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from circuits.circuit import Circuit, InitialState
from circuits.gates import CliffordGate
from models.lattices import check_honeycomb_dims, honeycomb
from pauli.pauli_string import PauliString
from utils.exceptions import DimensionError, ParameterError


EFFECTIVE_KINDS = ("H", "S", "CNOT")


@dataclass(frozen=True)
class EffectiveGate:
    kind: str
    qubits: Tuple[int, ...]

    def __post_init__(self):
        if self.kind not in EFFECTIVE_KINDS:
            raise ParameterError(f"Unsupported effective gate '{self.kind}'")
        arity = 2 if self.kind == "CNOT" else 1
        if len(self.qubits) != arity:
            raise ParameterError(f"Effective {self.kind} acts on {arity} qubit(s), got {self.qubits}")


@dataclass(frozen=True)
class EffectiveLayout:
    """
    Bijection between honeycomb z-bonds and effective qubits.

    The z-bond hanging below site (r, c), r + c even, is effective qubit
    r*(Nx/2) + (c - r%2)/2; its physical pair is (top, bottom).
    """

    nx: int
    ny: int
    pairs: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        check_honeycomb_dims(self.nx, self.ny)
        if len(self.pairs) != self.nx * self.ny // 2:
            raise ParameterError(f"Layout needs {self.nx * self.ny // 2} effective qubits, got {len(self.pairs)}")
        sites = [q for pair in self.pairs for q in pair]
        if sorted(sites) != list(range(self.nx * self.ny)):
            raise ParameterError("Effective qubit pairs must cover every site exactly once")

    @classmethod
    def build(cls, nx: int, ny: int) -> "EffectiveLayout":
        lattice = honeycomb(nx, ny)
        by_top = {bond.i: bond.j for bond in lattice.bonds_of("z")}
        pairs = []
        for r in range(ny):
            for c in range(r % 2, nx, 2):
                top = r * nx + c
                pairs.append((top, by_top[top]))
        return cls(nx, ny, tuple(pairs))

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def n(self) -> int:
        return self.nx * self.ny

    def index(self, r: int, c: int) -> int:
        """Effective qubit at grid position (r, c); both wrap around the torus."""
        r %= self.ny
        c %= self.nx
        if (r + c) % 2:
            raise ParameterError(f"No effective qubit at ({r}, {c}): r + c must be even")
        return r * (self.nx // 2) + (c - r % 2) // 2

    def position(self, k: int) -> Tuple[int, int]:
        r, j = divmod(k, self.nx // 2)
        return r, 2 * j + r % 2

    def pair(self, k: int) -> Tuple[int, int]:
        if not 0 <= k < self.size:
            raise DimensionError(f"Effective qubit {k} out of range for {self.size}")
        return self.pairs[k]

    def plaquette_neighbors(self, p: int) -> Dict[str, int]:
        """Left, right, above and below effective qubits of hexagon p."""
        r, k = divmod(p, self.nx // 2)
        c0 = 2 * k + r % 2
        return {
            "left": self.index(r, c0),
            "right": self.index(r, c0 + 2),
            "above": self.index(r - 1, c0 + 1),
            "below": self.index(r + 1, c0 + 1),
        }

    def effective_flux(self, p: int) -> PauliString:
        """Ȳ Z̄ Ȳ Z̄ form of the flux operator on the effective register."""
        nb = self.plaquette_neighbors(p)
        return PauliString.from_sites(self.size, {nb["left"]: "Y", nb["right"]: "Y",
                                                  nb["above"]: "Z", nb["below"]: "Z"})

    def toric_plaquette(self, p: int) -> PauliString:
        """X̄X̄X̄X̄ on even hexagon rows, Z̄Z̄Z̄Z̄ on odd ones."""
        letter = "X" if (p // (self.nx // 2)) % 2 == 0 else "Z"
        return PauliString.from_sites(self.size, {q: letter for q in self.plaquette_neighbors(p).values()})


def toric_prep_effective(layout: EffectiveLayout) -> List[EffectiveGate]:
    """
    Toric-code preparation on the effective register, row by row.

    For every X̄ plaquette of the even rows except the last, the effective
    qubit below it gets H̄ and then controls CNOT̄s onto its left, above and
    right neighbors. On the last even row the right qubit is the control
    instead (targets above, left and below), and the final plaquette is
    skipped because it equals the product of all the others.
    """
    nx, ny = layout.nx, layout.ny
    gates: List[EffectiveGate] = []
    for r in range(0, ny - 2, 2):
        for c0 in range(0, nx, 2):
            control = layout.index(r + 1, c0 + 1)
            gates.append(EffectiveGate("H", (control,)))
            for target in (layout.index(r, c0), layout.index(r - 1, c0 + 1), layout.index(r, c0 + 2)):
                gates.append(EffectiveGate("CNOT", (control, target)))

    r = ny - 2
    for c0 in range(0, nx - 2, 2):
        control = layout.index(r, c0 + 2)
        gates.append(EffectiveGate("H", (control,)))
        for target in (layout.index(r - 1, c0 + 1), layout.index(r, c0), layout.index(r + 1, c0 + 1)):
            gates.append(EffectiveGate("CNOT", (control, target)))
    return gates


def basis_change_effective(layout: EffectiveLayout) -> List[EffectiveGate]:
    """H̄ on every odd-row effective qubit, then S̄ on all of them."""
    hadamards = [EffectiveGate("H", (k,)) for k in range(layout.size) if layout.position(k)[0] % 2]
    phases = [EffectiveGate("S", (k,)) for k in range(layout.size)]
    return hadamards + phases


def effective_gate(layout: EffectiveLayout, gate: EffectiveGate) -> List[CliffordGate]:
    """
    Physical gates realizing one effective gate.

    H̄ = CNOT(t, b) H(t) CNOT(t, b), S̄ = S(t), and
    CNOT̄(a, b) = CNOT(b_t, b_b) CNOT(a_b, b_t) CNOT(b_t, b_b).
    """
    if gate.kind == "H":
        top, bottom = layout.pair(gate.qubits[0])
        return [CliffordGate("CNOT", (top, bottom)), CliffordGate("H", (top,)), CliffordGate("CNOT", (top, bottom))]
    if gate.kind == "S":
        top, _ = layout.pair(gate.qubits[0])
        return [CliffordGate("S", (top,))]

    a, b = gate.qubits
    if a == b:
        raise ParameterError(f"Effective CNOT control and target overlap on qubit {a}")
    _, a_bottom = layout.pair(a)
    b_top, b_bottom = layout.pair(b)
    return [CliffordGate("CNOT", (b_top, b_bottom)), CliffordGate("CNOT", (a_bottom, b_top)),
            CliffordGate("CNOT", (b_top, b_bottom))]


def lower(layout: EffectiveLayout, gates: List[EffectiveGate]) -> List[CliffordGate]:
    physical: List[CliffordGate] = []
    for gate in gates:
        physical.extend(effective_gate(layout, gate))
    return physical


def effective_circuit(layout: EffectiveLayout, gates: List[EffectiveGate]) -> Circuit:
    """The same gate list acting directly on an effective register of layout.size qubits."""
    kinds = {"H": "H", "S": "S", "CNOT": "CNOT"}
    return Circuit(layout.size, tuple(CliffordGate(kinds[g.kind], g.qubits) for g in gates))


def flux_free_circuit(nx: int, ny: int) -> Circuit:
    """
    Clifford circuit taking |0...0> to the flux-free state.

    On the output every hexagon flux and every z-bond ZZ equals +1.
    """
    layout = EffectiveLayout.build(nx, ny)
    gates = lower(layout, toric_prep_effective(layout) + basis_change_effective(layout))
    return Circuit(layout.n, tuple(gates), 0, InitialState.ALL_ZERO)
