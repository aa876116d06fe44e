"""
Hamiltonian variational ansatz circuits.

Each repetition k owns three parameters laid out as theta[3k], theta[3k+1],
theta[3k+2]. Within a repetition the layers act in the order listed below,
and every gate of a layer shares the layer's parameter.

    Ising:   ZZ on every bond (gamma_k), X on every site (beta_k), Z on every site (alpha_k)
    Kitaev:  XX on x-bonds (gamma_k), YY on y-bonds (beta_k), ZZ on z-bonds (alpha_k)
"""

from typing import List, Tuple

from circuits.circuit import Circuit, InitialState
from circuits.gates import Free, Gate, PauliRotation
from models.lattices import Lattice, honeycomb
from pauli.pauli_string import PauliString
from topo.flux_free import flux_free_circuit
from utils.exceptions import ParameterError


PARAMS_PER_REP = 3


def parameter_names(reps: int) -> List[str]:
    """Human-readable names matching the parameter layout, e.g. gamma_1, beta_1, alpha_1."""
    return [f"{name}_{k + 1}" for k in range(reps) for name in ("gamma", "beta", "alpha")]


def _check_reps(reps: int) -> None:
    if reps < 1:
        raise ParameterError(f"Ansatz needs at least one repetition, got {reps}")


def _bond_layer(n: int, pairs: List[Tuple[int, int]], letter: str, index: int) -> List[Gate]:
    return [PauliRotation(PauliString.from_sites(n, {i: letter, j: letter}), Free(index)) for i, j in pairs]


def _site_layer(n: int, letter: str, index: int) -> List[Gate]:
    return [PauliRotation(PauliString.from_sites(n, {j: letter}), Free(index)) for j in range(n)]


def ising_ansatz(lattice: Lattice, reps: int, longitudinal: bool = True) -> Circuit:
    """
    Ising HVA on any Ising lattice, starting from |+...+>.

    Args:
        lattice: Chain, square or heavy-hex lattice
        reps: Number of repetitions, at least 1
        longitudinal: Include the Z layer (alpha). Without it the circuit
            commutes with the global spin flip prod X_j; the parameter
            layout keeps three slots per repetition either way.

    Returns:
        Circuit with param_count = 3 * reps
    """
    _check_reps(reps)
    n = lattice.n
    pairs = [(b.i, b.j) for b in lattice.bonds]
    gates: List[Gate] = []
    for k in range(reps):
        gates += _bond_layer(n, pairs, "Z", PARAMS_PER_REP * k)
        gates += _site_layer(n, "X", PARAMS_PER_REP * k + 1)
        if longitudinal:
            gates += _site_layer(n, "Z", PARAMS_PER_REP * k + 2)
    return Circuit(n, tuple(gates), PARAMS_PER_REP * reps, InitialState.ALL_PLUS)


def kitaev_ansatz(nx: int, ny: int, reps: int, flux_free_prefix: bool = True) -> Circuit:
    """
    Kitaev HVA acting on the flux-free state.

    The prefix is the Clifford circuit of ``flux_free_circuit``; with
    ``flux_free_prefix=False`` the layers act directly on |0...0>.
    """
    _check_reps(reps)
    lattice = honeycomb(nx, ny)
    n = lattice.n
    gates: List[Gate] = list(flux_free_circuit(nx, ny).gates) if flux_free_prefix else []
    for k in range(reps):
        for offset, kind in enumerate(("x", "y", "z")):
            pairs = [(b.i, b.j) for b in lattice.bonds_of(kind)]
            gates += _bond_layer(n, pairs, kind.upper(), PARAMS_PER_REP * k + offset)
    return Circuit(n, tuple(gates), PARAMS_PER_REP * reps, InitialState.ALL_ZERO)
