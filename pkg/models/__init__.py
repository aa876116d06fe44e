from .lattices import Bond, Lattice, LatticeKind, chain, heavy_hex, honeycomb, square
from .hamiltonians import (
    Hamiltonian,
    build_hamiltonian,
    ising1d_hamiltonian,
    ising2d_hamiltonian,
    kitaev_hamiltonian,
    plaquette_operator,
    proxy_hamiltonian,
)

__all__ = [
    'Bond',
    'Lattice',
    'LatticeKind',
    'chain',
    'square',
    'heavy_hex',
    'honeycomb',
    'Hamiltonian',
    'build_hamiltonian',
    'ising1d_hamiltonian',
    'ising2d_hamiltonian',
    'kitaev_hamiltonian',
    'proxy_hamiltonian',
    'plaquette_operator',
]
