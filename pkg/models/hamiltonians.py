from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from models.lattices import (
    Lattice,
    LatticeKind,
    chain,
    heavy_hex,
    honeycomb,
    plaquette_letters,
    plaquette_sites,
    square,
)
from pauli.pauli_string import PauliString
from pauli.sparse_operator import SparseOperator
from utils.exceptions import ParameterError


MODEL_KINDS = ("tfim1d", "ising_square", "ising_heavyhex", "kitaev")


@dataclass(frozen=True)
class Hamiltonian:
    """
    A real Pauli-sum Hamiltonian plus the model it came from.

    ``couplings`` holds the dimensionless constants (gx, gz for Ising models,
    jx, jy, jz for Kitaev). ``sites`` is the number of physical sites the
    full model lives on; for a proxy Hamiltonian it still names the full
    system size, which is what the energy is normalized by.
    """

    operator: SparseOperator
    model: str
    couplings: Dict[str, float] = field(default_factory=dict)
    lattice: Optional[Lattice] = None
    is_proxy: bool = False

    @property
    def n(self) -> int:
        return self.operator.n

    @property
    def sites(self) -> int:
        return self.lattice.n if self.lattice is not None else self.operator.n

    def energy_per_site(self, energy: float) -> float:
        return energy / self.sites

    def __len__(self) -> int:
        return len(self.operator)


def _two_site(n: int, i: int, j: int, letter: str) -> PauliString:
    return PauliString.from_sites(n, {i: letter, j: letter})


def _one_site(n: int, i: int, letter: str) -> PauliString:
    return PauliString.from_sites(n, {i: letter})


def _ising_terms(lattice: Lattice, gx: float, gz: float) -> List[Tuple[PauliString, float]]:
    n = lattice.n
    terms = [(_two_site(n, b.i, b.j, "Z"), -1.0) for b in lattice.bonds]
    if gx != 0.0:
        terms += [(_one_site(n, j, "X"), -gx) for j in range(n)]
    if gz != 0.0:
        terms += [(_one_site(n, j, "Z"), -gz) for j in range(n)]
    return terms


def ising1d_hamiltonian(n: int, gx: float, gz: float = 0.0) -> Hamiltonian:
    """
    Periodic transverse-field Ising chain.

    H = -sum Z_j Z_{j+1} - gx sum X_j - gz sum Z_j, with Z_{N-1} Z_0 closing the ring.

    Args:
        n: Number of sites, at least 3
        gx: Transverse field
        gz: Longitudinal field

    Returns:
        Hamiltonian with N + N*[gx != 0] + N*[gz != 0] terms
    """
    lattice = chain(n)
    return Hamiltonian(SparseOperator(n, _ising_terms(lattice, gx, gz)), "tfim1d",
                       {"gx": float(gx), "gz": float(gz)}, lattice)


def ising2d_hamiltonian(lattice: Lattice, gx: float) -> Hamiltonian:
    """H = -sum over bonds Z_i Z_j - gx sum X_j on a square torus or the heavy-hex graph."""
    if lattice.kind not in (LatticeKind.SQUARE_PBC, LatticeKind.HEAVY_HEX_OBC):
        raise ParameterError(f"2D Ising needs a square or heavy-hex lattice, got {lattice.kind.value}")
    model = "ising_square" if lattice.kind == LatticeKind.SQUARE_PBC else "ising_heavyhex"
    return Hamiltonian(SparseOperator(lattice.n, _ising_terms(lattice, gx, 0.0)), model,
                       {"gx": float(gx)}, lattice)


def kitaev_hamiltonian(nx: int, ny: int, jx: float, jy: float, jz: float) -> Hamiltonian:
    """H = -jx sum XX (x-bonds) - jy sum YY (y-bonds) - jz sum ZZ (z-bonds)."""
    lattice = honeycomb(nx, ny)
    n = lattice.n
    couplings = {"jx": float(jx), "jy": float(jy), "jz": float(jz)}
    terms = []
    for kind in ("x", "y", "z"):
        coupling = couplings[f"j{kind}"]
        if coupling == 0.0:
            continue
        terms += [(_two_site(n, b.i, b.j, kind.upper()), -coupling) for b in lattice.bonds_of(kind)]
    return Hamiltonian(SparseOperator(n, terms), "kitaev", couplings, lattice)


def proxy_hamiltonian(hamiltonian: Hamiltonian) -> Hamiltonian:
    """
    Few-term surrogate whose expectation equals the full energy on
    translation-invariant states.

    Chain:   -N (Z_0 Z_1 + gx X_0 + gz Z_0)
    Square:  -N (Z_0 Z_1 + Z_0 Z_Nx + gx X_1)
    Kitaev:  (Nx Ny / 2)(-jx X_0 X_1 - jy Y_Nx Y_Nx+1 - jz Z_2 Z_Nx+2)

    Each term names a real bond of the lattice, so the surrogate is a
    sub-sum of the full Hamiltonian with rescaled coefficients.
    """
    lattice = hamiltonian.lattice
    if lattice is None or lattice.kind not in (LatticeKind.CHAIN_PBC, LatticeKind.SQUARE_PBC,
                                               LatticeKind.HONEYCOMB_PBC):
        kind = lattice.kind.value if lattice is not None else "none"
        raise ParameterError(f"Proxy Hamiltonian needs a translation-invariant lattice, got {kind}")

    n = lattice.n
    c = hamiltonian.couplings
    if lattice.kind == LatticeKind.CHAIN_PBC:
        terms = [(_two_site(n, 0, 1, "Z"), -n), (_one_site(n, 0, "X"), -n * c.get("gx", 0.0)),
                 (_one_site(n, 0, "Z"), -n * c.get("gz", 0.0))]
    elif lattice.kind == LatticeKind.SQUARE_PBC:
        nx = lattice.nx
        terms = [(_two_site(n, 0, 1, "Z"), -n), (_two_site(n, 0, nx, "Z"), -n),
                 (_one_site(n, 1, "X"), -n * c.get("gx", 0.0))]
    else:
        nx = lattice.nx
        scale = n / 2
        terms = [(_two_site(n, 0, 1, "X"), -scale * c["jx"]),
                 (_two_site(n, nx, nx + 1, "Y"), -scale * c["jy"]),
                 (_two_site(n, 2, nx + 2, "Z"), -scale * c["jz"])]
    return Hamiltonian(SparseOperator(n, terms), hamiltonian.model, dict(c), lattice, is_proxy=True)


def build_hamiltonian(model: str, nx: int, ny: int = 1, gx: float = 0.0, gz: float = 0.0,
                      jx: float = 0.0, jy: float = 0.0, jz: float = 0.0) -> Hamiltonian:
    """Dispatch on the model slug used in run configs."""
    if model == "tfim1d":
        return ising1d_hamiltonian(nx, gx, gz)
    if model == "ising_square":
        return ising2d_hamiltonian(square(nx, ny), gx)
    if model == "ising_heavyhex":
        return ising2d_hamiltonian(heavy_hex(), gx)
    if model == "kitaev":
        return kitaev_hamiltonian(nx, ny, jx, jy, jz)
    raise ParameterError(f"Unknown model '{model}', expected one of {MODEL_KINDS}")


def plaquette_operator(nx: int, ny: int, p: int) -> PauliString:
    """
    Six-site flux operator W_p of the honeycomb hexagon p.

    Example:
        >>> plaquette_operator(8, 6, 9).to_word()
        'Y18 Z19 X20 X26 Z27 Y28'
    """
    lattice = honeycomb(nx, ny)
    letters = plaquette_letters(lattice, p)
    if sorted(letters) != sorted(plaquette_sites(nx, ny, p)):
        raise ParameterError(f"Plaquette {p} of {nx}x{ny} is not a proper hexagon")
    return PauliString.from_sites(lattice.n, letters)


def plaquette_operators(nx: int, ny: int) -> List[PauliString]:
    return [plaquette_operator(nx, ny, p) for p in range(nx * ny // 2)]
