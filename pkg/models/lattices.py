from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import networkx as nx

from utils.exceptions import ParameterError


DATA_DIR = Path(__file__).resolve().parent / "data"
HEAVY_HEX_FILE = DATA_DIR / "heavy_hex_127.txt"


class LatticeKind(str, Enum):
    CHAIN_PBC = "chain_pbc"
    SQUARE_PBC = "square_pbc"
    HEAVY_HEX_OBC = "heavy_hex_obc"
    HONEYCOMB_PBC = "honeycomb_on_square_pbc"


@dataclass(frozen=True)
class Bond:
    i: int
    j: int
    kind: str = "zz"


@dataclass(frozen=True)
class Lattice:
    """
    Sites 0..n-1 with a typed bond list.

    Ising lattices use the generic bond type "zz"; the honeycomb uses "x",
    "y" and "z" for the three Kitaev bond directions.
    """

    kind: LatticeKind
    n: int
    bonds: Tuple[Bond, ...]
    nx: Optional[int] = None
    ny: Optional[int] = None

    def bonds_of(self, kind: str) -> List[Bond]:
        return [b for b in self.bonds if b.kind == kind]

    def graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        for bond in self.bonds:
            graph.add_edge(bond.i, bond.j, kind=bond.kind)
        return graph

    def max_degree(self) -> int:
        return max(degree for _, degree in self.graph().degree())

    def is_translation_invariant(self) -> bool:
        return self.kind in (LatticeKind.SQUARE_PBC, LatticeKind.HONEYCOMB_PBC)

    def write_edge_list(self, path: str) -> None:
        with open(path, "w") as f:
            f.write(f"# {self.kind.value} lattice, {self.n} sites\n# format: u v type\n")
            for bond in self.bonds:
                f.write(f"{bond.i} {bond.j} {bond.kind}\n")


def chain(n: int) -> Lattice:
    if n < 3:
        raise ParameterError(f"Periodic chain needs at least 3 sites, got {n}")
    bonds = tuple(Bond(j, (j + 1) % n) for j in range(n))
    return Lattice(LatticeKind.CHAIN_PBC, n, bonds, nx=n, ny=1)


def square(nx: int, ny: int) -> Lattice:
    """Nx x Ny torus, site q = r*Nx + c, bonds to the right and downward neighbors."""
    if nx < 3 or ny < 3:
        raise ParameterError(f"Periodic square lattice needs Nx, Ny >= 3, got {nx}x{ny}")
    bonds: List[Bond] = []
    for r in range(ny):
        for c in range(nx):
            q = r * nx + c
            bonds.append(Bond(q, r * nx + (c + 1) % nx))
            bonds.append(Bond(q, ((r + 1) % ny) * nx + c))
    return Lattice(LatticeKind.SQUARE_PBC, nx * ny, tuple(bonds), nx=nx, ny=ny)


def read_edge_list(path: str, kind: LatticeKind = LatticeKind.HEAVY_HEX_OBC) -> Lattice:
    """Load a `u v type` edge list; lines starting with '#' are comments."""
    graph = nx.read_edgelist(str(path), nodetype=int, data=(("kind", str),), comments="#")
    bonds = tuple(Bond(u, v, data.get("kind", "zz")) for u, v, data in graph.edges(data=True))
    n = max(graph.nodes) + 1
    if sorted(graph.nodes) != list(range(n)):
        raise ParameterError(f"Edge list {path} does not cover sites 0..{n - 1}")
    return Lattice(kind, n, bonds)


def heavy_hex() -> Lattice:
    return read_edge_list(str(HEAVY_HEX_FILE), LatticeKind.HEAVY_HEX_OBC)


def check_honeycomb_dims(nx: int, ny: int) -> None:
    if nx % 2 or ny % 2:
        raise ParameterError(f"Honeycomb dimensions must be even, got {nx}x{ny}")
    if nx < 4 or ny < 4:
        raise ParameterError(f"Honeycomb dimensions must be at least 4, got {nx}x{ny}")


def honeycomb(nx: int, ny: int) -> Lattice:
    """
    Kitaev honeycomb drawn on an Nx x Ny square grid (brick wall), q = r*Nx + c.

    Each row is a closed zigzag chain alternating x and y bonds: the bond
    (c, c+1) is an x-bond when r + c is even and a y-bond otherwise. A site
    with r + c even also has a z-bond down to (r+1, c); the remaining sites
    receive their z-bond from the row above. So row 0 holds the x-bond (0, 1),
    row 1 the y-bond (Nx, Nx+1), and (2, Nx+2) is a z-bond.
    """
    check_honeycomb_dims(nx, ny)
    bonds: List[Bond] = []
    for kind in ("x", "y", "z"):
        for r in range(ny):
            for c in range(nx):
                even = (r + c) % 2 == 0
                q = r * nx + c
                if kind == "x" and even:
                    bonds.append(Bond(q, r * nx + (c + 1) % nx, "x"))
                elif kind == "y" and not even:
                    bonds.append(Bond(q, r * nx + (c + 1) % nx, "y"))
                elif kind == "z" and even:
                    bonds.append(Bond(q, ((r + 1) % ny) * nx + c, "z"))
    return Lattice(LatticeKind.HONEYCOMB_PBC, nx * ny, tuple(bonds), nx=nx, ny=ny)


def plaquette_count(nx: int, ny: int) -> int:
    return nx * ny // 2


def plaquette_sites(nx: int, ny: int, p: int) -> List[int]:
    """
    The six sites of hexagon p, upper row first, left to right.

    Hexagon p = r*(Nx/2) + k sits between rows r and r+1 and spans columns
    c0..c0+2 with c0 = 2k + (r mod 2); its vertical sides are the z-bonds at
    columns c0 and c0+2.
    """
    check_honeycomb_dims(nx, ny)
    if not 0 <= p < plaquette_count(nx, ny):
        raise ParameterError(f"Plaquette index {p} out of range for {nx}x{ny}")
    r, k = divmod(p, nx // 2)
    c0 = 2 * k + r % 2
    rows = (r, (r + 1) % ny)
    return [row * nx + (c0 + dc) % nx for row in rows for dc in range(3)]


def plaquette_letters(lattice: Lattice, p: int) -> Dict[int, str]:
    """Site -> letter of the site's bond that is not on the hexagon boundary."""
    sites = plaquette_sites(lattice.nx, lattice.ny, p)
    upper, lower = sites[:3], sites[3:]
    boundary = {
        frozenset(pair)
        for pair in [(upper[0], upper[1]), (upper[1], upper[2]), (lower[0], lower[1]),
                     (lower[1], lower[2]), (upper[0], lower[0]), (upper[2], lower[2])]
    }
    letters: Dict[int, str] = {}
    for bond in lattice.bonds:
        if frozenset((bond.i, bond.j)) in boundary:
            continue
        for site in (bond.i, bond.j):
            if site in sites:
                letters[site] = bond.kind.upper()
    return letters
