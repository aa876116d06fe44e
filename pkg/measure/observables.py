from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from circuits.circuit import Circuit
from models.hamiltonians import Hamiltonian, plaquette_operators
from models.lattices import Bond
from pauli.pauli_string import PauliString
from pauli.sparse_operator import SparseOperator
from simulators.pauli_path import PauliPathSimulator
from utils.exceptions import ParameterError


_BOND_LETTER = {"zz": "Z", "x": "X", "y": "Y", "z": "Z"}


def _simulator(delta_c: float, num_workers: int) -> PauliPathSimulator:
    return PauliPathSimulator(delta_c=delta_c, num_workers=num_workers, record_trace=False)


def magnetization(circuit: Circuit, theta: Optional[Sequence[float]], axis: str = "z",
                  delta_c: float = 0.0, num_workers: int = 1) -> float:
    """
    Site-averaged single-site expectation (1/N) sum <Z_j> or (1/N) sum <X_j>.

    Evaluated as one engine call on the averaged operator.
    """
    axis = axis.lower()
    if axis not in ("x", "z", "y"):
        raise ParameterError(f"Magnetization axis must be x, y or z, got '{axis}'")
    n = circuit.n
    op = SparseOperator(n, [(PauliString.from_sites(n, {j: axis.upper()}), 1.0 / n) for j in range(n)])
    return _simulator(delta_c, num_workers).expectation(circuit, op, theta)


def bond_letter(bond: Bond) -> str:
    try:
        return _BOND_LETTER[bond.kind]
    except KeyError:
        raise ParameterError(f"Unknown bond type '{bond.kind}'") from None


def bond_expectations(circuit: Circuit, theta: Optional[Sequence[float]], bonds: Sequence[Bond],
                      delta_c: float = 0.0, num_workers: int = 1) -> List[float]:
    """<P_i P_j> per bond, P being the bond's own Pauli letter (Z for Ising bonds)."""
    simulator = _simulator(delta_c, num_workers)
    n = circuit.n
    values = []
    for bond in bonds:
        letter = bond_letter(bond)
        string = PauliString.from_sites(n, {bond.i: letter, bond.j: letter})
        values.append(simulator.expectation(circuit, string, theta))
    return values


def bond_frame(bonds: Sequence[Bond], values: Sequence[float]) -> pd.DataFrame:
    return pd.DataFrame(
        {"i": [b.i for b in bonds], "j": [b.j for b in bonds], "type": [b.kind for b in bonds], "value": list(values)}
    )


def bond_type_averages(frame: pd.DataFrame) -> Dict[str, float]:
    return {kind: float(group["value"].mean()) for kind, group in frame.groupby("type")}


def bond_spread(frame: pd.DataFrame) -> Dict[str, float]:
    """Max minus min of the bond values within each bond type."""
    return {kind: float(group["value"].max() - group["value"].min()) for kind, group in frame.groupby("type")}


def energy_from_bonds(hamiltonian: Hamiltonian, frame: pd.DataFrame,
                      site_values: Optional[Dict[str, float]] = None) -> float:
    """
    Coupling-weighted energy assembled from measured bond values.

    Kitaev: -sum_type J_type * sum_bonds <PP>. Ising: -sum_bonds <ZZ>
    - gx N <X> - gz N <Z>, with the site averages passed in ``site_values``.
    """
    c = hamiltonian.couplings
    if hamiltonian.model == "kitaev":
        return float(-sum(c[f"j{kind}"] * group["value"].sum() for kind, group in frame.groupby("type")))
    site_values = site_values or {}
    n = hamiltonian.sites
    return float(-frame["value"].sum() - c.get("gx", 0.0) * n * site_values.get("x", 0.0)
                 - c.get("gz", 0.0) * n * site_values.get("z", 0.0))


def flux_report(circuit: Circuit, theta: Optional[Sequence[float]], nx: int, ny: int,
                delta_c: float = 0.0, num_workers: int = 1) -> pd.DataFrame:
    """<W_p> for every hexagon of the Kitaev lattice."""
    simulator = _simulator(delta_c, num_workers)
    rows = []
    for p, string in enumerate(plaquette_operators(nx, ny)):
        rows.append({"plaquette": p, "word": string.to_word(), "value": simulator.expectation(circuit, string, theta)})
    return pd.DataFrame(rows)


def correlation_profile(circuit: Circuit, theta: Optional[Sequence[float]], letter: str = "Z",
                        delta_c: float = 0.0, num_workers: int = 1,
                        sites: Optional[Sequence[int]] = None) -> pd.DataFrame:
    """
    <P_0 P_r> against distance r along ``sites`` (qubit order by default).

    On a periodic chain distances up to N/2 are distinct.
    """
    sites = list(sites) if sites is not None else list(range(circuit.n))
    simulator = _simulator(delta_c, num_workers)
    origin = sites[0]
    rows = []
    for r in range(1, len(sites) // 2 + 1):
        string = PauliString.from_sites(circuit.n, {origin: letter, sites[r]: letter})
        rows.append({"distance": r, "value": simulator.expectation(circuit, string, theta)})
    return pd.DataFrame(rows)


def energy(circuit: Circuit, theta: Optional[Sequence[float]], observable: Union[Hamiltonian, SparseOperator],
           delta_c: float = 0.0, num_workers: int = 1) -> float:
    op = observable.operator if isinstance(observable, Hamiltonian) else observable
    return _simulator(delta_c, num_workers).expectation(circuit, op, theta)


def observable_report(circuit: Circuit, theta: Optional[Sequence[float]], hamiltonian: Hamiltonian,
                      delta_c: float = 0.0, num_workers: int = 1) -> Dict[str, object]:
    """Energy, magnetizations, bond table and (for Kitaev) fluxes in one bundle."""
    lattice = hamiltonian.lattice
    bonds = list(lattice.bonds)
    frame = bond_frame(bonds, bond_expectations(circuit, theta, bonds, delta_c, num_workers))
    report: Dict[str, object] = {
        "energy": energy(circuit, theta, hamiltonian, delta_c, num_workers),
        "bonds": frame,
        "bond_averages": bond_type_averages(frame),
        "bond_spread": bond_spread(frame),
    }
    if hamiltonian.model == "kitaev":
        fluxes = flux_report(circuit, theta, lattice.nx, lattice.ny, delta_c, num_workers)
        report["fluxes"] = fluxes
        report["mean_flux"] = float(np.mean(fluxes["value"]))
        report["energy_from_bonds"] = energy_from_bonds(hamiltonian, frame)
    else:
        report["magnetization_x"] = magnetization(circuit, theta, "x", delta_c, num_workers)
        report["magnetization_z"] = magnetization(circuit, theta, "z", delta_c, num_workers)
        report["energy_from_bonds"] = energy_from_bonds(
            hamiltonian, frame, {"x": report["magnetization_x"], "z": report["magnetization_z"]}
        )
    return report
