"""
Reduced density matrices from Pauli expectation values, and entropies.

rho_R = 2^-|R| sum_P c_P P with c_P = <psi|P|psi>, the sum running over all
4^|R| Pauli strings supported on the region R.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from circuits.circuit import Circuit
from pauli.pauli_string import PauliString
from pauli.sparse_operator import SparseOperator
from simulators.pauli_path import PauliPathSimulator
from simulators.statevector import operator_matrix
from utils.exceptions import CapacityError, DimensionError, ParameterError


MAX_REGION = 8
CLAMP_WARNING = 0.01
_LETTERS = "IXYZ"


@dataclass(frozen=True)
class DensityMatrix:
    """
    Density matrix of an ordered site list; local qubit k is region[k],
    stored in bit k of the row and column index.
    """

    region: Tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dim = 1 << len(self.region)
        if self.matrix.shape != (dim, dim):
            raise DimensionError(f"Region of {len(self.region)} sites needs a {dim}x{dim} matrix, got {self.matrix.shape}")
        if len(set(self.region)) != len(self.region):
            raise ParameterError(f"Region has repeated sites: {self.region}")

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))

    def is_hermitian(self, atol: float = 1e-10) -> bool:
        return bool(np.allclose(self.matrix, self.matrix.conj().T, atol=atol))

    def reduce(self, keep: Sequence[int]) -> "DensityMatrix":
        return partial_trace(self, keep)


def region_strings(n: int, region: Sequence[int]) -> List[PauliString]:
    """All 4^|R| Pauli strings on the region, identity first."""
    strings = []
    for letters in itertools.product(_LETTERS, repeat=len(region)):
        strings.append(PauliString.from_sites(n, {q: letter for q, letter in zip(region, letters) if letter != "I"}))
    return strings


def pauli_coefficients(circuit: Circuit, theta: Optional[Sequence[float]], region: Sequence[int],
                       delta_c: float = 0.0, num_workers: int = 1) -> Dict[PauliString, float]:
    """
    c_P = <psi|P|psi> for every P on the region, keyed by the full-width string.

    The coefficients are independent engine calls and run on a thread pool
    when num_workers > 1.
    """
    region = list(region)
    if len(region) > MAX_REGION:
        raise CapacityError(f"Tomography limited to {MAX_REGION} sites, got {len(region)}")
    if len(set(region)) != len(region):
        raise ParameterError(f"Region has repeated sites: {region}")
    if any(not 0 <= q < circuit.n for q in region):
        raise DimensionError(f"Region {region} exceeds {circuit.n} qubits")

    strings = region_strings(circuit.n, region)
    simulator = PauliPathSimulator(delta_c=delta_c, record_trace=False)

    def evaluate(string: PauliString) -> float:
        if string.is_identity():
            return 1.0
        return simulator.expectation(circuit, string, theta)

    if num_workers > 1:
        values = Parallel(n_jobs=num_workers, prefer="threads")(delayed(evaluate)(s) for s in strings)
    else:
        values = [evaluate(s) for s in strings]
    return dict(zip(strings, values))


def assemble(region: Sequence[int], coefficients: Dict[PauliString, float]) -> DensityMatrix:
    region = tuple(region)
    k = len(region)
    local = SparseOperator(k, [(s.restrict(region), c / (1 << k)) for s, c in coefficients.items()])
    return DensityMatrix(region, operator_matrix(local).toarray())


def tomography(circuit: Circuit, theta: Optional[Sequence[float]], region: Sequence[int],
               delta_c: float = 0.0, num_workers: int = 1) -> DensityMatrix:
    """
    Reconstruct rho_R from all 4^|R| Pauli expectations.

    Args:
        circuit: State-preparation circuit
        theta: Parameter vector
        region: Ordered sites, at most 8
        delta_c: Engine truncation threshold
        num_workers: Threads for the independent coefficient evaluations

    Returns:
        DensityMatrix on the region
    """
    if not region:
        raise ParameterError("Tomography region must be non-empty")
    return assemble(region, pauli_coefficients(circuit, theta, region, delta_c, num_workers))


def coefficient_frame(region: Sequence[int], coefficients: Dict[PauliString, float]) -> pd.DataFrame:
    """Coefficient dump: one row per Pauli word."""
    rows = [{"word": s.to_word(), "local": s.restrict(region).to_label(), "coefficient": c}
            for s, c in coefficients.items()]
    return pd.DataFrame(rows)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Trace out every site of rho.region not in ``keep``; the result is ordered as ``keep``."""
    keep = list(keep)
    region = list(rho.region)
    missing = [q for q in keep if q not in region]
    if missing:
        raise ParameterError(f"Sites {missing} are not in region {region}")
    k = len(region)
    keep_bits = [region.index(q) for q in keep]
    traced = set(range(k)) - set(keep_bits)

    # C-ordered axis a holds bit k-1-a, rows first and then columns
    row_labels = [k - 1 - a for a in range(k)]
    col_labels = [b if b in traced else k + b for b in row_labels]
    out_labels = [b for b in reversed(keep_bits)] + [k + b for b in reversed(keep_bits)]
    tensor = rho.matrix.reshape((2,) * (2 * k))
    reduced = np.einsum(tensor, row_labels + col_labels, out_labels)
    dim = 1 << len(keep)
    return DensityMatrix(tuple(keep), reduced.reshape(dim, dim))


def von_neumann_entropy(rho: DensityMatrix | np.ndarray, verbose: bool = True) -> float:
    """
    S = -Tr[rho log2 rho] in bits.

    Eigenvalues are clamped to [0, 1] without renormalizing; a clamp larger
    than 0.01 is reported as a warning.
    """
    matrix = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Density matrix must be square, got {matrix.shape}")
    if not np.allclose(matrix, matrix.conj().T, atol=1e-10):
        raise ParameterError("Density matrix is not Hermitian")
    eigenvalues = np.linalg.eigvalsh(matrix)
    clamped = np.clip(eigenvalues, 0.0, 1.0)
    clamp = float(np.max(np.abs(eigenvalues - clamped))) if eigenvalues.size else 0.0
    if clamp > CLAMP_WARNING and verbose:
        print(f"⚠️ Warning: clamped density-matrix eigenvalues by up to {clamp:.3e}")
    positive = clamped[clamped > 0.0]
    return float(-np.sum(positive * np.log2(positive)))


def _check_regions(a: Sequence[int], b: Sequence[int], c: Sequence[int]) -> None:
    sa, sb, sc = set(a), set(b), set(c)
    if not (sa and sb and sc):
        raise ParameterError("Regions A, B and C must be non-empty")
    if sa & sb or sa & sc or sb & sc:
        raise ParameterError(f"Regions must be disjoint, got A={sorted(sa)}, B={sorted(sb)}, C={sorted(sc)}")
    if len(sa | sb | sc) > MAX_REGION:
        raise CapacityError(f"A, B and C together exceed {MAX_REGION} sites")


def entropy_terms(circuit: Circuit, theta: Optional[Sequence[float]], a: Sequence[int], b: Sequence[int],
                  c: Sequence[int], delta_c: float = 0.0, num_workers: int = 1) -> Dict[str, float]:
    """The seven region entropies, from a single tomography of A, B and C together."""
    _check_regions(a, b, c)
    a, b, c = list(a), list(b), list(c)
    rho = tomography(circuit, theta, a + b + c, delta_c, num_workers)
    regions = {"A": a, "B": b, "C": c, "AB": a + b, "AC": a + c, "BC": b + c}
    terms = {name: von_neumann_entropy(partial_trace(rho, sites)) for name, sites in regions.items()}
    terms["ABC"] = von_neumann_entropy(rho)
    return terms


def topological_entropy(circuit: Circuit, theta: Optional[Sequence[float]], a: Sequence[int], b: Sequence[int],
                        c: Sequence[int], delta_c: float = 0.0, num_workers: int = 1) -> float:
    """S_A + S_B + S_C - S_AB - S_AC - S_BC + S_ABC."""
    s = entropy_terms(circuit, theta, a, b, c, delta_c, num_workers)
    return s["A"] + s["B"] + s["C"] - s["AB"] - s["AC"] - s["BC"] + s["ABC"]


def default_regions(nx: int) -> Tuple[List[int], List[int], List[int]]:
    """A = {0, 1}, B = {Nx, Nx+1}, C = {2, Nx+2}."""
    return [0, 1], [nx, nx + 1], [2, nx + 2]
