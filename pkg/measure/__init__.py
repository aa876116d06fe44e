from .observables import (
    bond_expectations,
    correlation_profile,
    energy_from_bonds,
    flux_report,
    magnetization,
    observable_report,
)
from .tomography import (
    DensityMatrix,
    partial_trace,
    pauli_coefficients,
    tomography,
    topological_entropy,
    von_neumann_entropy,
)

__all__ = [
    'magnetization',
    'bond_expectations',
    'energy_from_bonds',
    'flux_report',
    'correlation_profile',
    'observable_report',
    'DensityMatrix',
    'pauli_coefficients',
    'tomography',
    'partial_trace',
    'von_neumann_entropy',
    'topological_entropy',
]
