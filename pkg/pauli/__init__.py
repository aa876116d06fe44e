from .pauli_string import PauliString, commutes, multiply, multiply_all
from .sparse_operator import (
    PauliTerm,
    SparseOperator,
    expectation_plus,
    expectation_zero,
    truncate,
)

__all__ = [
    'PauliString',
    'PauliTerm',
    'SparseOperator',
    'commutes',
    'multiply',
    'multiply_all',
    'truncate',
    'expectation_zero',
    'expectation_plus',
]
