from .base_simulator import BaseSimulator
from .pauli_path import (
    EngineStats,
    PauliPathSimulator,
    conjugate_clifford,
    conjugate_rotation,
    expectation,
    heisenberg_evolve,
)
from .statevector import StatevectorSimulator, statevector_evolve, statevector_expectation

__all__ = [
    'BaseSimulator',
    'EngineStats',
    'PauliPathSimulator',
    'StatevectorSimulator',
    'conjugate_rotation',
    'conjugate_clifford',
    'heisenberg_evolve',
    'expectation',
    'statevector_evolve',
    'statevector_expectation',
]
