from .gates import Bound, CliffordGate, Free, PauliRotation, reduce_angle
from .circuit import Circuit, InitialState, append_rotation, bind, compose
from .qasm import from_qasm, to_qasm

__all__ = [
    'Bound',
    'Free',
    'PauliRotation',
    'CliffordGate',
    'Circuit',
    'InitialState',
    'append_rotation',
    'bind',
    'compose',
    'reduce_angle',
    'to_qasm',
    'from_qasm',
]
