from .flux_free import (
    EffectiveGate,
    EffectiveLayout,
    basis_change_effective,
    effective_gate,
    flux_free_circuit,
    toric_prep_effective,
)
from .braiding import BraidSpec, braid_qasm, braid_spec, braiding_phase, controlled_braid_circuit

__all__ = [
    'EffectiveGate',
    'EffectiveLayout',
    'toric_prep_effective',
    'basis_change_effective',
    'effective_gate',
    'flux_free_circuit',
    'BraidSpec',
    'braid_spec',
    'braiding_phase',
    'controlled_braid_circuit',
    'braid_qasm',
]
