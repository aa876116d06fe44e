from .exact_energies import (
    exact_ground_energy_small,
    exact_kitaev_energy,
    exact_tfim_energy,
    kitaev_ground_energy,
    reference_energy,
)

__all__ = [
    'exact_tfim_energy',
    'exact_kitaev_energy',
    'kitaev_ground_energy',
    'exact_ground_energy_small',
    'reference_energy',
]
