import numpy as np
from typing import Any, Dict, List, Optional


class Metrics:
    """
    Utility class for computing variational-energy evaluation metrics.
    """

    @staticmethod
    def relative_error(energy: float, exact: Optional[float]) -> Optional[float]:
        """
        |E - E0| / |E0|.

        Args:
            energy: Variational energy
            exact: Reference ground energy (None when unavailable)

        Returns:
            Relative error, or None without a usable reference
        """
        if exact is None or exact == 0.0:
            return None
        return abs(energy - exact) / abs(exact)

    @staticmethod
    def truncation_undershoot(energy_train: float, energy_report: float) -> float:
        """
        energy@train-delta minus energy@report-delta.

        Negative values mean truncation made the trial energy look lower
        than it is.
        """
        return energy_train - energy_report

    @staticmethod
    def below_ground(energy: float, exact: Optional[float], tolerance: float = 1e-6) -> bool:
        """True when an energy undercuts the exact ground energy (a truncation artifact)."""
        return exact is not None and energy < exact - tolerance

    @staticmethod
    def bond_uniformity(values: List[float]) -> float:
        """Max minus min over bonds of one type; 0 for a translation-invariant state."""
        if not values:
            return 0.0
        return float(max(values) - min(values))

    @staticmethod
    def compare_runs(energies: List[float], exact: Optional[float] = None) -> Dict[str, Any]:
        """
        Summary statistics over repeated runs (e.g. different seeds).

        Args:
            energies: Final energies of the runs
            exact: Optional reference ground energy

        Returns:
            Dictionary with comparison statistics
        """
        stats: Dict[str, Any] = {
            "energies": energies,
            "best_energy": min(energies),
            "worst_energy": max(energies),
            "average_energy": float(np.mean(energies)),
            "std_energy": float(np.std(energies)),
        }
        if exact is not None:
            errors = [Metrics.relative_error(e, exact) for e in energies]
            stats["relative_errors"] = errors
            stats["median_relative_error"] = float(np.median(errors))
        return stats
