from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Type

from simulators.base_simulator import BaseSimulator
from simulators.pauli_path import PauliPathSimulator


@dataclass(frozen=True)
class SimulatorSpec:
    slug: str
    display_name: str
    description: str
    module: str
    class_name: str
    max_qubits: Optional[int] = None


def _load_simulator_class(module: str, class_name: str) -> Optional[Type[BaseSimulator]]:
    try:
        module_obj = __import__(module, fromlist=[class_name])
        cls: Type[BaseSimulator] = getattr(module_obj, class_name)
        return cls
    except (ImportError, AttributeError):
        return None


def _registered_specs() -> List[SimulatorSpec]:
    return [
        SimulatorSpec(
            slug="pauli_path",
            display_name="Pauli Path",
            description="Heisenberg-picture Pauli expansion with coefficient truncation; scales to 100+ qubits.",
            module="simulators.pauli_path",
            class_name="PauliPathSimulator",
        ),
        SimulatorSpec(
            slug="statevector",
            display_name="State vector",
            description="Exact dense amplitudes; reference results for small systems only.",
            module="simulators.statevector",
            class_name="StatevectorSimulator",
            max_qubits=24,
        ),
    ]


def get_simulator_specs() -> List[Dict[str, Any]]:
    """Metadata for the registered back-ends."""
    specs: List[Dict[str, Any]] = []
    for spec in _registered_specs():
        cls = _load_simulator_class(spec.module, spec.class_name)
        specs.append(
            {
                "slug": spec.slug,
                "name": spec.display_name,
                "description": spec.description,
                "max_qubits": spec.max_qubits or "",
                "available": cls is not None,
            }
        )
    return specs


def get_simulator_class(slug: str) -> Optional[Type[BaseSimulator]]:
    if slug == "pauli_path":
        return PauliPathSimulator

    for spec in _registered_specs():
        if spec.slug == slug:
            return _load_simulator_class(spec.module, spec.class_name)
    return None


def create_simulator(slug: str, delta_c: float = 1e-3, num_workers: int = 1) -> BaseSimulator:
    """
    Instantiate a back-end by slug.

    The truncation threshold and worker count only apply to the Pauli path
    engine.
    """
    cls = get_simulator_class(slug)
    if cls is None:
        raise ValueError(f"Simulator '{slug}' is not available.")
    simulator = cls(delta_c=delta_c, num_workers=num_workers) if cls is PauliPathSimulator else cls()
    if not isinstance(simulator, BaseSimulator):
        raise TypeError(f"Simulator '{slug}' does not inherit from BaseSimulator.")
    return simulator


def instantiate_simulators(slugs: Iterable[str], delta_c: float = 1e-3, num_workers: int = 1) -> List[BaseSimulator]:
    instances: List[BaseSimulator] = []
    seen = set()

    for slug in slugs:
        if slug in seen:
            continue
        seen.add(slug)
        instances.append(create_simulator(slug, delta_c, num_workers))

    if not instances:
        raise ValueError("No valid simulators selected.")

    return instances


def default_simulator_slugs() -> List[str]:
    return [spec["slug"] for spec in get_simulator_specs() if spec["available"]]
