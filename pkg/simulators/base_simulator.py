from abc import ABC, abstractmethod
from typing import Optional, Sequence, Union

import numpy as np

from circuits.circuit import Circuit
from pauli.pauli_string import PauliString
from pauli.sparse_operator import SparseOperator


Observable = Union[SparseOperator, PauliString]


def as_operator(observable: Observable) -> SparseOperator:
    if isinstance(observable, PauliString):
        return SparseOperator.single(observable)
    return observable


class BaseSimulator(ABC):
    """
    Abstract base class for expectation-value back-ends.

    Every simulator answers the same question: the value of an observable in
    the state prepared by a parametrized circuit from its declared initial
    state.

    To add a back-end, inherit from this class and implement ``expectation``.
    See the example below for the expected input/output format.
    """

    def __init__(self, name: str):
        self.name = name
        self.run_time = 0.0

    @abstractmethod
    def expectation(self, circuit: Circuit, observable: Observable, theta: Optional[Sequence[float]] = None) -> float:
        """
        Evaluate <psi(theta)|O|psi(theta)>.

        Args:
            circuit: Circuit whose gates act on ``circuit.initial_state``
                Example: a 2-qubit circuit with one ZZ rotation on Free(0)
                    Circuit(2).append_rotation(PauliString.from_label("ZZ"), Free(0))

            observable: Real combination of Pauli strings on ``circuit.n`` qubits
                Example:
                    SparseOperator.from_labels({"XI": 1.0, "ZZ": -0.5})

            theta: Parameter vector of length ``circuit.param_count``
                Example: [0.3]

        Returns:
            The expectation value as a float.
                Example: <XI> after the ZZ rotation above, started from |++>,
                is cos(0.3) = 0.9553

        Example Implementation:
            def expectation(self, circuit, observable, theta=None):
                import time
                start_time = time.time()

                state = my_backend.run(circuit.bind(theta))
                value = my_backend.measure(state, observable)

                self.run_time = time.time() - start_time
                return value
        """
        pass

    def get_run_time(self) -> float:
        """Get the time taken by the last evaluation."""
        return self.run_time

    @staticmethod
    def _theta(circuit: Circuit, theta: Optional[Sequence[float]]) -> np.ndarray:
        if theta is None:
            theta = np.zeros(circuit.param_count)
        return np.asarray(theta, dtype=np.float64)

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}(name='{self.name}')"
