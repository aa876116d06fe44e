from __future__ import annotations

import json
import os
import tempfile
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from circuits.circuit import Circuit
from pauli.sparse_operator import SparseOperator
from simulators.base_simulator import BaseSimulator
from simulators.pauli_path import PauliPathSimulator
from train.spsa_adam import Hyper, OptimizerState, spsa_adam_step
from utils.exceptions import DimensionError, ParameterError, TrainingAborted


REPORT_DELTA_C = 1e-4


@dataclass(frozen=True)
class Stage:
    iterations: int
    delta_c: float
    eta: Optional[float] = None

    def __post_init__(self):
        if self.iterations <= 0:
            raise ParameterError(f"Stage iterations must be positive, got {self.iterations}")
        if not np.isfinite(self.delta_c) or self.delta_c < 0:
            raise ParameterError(f"Stage delta_c must be finite and >= 0, got {self.delta_c}")
        if self.eta is not None and self.eta <= 0:
            raise ParameterError(f"Stage eta must be positive, got {self.eta}")


@dataclass(frozen=True)
class Schedule:
    """Consecutive training stages, each with its own truncation threshold."""

    stages: Tuple[Stage, ...]

    def __post_init__(self):
        if not self.stages:
            raise ParameterError("Schedule needs at least one stage")

    @classmethod
    def from_lists(cls, iterations: Sequence[int], delta_c: Sequence[float],
                   eta: Optional[Sequence[Optional[float]]] = None) -> "Schedule":
        if len(iterations) != len(delta_c) or (eta is not None and len(eta) != len(iterations)):
            raise ParameterError(
                f"Schedule lists differ in length: iterations={len(iterations)}, delta_c={len(delta_c)}"
                + (f", eta={len(eta)}" if eta is not None else "")
            )
        etas = list(eta) if eta is not None else [None] * len(iterations)
        return cls(tuple(Stage(int(i), float(d), e) for i, d, e in zip(iterations, delta_c, etas)))

    @property
    def total_iterations(self) -> int:
        return sum(s.iterations for s in self.stages)

    def stage_at(self, t: int) -> int:
        """Index of the stage that iteration t (0-based) belongs to."""
        end = 0
        for index, stage in enumerate(self.stages):
            end += stage.iterations
            if t < end:
                return index
        return len(self.stages) - 1


@dataclass
class TrainResult:
    theta: np.ndarray
    best_theta: np.ndarray
    best_energy: float
    energy_train: float
    energy_report: float
    train_delta_c: float
    report_delta_c: float
    iterations: int
    cost_calls: int
    wall_time: float
    trace: pd.DataFrame = field(default_factory=pd.DataFrame)
    checkpoint_path: str = ""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "best_energy": self.best_energy,
            "energy_train": self.energy_train,
            "energy_report": self.energy_report,
            "train_delta_c": self.train_delta_c,
            "report_delta_c": self.report_delta_c,
            "iterations": self.iterations,
            "cost_calls": self.cost_calls,
            "wall_time": self.wall_time,
            "theta": self.best_theta.tolist(),
        }


def make_cost(simulator: BaseSimulator, circuit: Circuit, observable: SparseOperator,
              delta_c: float) -> Callable[[np.ndarray], float]:
    """Energy as a function of theta; the threshold only applies to the Pauli path engine."""
    if isinstance(simulator, PauliPathSimulator):
        return lambda theta: simulator.expectation(circuit, observable, theta, delta_c=delta_c)
    return lambda theta: simulator.expectation(circuit, observable, theta)


def write_checkpoint(path: str, state: OptimizerState, stage: int, best_energy: float,
                     best_theta: np.ndarray) -> None:
    """Write the checkpoint JSON atomically (temp file, then replace)."""
    payload = state.to_dict()
    payload.update({"stage": stage, "best_energy": best_energy, "best_theta": best_theta.tolist()})
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    with os.fdopen(fd, "w") as f:
        json.dump(payload, f, indent=2)
    os.replace(tmp, path)


def load_checkpoint(path: str) -> Dict[str, Any]:
    with open(path, "r") as f:
        data = json.load(f)
    data["state"] = OptimizerState.from_dict(data)
    data["best_theta"] = np.asarray(data.get("best_theta", data["theta"]), dtype=np.float64)
    return data


def train(
    circuit: Circuit,
    observable: SparseOperator,
    schedule: Schedule,
    seed: int = 0,
    warm_start: Optional[Sequence[float]] = None,
    hyper: Optional[Hyper] = None,
    simulator: Optional[BaseSimulator] = None,
    report_delta_c: float = REPORT_DELTA_C,
    record_every: int = 10,
    checkpoint_path: Optional[str] = None,
    trace_path: Optional[str] = None,
    verbose: bool = True,
) -> TrainResult:
    """
    Minimize <psi(theta)|H|psi(theta)> with SPSA gradients and ADAM steps.

    Args:
        circuit: Parametrized ansatz
        observable: Hamiltonian (or its proxy) on circuit.n qubits
        schedule: Stages of (iterations, delta_c, optional eta)
        seed: Seed of the direction sampler
        warm_start: Initial parameters; zeros when omitted
        hyper: ADAM / SPSA hyperparameters
        simulator: Expectation back-end; a serial Pauli path engine by default
        report_delta_c: Stricter threshold for the final re-evaluation
        record_every: Energy is evaluated, recorded and checkpointed every k iterations
        checkpoint_path: Optional checkpoint JSON path
        trace_path: Optional energy trace CSV path
        verbose: Print progress lines

    Returns:
        TrainResult with the best parameters, both energies and the trace
    """
    if observable.n != circuit.n:
        raise DimensionError(f"Observable acts on {observable.n} qubits, circuit on {circuit.n}")
    if record_every < 1:
        raise ParameterError(f"record_every must be >= 1, got {record_every}")
    simulator = simulator or PauliPathSimulator(record_trace=False)
    theta0 = np.zeros(circuit.param_count) if warm_start is None else np.asarray(warm_start, dtype=np.float64)
    if theta0.shape != (circuit.param_count,):
        raise DimensionError(f"Warm start has {theta0.size} parameters, ansatz needs {circuit.param_count}")

    rng = np.random.default_rng(seed)
    state = OptimizerState.initial(theta0, hyper)
    base_eta = state.hyper.eta
    best_energy = np.inf
    best_theta = theta0.copy()
    rows: List[Dict[str, Any]] = []
    cost_calls = 0
    start_time = time.time()

    def counted(cost: Callable[[np.ndarray], float]) -> Callable[[np.ndarray], float]:
        def wrapper(theta: np.ndarray) -> float:
            nonlocal cost_calls
            cost_calls += 1
            return cost(theta)
        return wrapper

    def record(iteration: int, stage_index: int, delta_c: float, cost: Callable[[np.ndarray], float]) -> None:
        nonlocal best_energy, best_theta
        energy = float(cost(state.theta))
        if not np.isfinite(energy):
            raise TrainingAborted(f"Energy became non-finite at iteration {iteration}", checkpoint_path or "")
        rows.append({"iteration": iteration, "energy": energy, "delta_c": delta_c,
                     "stage": stage_index, "wall_time": time.time() - start_time})
        if energy < best_energy:
            best_energy = energy
            best_theta = state.theta.copy()
        if checkpoint_path:
            write_checkpoint(checkpoint_path, state, stage_index, best_energy, best_theta)
        if verbose:
            print(f"   📍 iter {iteration:5d} | stage {stage_index} | δc={delta_c:.0e} | E = {energy:.6f}")

    iteration = 0
    for stage_index, stage in enumerate(schedule.stages):
        state = state.with_eta(stage.eta if stage.eta is not None else base_eta)
        cost = counted(make_cost(simulator, circuit, observable, stage.delta_c))
        if iteration == 0:
            record(0, stage_index, stage.delta_c, cost)
        for _ in range(stage.iterations):
            try:
                state = spsa_adam_step(cost, state, rng)
            except FloatingPointError as e:
                raise TrainingAborted(f"{e} at iteration {iteration + 1}", checkpoint_path or "") from e
            iteration += 1
            if iteration % record_every == 0 or iteration == schedule.total_iterations:
                record(iteration, stage_index, stage.delta_c, cost)

    train_delta_c = schedule.stages[-1].delta_c
    energy_train = float(make_cost(simulator, circuit, observable, train_delta_c)(best_theta))
    energy_report = float(make_cost(simulator, circuit, observable, report_delta_c)(best_theta))
    cost_calls += 2
    wall_time = time.time() - start_time

    trace = pd.DataFrame(rows, columns=["iteration", "energy", "delta_c", "stage", "wall_time"])
    if trace_path:
        try:
            trace.to_csv(trace_path, index=False)
        except OSError as e:
            print(f"⚠️ Warning: could not write trace to {trace_path}: {e}")

    if verbose:
        print(f"✅ Training done in {wall_time:.1f}s | E(δc={train_delta_c:.0e}) = {energy_train:.6f}"
              f" | E(δc={report_delta_c:.0e}) = {energy_report:.6f}")

    return TrainResult(
        theta=state.theta,
        best_theta=best_theta,
        best_energy=float(best_energy),
        energy_train=energy_train,
        energy_report=energy_report,
        train_delta_c=train_delta_c,
        report_delta_c=report_delta_c,
        iterations=iteration,
        cost_calls=cost_calls,
        wall_time=wall_time,
        trace=trace,
        checkpoint_path=checkpoint_path or "",
    )
