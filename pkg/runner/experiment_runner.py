import os
import time
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from circuits.circuit import Circuit
from models.ansatz import ising_ansatz, kitaev_ansatz
from models.hamiltonians import Hamiltonian, build_hamiltonian, proxy_hamiltonian
from oracle.exact_energies import kitaev_ground_energy, reference_energy
from pauli.sparse_operator import SparseOperator
from runner.metrics import Metrics
from simulators.base_simulator import BaseSimulator
from simulators.pauli_path import PauliPathSimulator
from train.spsa_adam import Hyper
from train.trainer import Schedule, train
from utils.config import RunConfig
from utils.io import load_params, make_run_dir, package_versions, save_params, write_json


class ExperimentRunner:
    """
    Builds the model, ansatz and cost from a RunConfig and runs training
    or coupling sweeps, writing one self-describing directory per run.
    """

    def __init__(self, config: RunConfig, runs_dir: str = "runs", num_workers: int = 1, verbose: bool = True):
        self.config = config
        self.runs_dir = runs_dir
        self.num_workers = max(1, num_workers)
        self.verbose = verbose
        self.results: List[Dict[str, Any]] = []

    def _log(self, message: str) -> None:
        if self.verbose:
            print(message)

    def build_hamiltonian(self, config: Optional[RunConfig] = None) -> Hamiltonian:
        m = (config or self.config).model
        return build_hamiltonian(m.model, m.nx or 0, m.ny, gx=m.gx, gz=m.gz, jx=m.jx, jy=m.jy, jz=m.jz)

    def build_ansatz(self, hamiltonian: Hamiltonian, config: Optional[RunConfig] = None) -> Circuit:
        reps = (config or self.config).ansatz.reps
        lattice = hamiltonian.lattice
        if hamiltonian.model == "kitaev":
            return kitaev_ansatz(lattice.nx, lattice.ny, reps)
        return ising_ansatz(lattice, reps)

    def cost_operator(self, hamiltonian: Hamiltonian, config: Optional[RunConfig] = None) -> SparseOperator:
        if (config or self.config).model.use_proxy:
            return proxy_hamiltonian(hamiltonian).operator
        return hamiltonian.operator

    def schedule(self, config: Optional[RunConfig] = None) -> Schedule:
        s = (config or self.config).schedule
        return Schedule.from_lists(s.iterations, s.delta_c, s.eta)

    def hyper(self, config: Optional[RunConfig] = None) -> Hyper:
        o = (config or self.config).optimizer
        return Hyper(eta=o.eta, delta=o.delta, beta1=o.beta1, beta2=o.beta2, eps=o.eps)

    def simulator(self, delta_c: float = 1e-3) -> BaseSimulator:
        return PauliPathSimulator(delta_c=delta_c, num_workers=self.num_workers, record_trace=False)

    def _write_run_info(self, run_dir: str, config: RunConfig, extra: Optional[Dict[str, Any]] = None) -> None:
        config.write(os.path.join(run_dir, "config.cfg"))
        info = {
            "seed": config.optimizer.seed,
            "num_workers": self.num_workers,
            "started": time.strftime("%Y-%m-%dT%H:%M:%S"),
            "versions": package_versions(),
        }
        info.update(extra or {})
        write_json(os.path.join(run_dir, "run_info.json"), info)

    def run_training(self, config: Optional[RunConfig] = None, warm_start: Optional[np.ndarray] = None,
                     run_dir: Optional[str] = None) -> Dict[str, Any]:
        """
        Train one configuration and write its run directory.

        Returns:
            Report dictionary (also written as report.json)
        """
        config = config or self.config
        hamiltonian = self.build_hamiltonian(config)
        circuit = self.build_ansatz(hamiltonian, config)
        cost_op = self.cost_operator(hamiltonian, config)

        if warm_start is None and config.optimizer.warm_start:
            warm_start = load_params(config.optimizer.warm_start, circuit.param_count)

        run_dir = run_dir or make_run_dir(self.runs_dir, hamiltonian.model)
        os.makedirs(run_dir, exist_ok=True)
        self._write_run_info(run_dir, config, {"warm_start": warm_start is not None})

        self._log(f"🚀 Training {hamiltonian.model} on {circuit.n} qubits | {circuit.param_count} parameters"
                  f" | {len(cost_op)} cost terms | couplings {hamiltonian.couplings}")
        result = train(
            circuit,
            cost_op,
            self.schedule(config),
            seed=config.optimizer.seed,
            warm_start=warm_start,
            hyper=self.hyper(config),
            simulator=self.simulator(),
            report_delta_c=config.report.delta_c,
            record_every=config.optimizer.record_every,
            checkpoint_path=os.path.join(run_dir, "checkpoint.json"),
            trace_path=os.path.join(run_dir, "trace.csv"),
            verbose=self.verbose,
        )

        report: Dict[str, Any] = {"model": hamiltonian.model, "couplings": hamiltonian.couplings,
                                  "sites": hamiltonian.sites, "reps": config.ansatz.reps,
                                  "use_proxy": config.model.use_proxy}
        report.update(result.to_dict())
        report["undershoot"] = Metrics.truncation_undershoot(result.energy_train, result.energy_report)

        if config.model.use_proxy:
            report["energy_full_report"] = self.simulator().expectation(
                circuit, hamiltonian.operator, result.best_theta, delta_c=config.report.delta_c
            )

        exact = reference_energy(hamiltonian) if config.report.oracle else None
        report["exact"] = exact
        if exact is not None and hamiltonian.model == "kitaev" and hamiltonian.couplings["jz"] != 0.0:
            c = hamiltonian.couplings
            report["exact_all_sectors"] = kitaev_ground_energy(hamiltonian.lattice.nx, hamiltonian.lattice.ny,
                                                               c["jx"], c["jy"], c["jz"])
        report["relative_error"] = Metrics.relative_error(result.energy_report, exact)
        report["below_ground_at_train_delta"] = Metrics.below_ground(result.energy_train, exact)

        save_params(os.path.join(run_dir, "params.json"), result.best_theta, model=hamiltonian.model,
                    couplings=hamiltonian.couplings, reps=config.ansatz.reps)
        write_json(os.path.join(run_dir, "report.json"), report)
        report["run_dir"] = run_dir

        if exact is not None:
            self._log(f"📊 exact E0 = {exact:.6f} | relative error {report['relative_error']:.3%}")
        self.results.append(report)
        return report

    def run_sweep(self) -> pd.DataFrame:
        """
        Train every coupling of the sweep grid in order.

        With warm starts enabled each converged theta seeds the next point.
        A failing point is recorded and the sweep moves on.
        """
        sweep = self.config.sweep
        if sweep is None:
            raise ValueError("Config has no [sweep] section")

        sweep_dir = make_run_dir(self.runs_dir, f"sweep-{self.config.model.model}")
        self._write_run_info(sweep_dir, self.config, {"sweep_values": sweep.values})
        rows = []
        theta: Optional[np.ndarray] = None

        for index, value in enumerate(sweep.values):
            config = self.config.with_coupling(sweep.parameter, value)
            point_dir = os.path.join(sweep_dir, f"point_{index:03d}_{sweep.parameter}_{value:g}")
            self._log(f"\n📍 Sweep point {index + 1}/{len(sweep.values)}: {sweep.parameter} = {value:g}")
            warm = theta if sweep.warm_start else None
            try:
                report = self.run_training(config, warm_start=warm, run_dir=point_dir)
            except Exception as e:
                print(f"❌ Error at {sweep.parameter} = {value:g}: {e}")
                rows.append({"coupling": value, "error": str(e), "warm_start": warm is not None})
                continue
            theta = np.asarray(report["theta"], dtype=np.float64)
            rows.append({
                "coupling": value,
                "energy_train": report["energy_train"],
                "energy_report": report["energy_report"],
                "exact": report["exact"],
                "relative_error": report["relative_error"],
                "iterations": report["iterations"],
                "wall_time": report["wall_time"],
                "warm_start": warm is not None,
                "error": "",
            })

        frame = pd.DataFrame(rows)
        frame.to_csv(os.path.join(sweep_dir, "sweep.csv"), index=False)
        self._log(f"✅ Sweep written to {sweep_dir}")
        return frame

    def print_summary(self) -> None:
        """Print a summary of the runs made by this runner."""
        if not self.results:
            print("No results available. Run run_training() first.")
            return

        df = pd.DataFrame(self.results)
        print("\n" + "=" * 60)
        print("TRAINING SUMMARY")
        print("=" * 60)
        columns = [c for c in ("model", "energy_train", "energy_report", "exact", "relative_error", "wall_time")
                   if c in df.columns]
        print(df[columns].round(6).to_string(index=False))
