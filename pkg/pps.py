#!/usr/bin/env python3
"""
Pauli path simulation toolkit: variational training, evaluation and
measurements for spin-lattice models.

Usage:
    python pps.py train configs/tfim_n12.cfg
    python pps.py sweep configs/tfim_sweep.cfg
    python pps.py evaluate configs/tfim_n12.cfg --params runs/<run>/params.json --simulator statevector
    python pps.py evaluate configs/tfim_n12.cfg --params runs/<run>/params.json --simulator pauli_path statevector
    python pps.py observables configs/kitaev_8x6_j03.cfg --params <params.json>
    python pps.py tomography configs/kitaev_8x6_j03.cfg --params <params.json> --tee
    python pps.py braid configs/kitaev_8x6_j03.cfg --params data/params/kitaev_8x6_fixed_point.json
    python pps.py oracle kitaev 8 6 0.3 0.3 1.0
    python pps.py export-qasm configs/tfim_n12.cfg --params <params.json> --output circuit.qasm
"""

import argparse
import os
import sys
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from dotenv import load_dotenv

from circuits.circuit import Circuit
from circuits.qasm import to_qasm
from measure.observables import correlation_profile, observable_report
from measure.tomography import (
    assemble,
    coefficient_frame,
    default_regions,
    entropy_terms,
    pauli_coefficients,
    von_neumann_entropy,
)
from models.hamiltonians import Hamiltonian
from oracle.exact_energies import (
    exact_kitaev_energy,
    exact_tfim_energy,
    kitaev_ground_energy,
    kitaev_physical_energies,
    kitaev_sector_energies,
    reference_energy,
)
from runner.experiment_runner import ExperimentRunner
from simulators.pauli_path import PauliPathSimulator
from topo.braiding import BRAID_KINDS, braid_qasm, braid_spec, braiding_phase
from utils.config import EnvSettings, RunConfig, env_settings, load_config
from utils.exceptions import TrainingAborted
from utils.io import load_params, write_json
from utils.simulator_factory import default_simulator_slugs, instantiate_simulators


def _setup(config_path: str, settings: EnvSettings, workers: Optional[int] = None,
           verbose: bool = True) -> Tuple[RunConfig, ExperimentRunner]:
    config = load_config(config_path)
    runner = ExperimentRunner(config, runs_dir=settings.runs_dir,
                              num_workers=workers or settings.num_workers, verbose=verbose)
    return config, runner


def _model_and_theta(runner: ExperimentRunner, params: Optional[str]) -> Tuple[Hamiltonian, Circuit, np.ndarray]:
    hamiltonian = runner.build_hamiltonian()
    circuit = runner.build_ansatz(hamiltonian)
    if params:
        theta = load_params(params, circuit.param_count)
        print(f"✓ Loaded {theta.size} parameters from {params}")
    else:
        theta = np.zeros(circuit.param_count)
        print("⚠️ Warning: no --params given, evaluating at theta = 0")
    return hamiltonian, circuit, theta


def _emit(payload: Dict[str, Any], output: Optional[str]) -> None:
    for key, value in payload.items():
        if isinstance(value, float):
            print(f"  {key}: {value:.10f}")
        else:
            print(f"  {key}: {value}")
    if output:
        write_json(output, payload)
        print(f"💾 Saved {output}")


def cmd_train(args: argparse.Namespace, settings: EnvSettings) -> None:
    config, runner = _setup(args.config, settings, args.workers)
    print(f"\n📍 Config: {args.config}")
    report = runner.run_training()
    print(f"\n{'=' * 60}")
    print("✅ TRAINING COMPLETE")
    print(f"{'=' * 60}")
    print(f"energy @ train delta  ({report['train_delta_c']:g}): {report['energy_train']:.8f}")
    print(f"energy @ report delta ({report['report_delta_c']:g}): {report['energy_report']:.8f}")
    if report.get("exact") is not None:
        print(f"exact ground energy:            {report['exact']:.8f}")
        print(f"relative error:                 {report['relative_error']:.4%}")
    print(f"Run directory: {report['run_dir']}")


def cmd_sweep(args: argparse.Namespace, settings: EnvSettings) -> None:
    config, runner = _setup(args.config, settings, args.workers)
    if config.sweep is None:
        raise ValueError(f"{args.config} has no [sweep] section")
    frame = runner.run_sweep()
    print(f"\n{'=' * 60}")
    print("📊 SWEEP SUMMARY")
    print(f"{'=' * 60}")
    print(frame.to_string(index=False))
    failed = int((frame["error"] != "").sum()) if "error" in frame.columns else 0
    if failed:
        print(f"⚠️ Warning: {failed} sweep point(s) failed")


def cmd_evaluate(args: argparse.Namespace, settings: EnvSettings) -> None:
    config, runner = _setup(args.config, settings, args.workers, verbose=False)
    hamiltonian, circuit, theta = _model_and_theta(runner, args.params)
    delta_c = args.delta_c if args.delta_c is not None else config.report.delta_c
    slugs = list(dict.fromkeys(args.simulator))
    simulators = instantiate_simulators(slugs, delta_c=delta_c, num_workers=runner.num_workers)
    operator = runner.cost_operator(hamiltonian)

    rows: List[Dict[str, Any]] = []
    for slug, simulator in zip(slugs, simulators):
        print(f"\n🔧 {simulator.name} on {circuit.n} qubits")
        value = simulator.expectation(circuit, operator, theta)
        rows.append({
            "simulator": slug,
            "energy": value,
            "delta_c": delta_c if isinstance(simulator, PauliPathSimulator) else 0.0,
            "run_time": simulator.get_run_time(),
        })

    first = rows[0]
    payload: Dict[str, Any] = {
        "simulator": first["simulator"],
        "model": hamiltonian.model,
        "energy": first["energy"],
        "energy_per_site": first["energy"] / hamiltonian.sites,
        "delta_c": first["delta_c"],
        "run_time": first["run_time"],
    }
    if len(rows) > 1:
        energies = [row["energy"] for row in rows]
        payload["comparison"] = rows
        payload["max_deviation"] = max(energies) - min(energies)
        print(f"📊 Back-ends differ by at most {payload['max_deviation']:.3e}")
    if config.report.oracle:
        payload["exact"] = reference_energy(hamiltonian)
    if args.trace:
        engines = [s for s in simulators if isinstance(s, PauliPathSimulator)]
        if engines:
            engines[0].engine_stats().write_csv(args.trace)
            print(f"💾 Engine trace: {args.trace}")
        else:
            print("⚠️ Warning: --trace only applies to the pauli_path simulator")
    _emit(payload, args.output)


def cmd_observables(args: argparse.Namespace, settings: EnvSettings) -> None:
    config, runner = _setup(args.config, settings, args.workers, verbose=False)
    hamiltonian, circuit, theta = _model_and_theta(runner, args.params)
    delta_c = args.delta_c if args.delta_c is not None else config.report.delta_c

    print(f"\n📊 Observables of {hamiltonian.model} at delta_c = {delta_c:g}")
    report = observable_report(circuit, theta, hamiltonian, delta_c, runner.num_workers)
    os.makedirs(args.output_dir, exist_ok=True)
    report["bonds"].to_csv(os.path.join(args.output_dir, "bonds.csv"), index=False)
    if "fluxes" in report:
        report["fluxes"].to_csv(os.path.join(args.output_dir, "fluxes.csv"), index=False)
    if hamiltonian.model == "tfim1d":
        profile = correlation_profile(circuit, theta, "Z", delta_c, runner.num_workers)
        profile.to_csv(os.path.join(args.output_dir, "correlations.csv"), index=False)

    summary = {key: value for key, value in report.items() if key not in ("bonds", "fluxes")}
    _emit(summary, os.path.join(args.output_dir, "observables.json"))


def _parse_sites(text: str) -> List[int]:
    return [int(item) for item in text.split(",") if item.strip()]


def cmd_tomography(args: argparse.Namespace, settings: EnvSettings) -> None:
    config, runner = _setup(args.config, settings, args.workers, verbose=False)
    hamiltonian, circuit, theta = _model_and_theta(runner, args.params)
    delta_c = args.delta_c if args.delta_c is not None else config.report.delta_c

    if args.tee:
        a, b, c = default_regions(hamiltonian.lattice.nx)
        print(f"\n🔬 Topological entropy with A={a}, B={b}, C={c}")
        terms = entropy_terms(circuit, theta, a, b, c, delta_c, runner.num_workers)
        s_topo = terms["A"] + terms["B"] + terms["C"] - terms["AB"] - terms["AC"] - terms["BC"] + terms["ABC"]
        _emit({**{f"S_{name}": value for name, value in terms.items()}, "S_topo": s_topo}, args.output)
        return

    if not args.sites:
        raise ValueError("tomography needs --sites or --tee")
    region = _parse_sites(args.sites)
    print(f"\n🔬 Tomography of region {region} ({4 ** len(region)} Pauli expectations)")
    coefficients = pauli_coefficients(circuit, theta, region, delta_c, runner.num_workers)
    rho = assemble(region, coefficients)
    if args.coefficients:
        coefficient_frame(region, coefficients).to_csv(args.coefficients, index=False)
        print(f"💾 Coefficients: {args.coefficients}")
    _emit({"region": region, "trace": rho.trace, "hermitian": rho.is_hermitian(),
           "entropy": von_neumann_entropy(rho)}, args.output)


def cmd_braid(args: argparse.Namespace, settings: EnvSettings) -> None:
    config, runner = _setup(args.config, settings, args.workers, verbose=False)
    hamiltonian, circuit, theta = _model_and_theta(runner, args.params)
    if hamiltonian.model != "kitaev":
        raise ValueError(f"Braiding needs a kitaev model, got '{hamiltonian.model}'")
    lattice = hamiltonian.lattice
    delta_c = args.delta_c if args.delta_c is not None else config.report.delta_c

    kinds = BRAID_KINDS if args.kind == "all" else (args.kind,)
    payload: Dict[str, Any] = {}
    print(f"\n🌀 Braiding phases at delta_c = {delta_c:g}")
    for kind in kinds:
        spec = braid_spec(kind, lattice.nx, lattice.ny)
        phase = braiding_phase(circuit, theta, spec, delta_c, runner.num_workers)
        payload[kind] = {"real": phase.real, "imag": phase.imag}
        print(f"  {kind}: {phase.real:+.8f} {phase.imag:+.8f}i")
    if args.output:
        write_json(args.output, payload)
        print(f"💾 Saved {args.output}")


def cmd_oracle(args: argparse.Namespace, settings: EnvSettings) -> None:
    values = args.values
    if args.model == "kitaev":
        if len(values) != 5:
            raise ValueError("oracle kitaev expects: nx ny jx jy jz")
        nx, ny = int(values[0]), int(values[1])
        jx, jy, jz = values[2:]
        energy = exact_kitaev_energy(nx, ny, jx, jy, jz)
        payload: Dict[str, Any] = {"model": "kitaev", "nx": nx, "ny": ny, "jx": jx, "jy": jy, "jz": jz,
                                   "energy": energy, "sectors": kitaev_sector_energies(nx, ny, jx, jy, jz)}
        if jz != 0.0:
            payload["ground_energy"] = kitaev_ground_energy(nx, ny, jx, jy, jz)
            payload["physical_sectors"] = kitaev_physical_energies(nx, ny, jx, jy, jz)
    elif args.model == "tfim1d":
        if len(values) != 2:
            raise ValueError("oracle tfim1d expects: n gx")
        n, gx = int(values[0]), values[1]
        energy = exact_tfim_energy(n, gx)
        payload = {"model": "tfim1d", "n": n, "gx": gx, "energy": energy, "energy_per_site": energy / n}
    else:
        raise ValueError(f"Unknown oracle model '{args.model}'")
    print("\n🧮 Exact ground energy")
    _emit(payload, args.output)


def cmd_export_qasm(args: argparse.Namespace, settings: EnvSettings) -> None:
    config, runner = _setup(args.config, settings, args.workers, verbose=False)
    hamiltonian, circuit, theta = _model_and_theta(runner, args.params)
    if args.braid:
        lattice = hamiltonian.lattice
        text = braid_qasm(circuit, theta, braid_spec(args.braid, lattice.nx, lattice.ny), args.basis)
    else:
        text = to_qasm(circuit, theta, comments=[f"{hamiltonian.model} ansatz, {config.ansatz.reps} reps"])
    with open(args.output, "w") as f:
        f.write(text)
    print(f"💾 Saved {args.output} ({text.count(chr(10))} lines)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Pauli path simulation for variational spin-model studies")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_config(name: str, help_text: str, params: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("config", help="Run configuration file")
        p.add_argument("--workers", type=int, default=None, help="Worker threads (default: PPS_NUM_WORKERS)")
        if params:
            p.add_argument("--params", default=None, help="Parameter JSON (params.json or checkpoint.json)")
            p.add_argument("--delta-c", type=float, default=None, help="Truncation threshold (default: report delta_c)")
        return p

    with_config("train", "Train the ansatz of a config", params=False).set_defaults(func=cmd_train)
    with_config("sweep", "Train a coupling grid with warm starts", params=False).set_defaults(func=cmd_sweep)

    p = with_config("evaluate", "Evaluate the energy of a parameter file")
    p.add_argument("--simulator", nargs="+", default=["pauli_path"], choices=default_simulator_slugs(),
                   help="One back-end, or several to compare their energies")
    p.add_argument("--trace", default=None, help="Write the per-gate engine trace CSV here")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_evaluate)

    p = with_config("observables", "Bond expectations, magnetization and fluxes")
    p.add_argument("--output-dir", default="observables")
    p.set_defaults(func=cmd_observables)

    p = with_config("tomography", "Reduced density matrix and entropies")
    p.add_argument("--sites", default=None, help="Comma-separated region, e.g. 0,1,8")
    p.add_argument("--tee", action="store_true", help="Topological entanglement entropy on the default regions")
    p.add_argument("--coefficients", default=None, help="Write the Pauli coefficient CSV here")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_tomography)

    p = with_config("braid", "Braiding phases of the Kitaev anyons")
    p.add_argument("--kind", default="all", choices=("all",) + tuple(BRAID_KINDS))
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_braid)

    p = sub.add_parser("oracle", help="Exact ground energy (kitaev nx ny jx jy jz | tfim1d n gx)")
    p.add_argument("model", choices=("kitaev", "tfim1d"))
    p.add_argument("values", type=float, nargs="+")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_oracle)

    p = with_config("export-qasm", "Write the bound circuit as OpenQASM 2.0")
    p.add_argument("--output", required=True)
    p.add_argument("--braid", default=None, choices=tuple(BRAID_KINDS), help="Export the braiding interferometer")
    p.add_argument("--basis", default="x", choices=("x", "y"), help="Ancilla read-out basis for --braid")
    p.set_defaults(func=cmd_export_qasm)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    load_dotenv()
    args = build_parser().parse_args(argv)
    try:
        settings = env_settings()
        args.func(args, settings)
    except TrainingAborted as e:
        print(f"❌ Error: {e}")
        if e.checkpoint_path:
            print(f"   Last checkpoint: {e.checkpoint_path}")
        return 1
    except (ValueError, TypeError, OSError, RuntimeError, AssertionError) as e:
        print(f"❌ Error: {e}")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
