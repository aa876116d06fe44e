"""
Run configuration: sectioned key/value files validated by pydantic.

Example (configs/tfim_n12.cfg):

    [model]
    model = tfim1d
    nx = 12
    gx = 1.0

    [ansatz]
    reps = 6

    [schedule]
    iterations = 2000
    delta_c = 1e-4
"""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from utils.exceptions import ConfigError


ModelKind = Literal["tfim1d", "ising_square", "ising_heavyhex", "kitaev"]
SweepParameter = Literal["gx", "gz", "j"]

SECTIONS = ("model", "ansatz", "optimizer", "schedule", "report", "sweep")


def _split_list(value: Any) -> Any:
    if isinstance(value, str):
        return [item.strip() for item in value.split(",") if item.strip()]
    return value


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModelSection(_Section):
    model: ModelKind
    nx: Optional[int] = Field(default=None, ge=3)
    ny: int = Field(default=1, ge=1)
    gx: float = 0.0
    gz: float = 0.0
    jx: float = 0.0
    jy: float = 0.0
    jz: float = 1.0
    use_proxy: bool = False

    @model_validator(mode="after")
    def check_dimensions(self) -> "ModelSection":
        if self.model != "ising_heavyhex" and self.nx is None:
            raise ValueError(f"nx is required for model '{self.model}'")
        if self.model in ("ising_square", "kitaev") and self.ny < 3:
            raise ValueError(f"ny is required for model '{self.model}'")
        if self.use_proxy and self.model == "ising_heavyhex":
            raise ValueError("the heavy-hex lattice has no proxy Hamiltonian")
        return self


class AnsatzSection(_Section):
    reps: int = Field(..., ge=1)


class OptimizerSection(_Section):
    eta: float = Field(default=0.001, gt=0)
    delta: float = Field(default=0.005, gt=0)
    beta1: float = Field(default=0.9, ge=0, lt=1)
    beta2: float = Field(default=0.999, ge=0, lt=1)
    eps: float = Field(default=1e-5, gt=0)
    seed: int = 0
    record_every: int = Field(default=10, ge=1)
    warm_start: Optional[str] = None


class ScheduleSection(_Section):
    iterations: List[int] = Field(..., min_length=1)
    delta_c: List[float] = Field(..., min_length=1)
    eta: Optional[List[float]] = None

    @field_validator("iterations", "delta_c", "eta", mode="before")
    @classmethod
    def normalize_lists(cls, value):
        return _split_list(value)

    @model_validator(mode="after")
    def check_lengths(self) -> "ScheduleSection":
        if len(self.iterations) != len(self.delta_c):
            raise ValueError("iterations and delta_c must list the same number of stages")
        if self.eta is not None and len(self.eta) != len(self.iterations):
            raise ValueError("eta must list one value per stage")
        return self


class ReportSection(_Section):
    delta_c: float = Field(default=1e-4, ge=0)
    oracle: bool = True


class SweepSection(_Section):
    parameter: SweepParameter
    values: List[float] = Field(..., min_length=1)
    warm_start: bool = True

    @field_validator("values", mode="before")
    @classmethod
    def normalize_values(cls, value):
        return _split_list(value)


class RunConfig(_Section):
    model: ModelSection
    ansatz: AnsatzSection
    optimizer: OptimizerSection = Field(default_factory=OptimizerSection)
    schedule: ScheduleSection
    report: ReportSection = Field(default_factory=ReportSection)
    sweep: Optional[SweepSection] = None

    def with_coupling(self, parameter: str, value: float) -> "RunConfig":
        """Copy with one coupling replaced; 'j' sets jx and jy together."""
        updates = {"jx": value, "jy": value} if parameter == "j" else {parameter: value}
        model = self.model.model_copy(update=updates)
        return self.model_copy(update={"model": model})

    def to_sections(self) -> Dict[str, Dict[str, str]]:
        sections: Dict[str, Dict[str, str]] = {}
        for name in SECTIONS:
            section = getattr(self, name)
            if section is None:
                continue
            values = {}
            for key, value in section.model_dump().items():
                if value is None:
                    continue
                values[key] = ", ".join(str(v) for v in value) if isinstance(value, list) else str(value)
            sections[name] = values
        return sections

    def write(self, path: str) -> None:
        parser = configparser.ConfigParser()
        parser.read_dict(self.to_sections())
        with open(path, "w") as f:
            parser.write(f)


def _format_error(error: ValidationError) -> str:
    messages = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "config"
        messages.append(f"{location}: {item['msg']}")
    return "; ".join(messages)


def parse_config(data: Dict[str, Dict[str, Any]]) -> RunConfig:
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(_format_error(e)) from e


def load_config(path: str) -> RunConfig:
    """
    Read and validate a run configuration file.

    Raises:
        ConfigError: unreadable file, unknown section, or a schema violation
            (the message names the dotted field path, e.g. ``ansatz.reps``)
    """
    parser = configparser.ConfigParser()
    try:
        with open(path, "r") as f:
            parser.read_file(f)
    except (OSError, configparser.Error) as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e

    unknown = [name for name in parser.sections() if name not in SECTIONS]
    if unknown:
        raise ConfigError(f"Unknown config section(s): {', '.join(unknown)}")
    return parse_config({name: dict(parser.items(name)) for name in parser.sections()})


@dataclass(frozen=True)
class EnvSettings:
    num_workers: int = 1
    runs_dir: str = "runs"
    run_slow: bool = False


def env_settings() -> EnvSettings:
    """Environment defaults (PPS_NUM_WORKERS, PPS_RUNS_DIR, PPS_RUN_SLOW); call load_dotenv() first."""
    try:
        num_workers = max(1, int(os.getenv("PPS_NUM_WORKERS", "1")))
    except ValueError as e:
        raise ConfigError(f"PPS_NUM_WORKERS must be an integer: {e}") from e
    return EnvSettings(
        num_workers=num_workers,
        runs_dir=os.getenv("PPS_RUNS_DIR", "runs"),
        run_slow=os.getenv("PPS_RUN_SLOW", "") == "1",
    )
