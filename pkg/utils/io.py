from __future__ import annotations

import json
import os
import platform
import time
from importlib import metadata
from typing import Any, Dict, Optional, Sequence

import numpy as np

from utils.exceptions import DimensionError


_TRACKED_PACKAGES = ("numpy", "scipy", "pandas", "networkx", "joblib", "pydantic", "python-dotenv")


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer)):
        return value.item()
    if isinstance(value, complex):
        return {"real": value.real, "imag": value.imag}
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def write_json(path: str, payload: Dict[str, Any]) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as f:
        json.dump(payload, f, indent=2, default=_to_jsonable)


def read_json(path: str) -> Dict[str, Any]:
    with open(path, "r") as f:
        return json.load(f)


def save_params(path: str, theta: Sequence[float], **info: Any) -> None:
    """Parameter file: {"theta": [...], ...extra fields}."""
    write_json(path, {"theta": [float(t) for t in theta], **info})


def load_params(path: str, expected: Optional[int] = None) -> np.ndarray:
    """
    Read theta from a parameter file (a params or checkpoint JSON).

    Args:
        path: JSON file with a "theta" list (or "best_theta" for checkpoints)
        expected: Required parameter count, checked when given
    """
    data = read_json(path)
    theta = np.asarray(data.get("best_theta", data.get("theta")), dtype=np.float64).reshape(-1)
    if expected is not None and theta.size != expected:
        raise DimensionError(f"{path} holds {theta.size} parameters, the circuit needs {expected}")
    return theta


def package_versions() -> Dict[str, str]:
    versions = {"python": platform.python_version()}
    for name in _TRACKED_PACKAGES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = "not installed"
    return versions


def make_run_dir(root: str, label: str) -> str:
    """runs/<label>-<timestamp>, made unique with a numeric suffix if needed."""
    stamp = time.strftime("%Y%m%d-%H%M%S")
    path = os.path.join(root, f"{label}-{stamp}")
    candidate, suffix = path, 1
    while os.path.exists(candidate):
        candidate = f"{path}-{suffix}"
        suffix += 1
    os.makedirs(candidate)
    return candidate
