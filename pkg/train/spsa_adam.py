"""
SPSA gradient estimates fed into ADAM updates.

The perturbation direction is drawn uniformly from the cube [-1, 1]^p and
rescaled to length delta, which gives smoother optimization than the usual
random +-1 signs.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Callable, Dict, Optional

import numpy as np

from utils.exceptions import DimensionError, ParameterError


ETA = 0.001
DELTA = 0.005
BETA1 = 0.9
BETA2 = 0.999
EPS = 1e-5
EVEN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class Hyper:
    eta: float = ETA
    delta: float = DELTA
    beta1: float = BETA1
    beta2: float = BETA2
    eps: float = EPS

    def __post_init__(self):
        if self.eta <= 0 or self.delta <= 0 or self.eps <= 0:
            raise ParameterError("eta, delta and eps must be positive")
        if not (0.0 <= self.beta1 < 1.0 and 0.0 <= self.beta2 < 1.0):
            raise ParameterError(f"betas must lie in [0, 1), got ({self.beta1}, {self.beta2})")


@dataclass(frozen=True)
class OptimizerState:
    """Parameters plus ADAM momentum m, velocity v and step count t."""

    theta: np.ndarray
    m: np.ndarray
    v: np.ndarray
    t: int = 0
    hyper: Hyper = field(default_factory=Hyper)

    def __post_init__(self):
        if not (self.theta.shape == self.m.shape == self.v.shape):
            raise DimensionError(
                f"theta, m and v must have equal shapes, got {self.theta.shape}, {self.m.shape}, {self.v.shape}"
            )
        if self.t < 0:
            raise ParameterError(f"Step count must be >= 0, got {self.t}")
        if np.any(self.v < 0):
            raise ParameterError("Velocity must be elementwise non-negative")

    @classmethod
    def initial(cls, theta: np.ndarray, hyper: Optional[Hyper] = None) -> "OptimizerState":
        theta = np.asarray(theta, dtype=np.float64).copy()
        return cls(theta, np.zeros_like(theta), np.zeros_like(theta), 0, hyper or Hyper())

    def with_eta(self, eta: float) -> "OptimizerState":
        return replace(self, hyper=replace(self.hyper, eta=eta))

    def to_dict(self) -> Dict[str, Any]:
        return {"theta": self.theta.tolist(), "m": self.m.tolist(), "v": self.v.tolist(), "t": self.t}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], hyper: Optional[Hyper] = None) -> "OptimizerState":
        return cls(
            np.asarray(data["theta"], dtype=np.float64),
            np.asarray(data["m"], dtype=np.float64),
            np.asarray(data["v"], dtype=np.float64),
            int(data["t"]),
            hyper or Hyper(),
        )


def sample_direction(rng: np.random.Generator, p: int, delta: float = DELTA) -> np.ndarray:
    """
    Random perturbation of Euclidean length delta.

    Args:
        rng: Seeded generator
        p: Number of parameters
        delta: Perturbation length

    Returns:
        delta * chi / |chi| with chi uniform on [-1, 1]^p
    """
    if p < 1:
        raise ParameterError(f"Need at least one parameter, got p={p}")
    if delta <= 0:
        raise ParameterError(f"Perturbation length must be positive, got {delta}")
    chi = rng.uniform(-1.0, 1.0, size=p)
    norm = np.linalg.norm(chi)
    while norm == 0.0:
        chi = rng.uniform(-1.0, 1.0, size=p)
        norm = np.linalg.norm(chi)
    return delta * chi / norm


def spsa_gradient(cost: Callable[[np.ndarray], float], theta: np.ndarray, direction: np.ndarray,
                  one_sided_fallback: bool = False) -> np.ndarray:
    """
    Two-point gradient estimate along one direction.

    G = [C(theta + d) - C(theta - d)] / (2 |d|) * d / |d|

    so that G is the directional derivative times the unit direction.
    Exactly two cost evaluations are made, unless one_sided_fallback is set
    and the two values agree: then theta sits where the cost is even along
    d (theta = 0 for the Hamiltonian variational circuits) and a third
    evaluation gives the one-sided estimate [C(theta + d) - C(theta)] / |d|.
    """
    theta = np.asarray(theta, dtype=np.float64)
    direction = np.asarray(direction, dtype=np.float64)
    if direction.shape != theta.shape:
        raise DimensionError(f"Direction shape {direction.shape} does not match theta {theta.shape}")
    delta = float(np.linalg.norm(direction))
    if delta == 0.0:
        raise ParameterError("Perturbation direction must be non-zero")

    plus = float(cost(theta + direction))
    minus = float(cost(theta - direction))
    if not (np.isfinite(plus) and np.isfinite(minus)):
        raise FloatingPointError(f"Cost returned a non-finite value ({plus}, {minus})")
    if one_sided_fallback and abs(plus - minus) <= EVEN_TOLERANCE * max(1.0, abs(plus), abs(minus)):
        base = float(cost(theta))
        if not np.isfinite(base):
            raise FloatingPointError(f"Cost returned a non-finite value ({base})")
        return (plus - base) / delta * direction / delta
    return (plus - minus) / (2.0 * delta) * direction / delta


def adam_update(state: OptimizerState, g: np.ndarray) -> OptimizerState:
    """One bias-corrected ADAM step; every operation is elementwise."""
    g = np.asarray(g, dtype=np.float64)
    if g.shape != state.theta.shape:
        raise DimensionError(f"Gradient shape {g.shape} does not match theta {state.theta.shape}")
    h = state.hyper
    t = state.t + 1
    m = h.beta1 * state.m + (1.0 - h.beta1) * g
    v = h.beta2 * state.v + (1.0 - h.beta2) * (g * g)
    m_hat = m / (1.0 - h.beta1 ** t)
    v_hat = v / (1.0 - h.beta2 ** t)
    theta = state.theta - h.eta * m_hat / (np.sqrt(v_hat) + h.eps)
    return OptimizerState(theta, m, v, t, h)


def spsa_adam_step(cost: Callable[[np.ndarray], float], state: OptimizerState,
                   rng: np.random.Generator) -> OptimizerState:
    direction = sample_direction(rng, state.theta.size, state.hyper.delta)
    return adam_update(state, spsa_gradient(cost, state.theta, direction, one_sided_fallback=True))
