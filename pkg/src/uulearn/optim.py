"""First-order stochastic optimizers.

Two kinds, matching common training setups: SGD with classical momentum and
Adam with bias-corrected moments.  Weight decay is implemented as L2 added
to the gradient before any momentum/moment accumulation (classic coupling,
not decoupled).

A step consumes the gradients accumulated by the latest backward pass and
then zeroes them; calling ``optimizer_step`` again without a fresh backward
pass is a no-op, so weight decay cannot be applied twice for one gradient.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, TrainingFault
from .models import Model

__all__ = ["SgdMomentumConfig", "AdamConfig", "OptimizerState", "optimizer_init", "optimizer_step"]


@dataclass(frozen=True)
class SgdMomentumConfig:
    lr: float
    momentum: float = 0.9
    weight_decay: float = 0.0

    def __post_init__(self):
        _require(self.lr > 0.0, f"lr must be positive, got {self.lr}")
        _require(0.0 <= self.momentum < 1.0, f"momentum must lie in [0, 1), got {self.momentum}")
        _require(self.weight_decay >= 0.0, f"weight_decay must be >= 0, got {self.weight_decay}")


@dataclass(frozen=True)
class AdamConfig:
    lr: float
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    weight_decay: float = 0.0

    def __post_init__(self):
        _require(self.lr > 0.0, f"lr must be positive, got {self.lr}")
        _require(0.0 <= self.beta1 < 1.0, f"beta1 must lie in [0, 1), got {self.beta1}")
        _require(0.0 <= self.beta2 < 1.0, f"beta2 must lie in [0, 1), got {self.beta2}")
        _require(self.epsilon > 0.0, f"epsilon must be positive, got {self.epsilon}")
        _require(self.weight_decay >= 0.0, f"weight_decay must be >= 0, got {self.weight_decay}")


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigurationError(message)


@dataclass
class OptimizerState:
    """Slot buffers shaped like the model parameters."""

    config: object
    velocities: list = field(default_factory=list)   # sgd
    first_moments: list = field(default_factory=list)  # adam
    second_moments: list = field(default_factory=list)  # adam
    step_count: int = 0


def optimizer_init(config, model: Model) -> OptimizerState:
    """Zero-initialized state bound to the given model's parameter shapes."""
    state = OptimizerState(config=config)
    params = list(model.parameters())
    if isinstance(config, SgdMomentumConfig):
        state.velocities = [np.zeros_like(p) for p in params]
    elif isinstance(config, AdamConfig):
        state.first_moments = [np.zeros_like(p) for p in params]
        state.second_moments = [np.zeros_like(p) for p in params]
    else:
        raise ConfigurationError(f"unknown optimizer config: {type(config).__name__}")
    return state


def optimizer_step(state: OptimizerState, model: Model) -> None:
    """Update parameters in place from the accumulated gradients, then zero
    the gradients.  No-op when no backward pass has run since the last step.
    """
    if not model.grads_fresh:
        return
    params = list(model.parameters())
    grads = list(model.gradients())
    for g in grads:
        if not np.all(np.isfinite(g)):
            raise TrainingFault("non-finite gradient encountered")

    cfg = state.config
    if isinstance(cfg, SgdMomentumConfig):
        for p, g, v in zip(params, grads, state.velocities):
            v *= cfg.momentum
            v += g + cfg.weight_decay * p
            p -= cfg.lr * v
    elif isinstance(cfg, AdamConfig):
        state.step_count += 1
        t = state.step_count
        bias1 = 1.0 - cfg.beta1**t
        bias2 = 1.0 - cfg.beta2**t
        for p, g, m, v in zip(params, grads, state.first_moments, state.second_moments):
            g_eff = g + cfg.weight_decay * p
            m *= cfg.beta1
            m += (1.0 - cfg.beta1) * g_eff
            v *= cfg.beta2
            v += (1.0 - cfg.beta2) * g_eff * g_eff
            p -= cfg.lr * (m / bias1) / (np.sqrt(v / bias2) + cfg.epsilon)
    else:  # pragma: no cover - init already rejects unknown configs
        raise ConfigurationError(f"unknown optimizer config: {type(cfg).__name__}")

    for p in params:
        if not np.all(np.isfinite(p)):
            raise TrainingFault("parameters became non-finite after optimizer step")
    model.zero_grads()
    model.bump_version()
