"""Consistent correction functions.

A consistent correction is Lipschitz continuous, non-negative, and equal to
the identity on [0, inf).  Wrapping the two signed groups of the rewritten
risk with such a function keeps the estimator non-negative while leaving it
untouched wherever the groups are already non-negative.

The whole family used here is the generalized leaky rectifier

    f(x) = x        for x >= 0,
    f(x) = slope*x  for x <  0,   slope <= 0,

which covers the hard max (slope 0) and the absolute value (slope -1) as
special cases.  ``identity`` (no correction) is also representable for the
uncorrected baseline; it is the one member that may go negative.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InputDomainError

__all__ = ["CorrectionSpec", "correction_apply", "correction_subgrad"]


@dataclass(frozen=True)
class CorrectionSpec:
    """One member of the correction family.

    ``kind`` is "identity", "leaky", or "hard_max"; ``slope`` is the
    negative-branch slope (1 for identity, 0 for hard max, <= 0 for leaky).
    """

    kind: str
    slope: float

    def __post_init__(self):
        if self.kind not in ("identity", "leaky", "hard_max"):
            raise ConfigurationError(f"unknown correction kind: {self.kind!r}")
        if not np.isfinite(self.slope):
            raise ConfigurationError("correction slope must be finite")
        if self.kind == "identity" and self.slope != 1.0:
            raise ConfigurationError("identity correction has slope 1 by definition")
        if self.kind == "hard_max" and self.slope != 0.0:
            raise ConfigurationError("hard-max correction has slope 0 by definition")
        if self.kind == "leaky" and self.slope > 0.0:
            raise ConfigurationError(
                "leaky correction requires slope <= 0; a positive slope would "
                f"make the corrected value negative (got {self.slope})"
            )

    @classmethod
    def identity(cls) -> "CorrectionSpec":
        return cls("identity", 1.0)

    @classmethod
    def leaky(cls, slope: float) -> "CorrectionSpec":
        return cls("leaky", float(slope))

    @classmethod
    def hard_max(cls) -> "CorrectionSpec":
        return cls("hard_max", 0.0)

    @property
    def is_identity(self) -> bool:
        return self.kind == "identity"

    @property
    def lipschitz(self) -> float:
        """Lipschitz constant: max of the two branch slopes in magnitude."""
        return max(1.0, abs(self.slope))

    @property
    def label(self) -> str:
        if self.kind == "identity":
            return "identity"
        if self.kind == "hard_max":
            return "hard_max"
        return f"leaky{self.slope:g}"


def correction_apply(spec: CorrectionSpec, x) -> float | np.ndarray:
    """Apply the correction: x on [0, inf), slope*x below zero."""
    z = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(z)):
        raise InputDomainError("correction input must be finite")
    value = np.where(z >= 0.0, z, spec.slope * z)
    if np.ndim(x) == 0:
        return float(value)
    return value


def correction_subgrad(spec: CorrectionSpec, x) -> float | np.ndarray:
    """Chain-rule multiplier: 1 on the identity branch, the negative-branch
    slope below zero.  At the kink x = 0 the identity-branch value 1 is used;
    minibatch training is insensitive to this measure-zero tie-break."""
    z = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(z)):
        raise InputDomainError("correction input must be finite")
    value = np.where(z >= 0.0, 1.0, spec.slope)
    if np.ndim(x) == 0:
        return float(value)
    return value
