"""Closed-form evaluators for the estimator's theoretical guarantees.

These compute numbers, not proofs: given the rewriting coefficients, sample
sizes, a loss ceiling, and the correction's Lipschitz constant, they evaluate

* the mass bound on the negative-risk region (two McDiarmid exponentials),
* the resulting upper bound on the corrected estimator's bias,
* a high-probability deviation bound for the corrected estimator, and
* an estimation-error bound for fully connected rectifier networks in terms
  of the per-layer Frobenius norms.

The loss ceiling ``loss_ceiling`` must be supplied by the caller: it is
exactly 1 for the sigmoid loss, while the logistic loss is unbounded below
in the margin, so every bound holds only under the stated ceiling.

``alpha`` and ``beta`` are assumption parameters (lower bounds on the true
weighted per-class risks pi_p * R_p and pi_n * R_n), not observables; the
Monte Carlo tooling estimates them empirically when checking the bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import RiskCoefficients
from .errors import ConfigurationError

__all__ = [
    "BoundInputs",
    "bias_bound",
    "deviation_bound",
    "estimation_error_bound_mlp",
    "format_bound_report",
]


@dataclass(frozen=True)
class BoundInputs:
    """Inputs shared by the bound evaluators.

    alpha, beta : lower bounds on pi_p * R_p(g) and pi_n * R_n(g), > 0.
    loss_ceiling : supremum of the loss over the admissible outputs, > 0.
    correction_lipschitz : Lipschitz constant of the correction function.
    coeffs : rewriting coefficients (carry a, b, c, d).
    n, n_prime : sizes of the larger-prior and smaller-prior samples.
    delta : confidence level in (0, 1).
    """

    alpha: float
    beta: float
    loss_ceiling: float
    correction_lipschitz: float
    coeffs: RiskCoefficients
    n: int
    n_prime: int
    delta: float

    def __post_init__(self):
        for name in ("alpha", "beta", "loss_ceiling", "correction_lipschitz"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0.0):
                raise ConfigurationError(f"{name} must be positive and finite, got {value}")
        if self.n < 1 or self.n_prime < 1:
            raise ConfigurationError("sample counts must be at least 1")
        if not 0.0 < self.delta < 1.0:
            raise ConfigurationError(f"delta must lie in (0, 1), got {self.delta}")

    @property
    def chi(self) -> float:
        """Deviation scale (a+b)/sqrt(n) + (c+d)/sqrt(n')."""
        k = self.coeffs
        return (k.a + k.b) / math.sqrt(self.n) + (k.c + k.d) / math.sqrt(self.n_prime)


def negative_region_mass(inputs: BoundInputs) -> float:
    """Upper bound on the probability that either rewritten group is negative.

    Sum of two exponentials; always in [0, 2] and decaying to 0 as both
    sample sizes grow.
    """
    k = inputs.coeffs
    cl2 = inputs.loss_ceiling**2

    def term(level: float, denom: float) -> float:
        # zero denominator: the group has no sampling variation, zero mass
        if denom == 0.0:
            return 0.0
        return math.exp(-2.0 * level**2 / cl2 / denom)

    return term(inputs.alpha, k.a**2 / inputs.n + k.c**2 / inputs.n_prime) + term(
        inputs.beta, k.b**2 / inputs.n_prime + k.d**2 / inputs.n
    )


def bias_bound(inputs: BoundInputs) -> tuple[float, float]:
    """Return (negative-region mass, bias upper bound).

    The corrected estimator's bias is non-negative and at most
    ``(L_f + 1) * (a + b + c + d) * loss_ceiling * mass``.
    """
    mass = negative_region_mass(inputs)
    upper = (
        (inputs.correction_lipschitz + 1.0)
        * inputs.coeffs.coefficient_sum
        * inputs.loss_ceiling
        * mass
    )
    return mass, upper


def deviation_bound(inputs: BoundInputs) -> float:
    """High-probability bound on |corrected estimate - true risk|.

    With probability at least 1 - delta the deviation is at most
    ``C_delta * chi + bias_upper`` where
    ``C_delta = loss_ceiling * L_f * sqrt(ln(2/delta) / 2)``.
    """
    c_delta = (
        inputs.loss_ceiling
        * inputs.correction_lipschitz
        * math.sqrt(math.log(2.0 / inputs.delta) / 2.0)
    )
    _, bias_upper = bias_bound(inputs)
    return c_delta * inputs.chi + bias_upper


def estimation_error_bound_mlp(
    inputs: BoundInputs,
    depth: int,
    frob_norms,
    input_norm_ceiling: float,
    loss_lipschitz: float,
) -> float:
    """Estimation-error bound for a rectifier network of the given depth.

    ``frob_norms`` are per-layer ceilings on the Frobenius norms of the
    weight matrices (length = depth), ``input_norm_ceiling`` bounds ||x||,
    and ``loss_lipschitz`` is the loss's Lipschitz constant in the margin.
    The bound is

        (8 * L_f * L_loss * C_x * (sqrt(2 m ln 2) + 1) * prod M_F(j)
         + 2 * C'_delta) * chi
        + 2 * (L_f + 1) * (a+b+c+d) * loss_ceiling * mass

    with ``C'_delta = loss_ceiling * L_f * sqrt(ln(1/delta) / 2)``.
    """
    norms = np.asarray(frob_norms, dtype=np.float64)
    if norms.size != depth:
        raise ConfigurationError(
            f"expected {depth} Frobenius norms, got {norms.size}"
        )
    if np.any(norms < 0.0) or not np.all(np.isfinite(norms)):
        raise ConfigurationError("Frobenius norms must be finite and non-negative")
    if not (np.isfinite(input_norm_ceiling) and input_norm_ceiling > 0.0):
        raise ConfigurationError("input_norm_ceiling must be positive and finite")
    if not (np.isfinite(loss_lipschitz) and loss_lipschitz > 0.0):
        raise ConfigurationError("loss_lipschitz must be positive and finite")

    complexity = (
        8.0
        * inputs.correction_lipschitz
        * loss_lipschitz
        * input_norm_ceiling
        * (math.sqrt(2.0 * depth * math.log(2.0)) + 1.0)
        * float(np.prod(norms))
    )
    c_delta_prime = (
        inputs.loss_ceiling
        * inputs.correction_lipschitz
        * math.sqrt(math.log(1.0 / inputs.delta) / 2.0)
    )
    mass, _ = bias_bound(inputs)
    bias_term = (
        2.0
        * (inputs.correction_lipschitz + 1.0)
        * inputs.coeffs.coefficient_sum
        * inputs.loss_ceiling
        * mass
    )
    return (complexity + 2.0 * c_delta_prime) * inputs.chi + bias_term


def format_bound_report(values: dict) -> str:
    """Render a flat ``name=value`` block, one entry per line.

    Floats are written with 17 significant digits so the block is exact
    under round-trip parsing and stable under byte comparison.
    """
    lines = []
    for name, value in values.items():
        if isinstance(value, float):
            lines.append(f"{name}={value:.17g}")
        else:
            lines.append(f"{name}={value}")
    return "\n".join(lines) + "\n"
