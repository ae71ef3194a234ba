"""Monte Carlo validation of the risk estimators.

For a *fixed* classifier on the synthetic Gaussian family the true risk is
estimable to arbitrary precision from labeled draws, which gives an
independent oracle for checking that

* the unbiased estimator's resampling mean matches the true risk,
* the corrected estimators are biased upward, with bias shrinking as the
  unlabeled samples grow, and
* the measured bias stays below the closed-form bias bound.

Resampling trials use i.i.d. draws from the prior-mixed marginals (the
regime the estimators are defined for) on independent seeded streams and
are processed in vectorized chunks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coefficients import RiskCoefficients
from .corrections import CorrectionSpec, correction_apply
from .data import sample_gaussian_mixture
from .errors import ConfigurationError
from .losses import LossKind, loss_eval
from .models import Architecture, Model, forward

__all__ = [
    "GaussianProblem",
    "bayes_linear_model",
    "TrueRiskEstimate",
    "true_risk_study",
    "EstimatorStudy",
    "estimator_study",
]


@dataclass(frozen=True)
class GaussianProblem:
    """Spherical two-Gaussian task: positives at +mu, negatives at -mu with
    mu = (separation/2) e_1, evaluated at test prior pi_p."""

    dim: int
    separation: float
    pi_p: float


def bayes_linear_model(problem: GaussianProblem) -> Model:
    """The Bayes rule for equal-prior spherical Gaussians: the linear
    threshold on the first coordinate."""
    arch = Architecture.linear(problem.dim)
    weights = [np.zeros((1, problem.dim))]
    weights[0][0, 0] = 1.0
    biases = [np.zeros(1)]
    return Model(arch=arch, weights=weights, biases=biases)


@dataclass(frozen=True)
class TrueRiskEstimate:
    """Labeled Monte Carlo estimate of the risk of a fixed classifier.

    ``weighted_pos_risk`` and ``weighted_neg_risk`` are pi_p * R_p and
    pi_n * R_n (empirical lower-bound surrogates for the bias bound's alpha
    and beta); ``loss_ceiling_hat`` is the largest loss value observed at
    either margin sign, usable as an empirical loss ceiling.
    """

    risk: float
    weighted_pos_risk: float
    weighted_neg_risk: float
    loss_ceiling_hat: float
    n_samples: int


def true_risk_study(
    model: Model,
    loss: LossKind,
    problem: GaussianProblem,
    n_samples: int = 10**6,
    seed=0,
    chunk: int = 200_000,
) -> TrueRiskEstimate:
    """Estimate R(g) by averaging the loss over labeled draws from the task."""
    if n_samples < 1:
        raise ConfigurationError("n_samples must be positive")
    rng = np.random.default_rng(seed)
    sum_pos = 0.0
    sum_neg = 0.0
    count_pos = 0
    count_neg = 0
    ceiling = 0.0
    remaining = n_samples
    while remaining > 0:
        size = min(chunk, remaining)
        remaining -= size
        features, labels = sample_gaussian_mixture(
            problem.dim, problem.separation, problem.pi_p, size, rng
        )
        outputs, _ = forward(model, features)
        losses = loss_eval(loss, labels * outputs)
        sum_pos += float(losses[labels == 1].sum())
        sum_neg += float(losses[labels == -1].sum())
        count_pos += int((labels == 1).sum())
        count_neg += int((labels == -1).sum())
        ceiling = max(
            ceiling,
            float(losses.max()),
            float(loss_eval(loss, -labels * outputs).max()),
        )
    r_pos = sum_pos / count_pos if count_pos else 0.0
    r_neg = sum_neg / count_neg if count_neg else 0.0
    return TrueRiskEstimate(
        risk=problem.pi_p * r_pos + (1.0 - problem.pi_p) * r_neg,
        weighted_pos_risk=problem.pi_p * r_pos,
        weighted_neg_risk=(1.0 - problem.pi_p) * r_neg,
        loss_ceiling_hat=ceiling,
        n_samples=n_samples,
    )


@dataclass(frozen=True)
class EstimatorStudy:
    """Per-trial values of the unbiased estimator and its two groups."""

    uu_values: np.ndarray
    pos_groups: np.ndarray
    neg_groups: np.ndarray
    n: int
    n_prime: int

    @property
    def trials(self) -> int:
        return self.uu_values.size

    def corrected_values(self, spec: CorrectionSpec) -> np.ndarray:
        return correction_apply(spec, self.pos_groups) + correction_apply(
            spec, self.neg_groups
        )

    @property
    def uu_mean(self) -> float:
        return float(self.uu_values.mean())

    @property
    def uu_stderr(self) -> float:
        return float(self.uu_values.std(ddof=1) / np.sqrt(self.trials))

    def corrected_mean(self, spec: CorrectionSpec) -> float:
        return float(self.corrected_values(spec).mean())

    def corrected_stderr(self, spec: CorrectionSpec) -> float:
        values = self.corrected_values(spec)
        return float(values.std(ddof=1) / np.sqrt(self.trials))


def _pool_part_means(model, loss, problem, prior, trials, size, rng, chunk_rows):
    """Means of loss(+out) and loss(-out) per trial for one unlabeled pool."""
    mean_plus = np.empty(trials)
    mean_minus = np.empty(trials)
    trials_per_chunk = max(1, chunk_rows // size)
    done = 0
    while done < trials:
        t = min(trials_per_chunk, trials - done)
        features, _ = sample_gaussian_mixture(
            problem.dim, problem.separation, prior, t * size, rng
        )
        outputs, _ = forward(model, features)
        outputs = outputs.reshape(t, size)
        mean_plus[done : done + t] = loss_eval(loss, outputs).mean(axis=1)
        mean_minus[done : done + t] = loss_eval(loss, -outputs).mean(axis=1)
        done += t
    return mean_plus, mean_minus


def estimator_study(
    model: Model,
    loss: LossKind,
    coeffs: RiskCoefficients,
    problem: GaussianProblem,
    n: int,
    n_prime: int,
    trials: int,
    seed=0,
    chunk_rows: int = 500_000,
) -> EstimatorStudy:
    """Resample the two unlabeled pools ``trials`` times and evaluate the
    estimator on each draw.

    Each trial draws n i.i.d. examples at prior theta and n' at theta'.
    """
    if trials < 1:
        raise ConfigurationError("trials must be positive")
    if n < 1 or n_prime < 1:
        raise ConfigurationError("pool sizes must be positive")
    rng = np.random.default_rng(seed)
    plus_a, minus_a = _pool_part_means(
        model, loss, problem, coeffs.theta, trials, n, rng, chunk_rows
    )
    plus_b, minus_b = _pool_part_means(
        model, loss, problem, coeffs.theta_prime, trials, n_prime, rng, chunk_rows
    )
    pos_groups = coeffs.a * plus_a - coeffs.c * plus_b
    neg_groups = coeffs.d * minus_b - coeffs.b * minus_a
    uu_values = pos_groups + neg_groups
    return EstimatorStudy(
        uu_values=uu_values,
        pos_groups=pos_groups,
        neg_groups=neg_groups,
        n=n,
        n_prime=n_prime,
    )
