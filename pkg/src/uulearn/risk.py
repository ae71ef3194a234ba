"""Empirical risk estimators.

Everything here is a pure function of classifier outputs.  The estimators:

* ``empirical_pn_risk`` -- the ordinary supervised estimator from labeled
  positive/negative loss values.
* ``uu_risk_parts`` / ``uu_unbiased_risk`` -- the unbiased estimator built
  from two unlabeled pools via the prior-rewriting coefficients.  Its value
  is a signed combination and can legitimately go negative on finite
  samples.
* ``uu_corrected_risk`` -- the consistently corrected estimator: the two
  per-class groups of the rewriting are wrapped by a correction function,
  which restores non-negativity and dominates the unbiased value.
* ``uu_biased_risk`` -- the naive baseline that treats the larger-prior pool
  as positive data and the smaller-prior pool as negative data with equal
  class weights (balanced-error minimization when the pools have equal
  size).
* ``ber_zero_one`` -- balanced error of hard predictions.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .coefficients import RiskCoefficients
from .corrections import CorrectionSpec, correction_apply
from .errors import InsufficientDataError, UndefinedMetricError
from .losses import LossKind, loss_eval

__all__ = [
    "UURiskParts",
    "CorrectedRisk",
    "empirical_pn_risk",
    "uu_risk_parts",
    "uu_unbiased_risk",
    "uu_corrected_risk",
    "uu_biased_risk",
    "ber_zero_one",
]


@dataclass(frozen=True)
class UURiskParts:
    """The four weighted partial risks of the rewriting, plus sample counts.

    ``pos_larger``  = a * mean loss(+outputs)  over the larger-prior pool,
    ``neg_larger``  = b * mean loss(-outputs)  over the larger-prior pool,
    ``pos_smaller`` = c * mean loss(+outputs') over the smaller-prior pool,
    ``neg_smaller`` = d * mean loss(-outputs') over the smaller-prior pool.

    The unbiased estimator is ``pos_larger - neg_larger - pos_smaller +
    neg_smaller``; grouped per class it is ``pos_group + neg_group`` with

        pos_group = pos_larger - pos_smaller   (estimates pi_p * R_p)
        neg_group = neg_smaller - neg_larger   (estimates pi_n * R_n)
    """

    pos_larger: float
    neg_larger: float
    pos_smaller: float
    neg_smaller: float
    n: int
    n_prime: int

    @property
    def pos_group(self) -> float:
        return self.pos_larger - self.pos_smaller

    @property
    def neg_group(self) -> float:
        return self.neg_smaller - self.neg_larger


class CorrectedRisk(NamedTuple):
    value: float
    pos_group: float
    neg_group: float


def empirical_pn_risk(losses_pos, losses_neg, pi_p: float) -> float:
    """Supervised estimator: pi_p * mean(losses_pos) + (1-pi_p) * mean(losses_neg)."""
    losses_pos = np.asarray(losses_pos, dtype=np.float64)
    losses_neg = np.asarray(losses_neg, dtype=np.float64)
    if losses_pos.size == 0 or losses_neg.size == 0:
        raise InsufficientDataError("both loss lists must be non-empty")
    return float(pi_p * losses_pos.mean() + (1.0 - pi_p) * losses_neg.mean())


def uu_risk_parts(
    coeffs: RiskCoefficients,
    model_outputs,
    model_outputs_prime,
    loss: LossKind,
) -> UURiskParts:
    """Evaluate the four partial risks from raw classifier outputs.

    ``model_outputs`` must come from the pool whose class prior is
    ``coeffs.theta`` (the larger one) and ``model_outputs_prime`` from the
    other pool.  Margins are +output for the positive-label terms and
    -output for the negative-label terms.
    """
    t = np.asarray(model_outputs, dtype=np.float64)
    t_prime = np.asarray(model_outputs_prime, dtype=np.float64)
    if t.size == 0 or t_prime.size == 0:
        raise InsufficientDataError("both output batches must be non-empty")
    return UURiskParts(
        pos_larger=coeffs.a * float(np.mean(loss_eval(loss, t))),
        neg_larger=coeffs.b * float(np.mean(loss_eval(loss, -t))),
        pos_smaller=coeffs.c * float(np.mean(loss_eval(loss, t_prime))),
        neg_smaller=coeffs.d * float(np.mean(loss_eval(loss, -t_prime))),
        n=t.size,
        n_prime=t_prime.size,
    )


def uu_unbiased_risk(parts: UURiskParts) -> float:
    """The unbiased estimator; may be negative on finite samples."""
    return parts.pos_larger - parts.neg_larger - parts.pos_smaller + parts.neg_smaller


def uu_corrected_risk(parts: UURiskParts, spec: CorrectionSpec) -> CorrectedRisk:
    """Corrected estimator: f(pos_group) + f(neg_group).

    For every non-identity spec the value is non-negative, never below the
    unbiased value, and equal to it whenever both groups are non-negative.
    """
    pos = correction_apply(spec, parts.pos_group)
    neg = correction_apply(spec, parts.neg_group)
    return CorrectedRisk(value=pos + neg, pos_group=pos, neg_group=neg)


def uu_biased_risk(outputs_larger_prior, outputs_smaller_prior, loss: LossKind) -> float:
    """Naive baseline: supervised objective with prior 1/2 on the pools as-is.

    The larger-prior pool is treated as positive data and the smaller-prior
    pool as negative data.  With equal pool sizes this is balanced-error
    minimization; with unequal sizes the per-set weights stay 1/2, which
    deviates from a pooled empirical average (a warning flags that case).
    """
    t = np.asarray(outputs_larger_prior, dtype=np.float64)
    t_prime = np.asarray(outputs_smaller_prior, dtype=np.float64)
    if t.size == 0 or t_prime.size == 0:
        raise InsufficientDataError("both output batches must be non-empty")
    if t.size != t_prime.size:
        warnings.warn(
            "uu_biased_risk with unequal pool sizes keeps per-set weights of "
            "1/2; this no longer matches balanced-error minimization exactly",
            stacklevel=2,
        )
    return float(
        0.5 * np.mean(loss_eval(loss, t)) + 0.5 * np.mean(loss_eval(loss, -t_prime))
    )


def ber_zero_one(labels_true, predictions) -> float:
    """Balanced error: mean of the per-class zero-one error rates."""
    y = np.asarray(labels_true)
    p = np.asarray(predictions)
    if y.shape != p.shape:
        raise UndefinedMetricError("labels and predictions must have equal length")
    pos = y == 1
    neg = y == -1
    if not pos.any() or not neg.any():
        raise UndefinedMetricError("balanced error needs both classes present")
    err_pos = float(np.mean(p[pos] != 1))
    err_neg = float(np.mean(p[neg] != -1))
    return 0.5 * (err_pos + err_neg)
