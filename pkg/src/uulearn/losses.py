"""Margin-form loss functions for binary classification.

Every loss is a scalar function of the margin ``z = y * g(x)``: a prediction
``t`` for a label ``y`` in {+1, -1} incurs ``loss_eval(kind, y * t)``.

Supported losses:

* logistic: ``ln(1 + exp(-z))``, computed overflow-safely for any finite z.
* sigmoid:  ``1 / (1 + exp(z))``, bounded in (0, 1).
* zero-one: 1 for z < 0, 1/2 at z = 0, 0 for z > 0.  Evaluation only; it has
  no usable gradient.

The zero-one value at z = 0 is fixed to 1/2 so that the risk of a constant
classifier sitting on the boundary is symmetric between the classes.  Hard
label prediction elsewhere in the library uses the complementary convention
(positive iff the output is strictly greater than zero).
"""

from __future__ import annotations

import enum

import numpy as np
from scipy.special import expit

from .errors import InputDomainError, UnsupportedOperationError

__all__ = [
    "LossKind",
    "loss_eval",
    "loss_grad",
    "loss_fn",
    "loss_grad_fn",
    "lipschitz_constant",
    "loss_ceiling",
]


class LossKind(enum.Enum):
    LOGISTIC = "logistic"
    SIGMOID = "sigmoid"
    ZERO_ONE = "zero_one"

    @classmethod
    def from_name(cls, name: str) -> "LossKind":
        """Resolve a loss by name; accepts the short forms "log" and "sig"."""
        aliases = {
            "log": cls.LOGISTIC,
            "logistic": cls.LOGISTIC,
            "sig": cls.SIGMOID,
            "sigmoid": cls.SIGMOID,
            "zero_one": cls.ZERO_ONE,
            "01": cls.ZERO_ONE,
        }
        try:
            return aliases[name.lower()]
        except KeyError:
            raise InputDomainError(f"unknown loss name: {name!r}") from None


def _as_finite_array(margin, name: str = "margin") -> np.ndarray:
    z = np.asarray(margin, dtype=np.float64)
    if not np.all(np.isfinite(z)):
        raise InputDomainError(f"{name} must be finite")
    return z


def _match_input(value: np.ndarray, template) -> float | np.ndarray:
    if np.isscalar(template) or np.ndim(template) == 0:
        return float(value)
    return value


def _logistic(z):
    # ln(1 + exp(-z)) via logaddexp: exact asymptotics without overflow.
    return np.logaddexp(0.0, -z)


def _sigmoid(z):
    return expit(-z)


def _zero_one(z):
    return np.where(z < 0, 1.0, np.where(z > 0, 0.0, 0.5))


def _logistic_grad(z):
    return -expit(-z)


def _sigmoid_grad(z):
    s = expit(z)
    return -s * (1.0 - s)


_EVAL = {LossKind.LOGISTIC: _logistic, LossKind.SIGMOID: _sigmoid, LossKind.ZERO_ONE: _zero_one}
_GRAD = {LossKind.LOGISTIC: _logistic_grad, LossKind.SIGMOID: _sigmoid_grad}


def loss_fn(kind: LossKind):
    """Vectorized evaluator without input validation (hot loops only)."""
    return _EVAL[kind]


def loss_grad_fn(kind: LossKind):
    """Vectorized derivative without input validation (hot loops only)."""
    try:
        return _GRAD[kind]
    except KeyError:
        raise UnsupportedOperationError(
            "the zero-one loss is not differentiable; it is for evaluation only"
        ) from None


def loss_eval(kind: LossKind, margin) -> float | np.ndarray:
    """Evaluate a loss at the given margin(s).

    Scalar in, scalar out; array in, array out.  The result is never
    negative and never NaN for finite input.
    """
    z = _as_finite_array(margin)
    return _match_input(_EVAL[kind](z), margin)


def loss_grad(kind: LossKind, margin) -> float | np.ndarray:
    """Derivative d loss / d margin for the differentiable losses.

    logistic: -1 / (1 + exp(z));  sigmoid: -exp(z) / (1 + exp(z))^2.
    """
    z = _as_finite_array(margin)
    return _match_input(loss_grad_fn(kind)(z), margin)


def lipschitz_constant(kind: LossKind) -> float:
    """Lipschitz constant of the loss in the margin (1 for logistic, 1/4 for
    sigmoid)."""
    if kind is LossKind.LOGISTIC:
        return 1.0
    if kind is LossKind.SIGMOID:
        return 0.25
    raise UnsupportedOperationError("the zero-one loss is not Lipschitz continuous")


def loss_ceiling(kind: LossKind) -> float | None:
    """Supremum of the loss over all margins, or None when unbounded.

    The sigmoid and zero-one losses are capped at 1; the logistic loss grows
    without bound as the margin decreases, so callers of the bound
    evaluators must supply an explicit ceiling for it.
    """
    if kind in (LossKind.SIGMOID, LossKind.ZERO_ONE):
        return 1.0
    return None
