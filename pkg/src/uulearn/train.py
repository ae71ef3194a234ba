"""Minibatch training for all method variants, plus evaluation metrics and a
finite-difference gradient checker.

Every method minimizes an objective of the same shape.  For a paired batch
(Xa from the larger-prior pool, Xb from the smaller-prior pool) and
objective coefficients (a, b, c, d):

    pos_group = a * mean loss(+g(Xa)) - c * mean loss(+g(Xb))
    neg_group = d * mean loss(-g(Xb)) - b * mean loss(-g(Xa))
    objective = f(pos_group) + f(neg_group)

* uu_unbiased:  true rewriting coefficients, identity f.
* uu_corrected: true rewriting coefficients, a correction f.
* uu_biased:    coefficients (1/2, 0, 0, 1/2), identity f -- supervised
  training that pretends the pools are cleanly labeled.
* supervised_pn (oracle): coefficients (pi_p, 0, 0, 1-pi_p), identity f,
  with the sides split by the hidden labels.  It requires labels, so it
  lives behind its own entry point (:func:`train_pn_oracle`) rather than
  :func:`train_uu`.

The correction is applied per minibatch: the backward pass multiplies each
group's gradient by the correction's slope at the batch value of that group.
Per-epoch trace rows record the full-data uncorrected and corrected risks
(always with the *true* coefficients, for monitoring) and test metrics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .coefficients import RiskCoefficients, compute_coefficients
from .corrections import CorrectionSpec, correction_apply, correction_subgrad
from .data import LabeledPool, UUDataset, minibatches
from .errors import ConfigurationError, InsufficientDataError, TrainingFault
from .losses import LossKind, loss_eval, loss_fn, loss_grad
from .models import Architecture, Model, backward, forward, model_init
from .optim import optimizer_init, optimizer_step
from .risk import uu_corrected_risk, uu_risk_parts, uu_unbiased_risk

__all__ = [
    "MethodSpec",
    "EpochRecord",
    "BatchGroupRecord",
    "TrainingTrace",
    "GradCheckFixture",
    "train_uu",
    "train_pn_oracle",
    "evaluate",
    "accuracy_drop",
    "grad_check",
    "trace_to_csv",
    "summary_block",
]


@dataclass(frozen=True)
class MethodSpec:
    """A trainable method variant."""

    name: str
    correction: CorrectionSpec | None = None

    def __post_init__(self):
        if self.name not in ("uu_biased", "uu_unbiased", "uu_corrected", "supervised_pn"):
            raise ConfigurationError(f"unknown method: {self.name!r}")
        if self.name == "uu_corrected":
            if self.correction is None:
                raise ConfigurationError("uu_corrected needs a CorrectionSpec")
        elif self.correction is not None:
            raise ConfigurationError(f"{self.name} does not take a correction")

    @classmethod
    def biased(cls) -> "MethodSpec":
        return cls("uu_biased")

    @classmethod
    def unbiased(cls) -> "MethodSpec":
        return cls("uu_unbiased")

    @classmethod
    def corrected(cls, correction: CorrectionSpec) -> "MethodSpec":
        return cls("uu_corrected", correction)

    @classmethod
    def supervised_pn(cls) -> "MethodSpec":
        return cls("supervised_pn")

    @property
    def effective_correction(self) -> CorrectionSpec:
        return self.correction if self.correction is not None else CorrectionSpec.identity()

    @property
    def label(self) -> str:
        """Short name used in file names and summary tables."""
        if self.name == "uu_corrected":
            return f"corrected_lam{self.correction.slope:g}"
        return {"uu_biased": "biased", "uu_unbiased": "unbiased", "supervised_pn": "supervised_pn"}[
            self.name
        ]


@dataclass(frozen=True)
class EpochRecord:
    epoch: int
    train_risk_uu: float
    train_risk_cc: float
    test_acc: float
    test_risk01: float
    best_acc: float


@dataclass(frozen=True)
class BatchGroupRecord:
    epoch: int
    batch_index: int
    pos_group: float
    neg_group: float


@dataclass
class TrainingTrace:
    records: list = field(default_factory=list)
    first_negative_epoch: int | None = None
    batch_groups: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def best_accuracy(self) -> float:
        if not self.records:
            raise InsufficientDataError("empty trace has no accuracy")
        return max(r.test_acc for r in self.records)

    @property
    def final_accuracy(self) -> float:
        if not self.records:
            raise InsufficientDataError("empty trace has no accuracy")
        return self.records[-1].test_acc

    @property
    def best_epoch(self) -> int:
        if not self.records:
            raise InsufficientDataError("empty trace has no accuracy")
        best = max(r.test_acc for r in self.records)
        return next(r.epoch for r in self.records if r.test_acc == best)


def _objective_coefficients(method: MethodSpec, coeffs: RiskCoefficients) -> RiskCoefficients:
    if method.name in ("uu_unbiased", "uu_corrected"):
        return coeffs
    if method.name == "uu_biased":
        return compute_coefficients(1.0, 0.0, 0.5, allow_boundaries=True)
    return compute_coefficients(1.0, 0.0, coeffs.pi_p, allow_boundaries=True)


def _batch_groups(obj_coeffs, loss, out_a, out_b) -> tuple[float, float]:
    pos = obj_coeffs.a * float(np.mean(loss_eval(loss, out_a))) - obj_coeffs.c * float(
        np.mean(loss_eval(loss, out_b))
    )
    neg = obj_coeffs.d * float(np.mean(loss_eval(loss, -out_b))) - obj_coeffs.b * float(
        np.mean(loss_eval(loss, -out_a))
    )
    return pos, neg


def _train_step(model, opt_state, obj_coeffs, correction, loss, x_a, x_b) -> tuple[float, float, float]:
    """One forward/backward/update on a paired batch.  Returns
    (objective value, raw pos group, raw neg group)."""
    out_a, cache_a = forward(model, x_a)
    out_b, cache_b = forward(model, x_b)
    pos_raw, neg_raw = _batch_groups(obj_coeffs, loss, out_a, out_b)
    objective = correction_apply(correction, pos_raw) + correction_apply(correction, neg_raw)
    slope_pos = correction_subgrad(correction, pos_raw)
    slope_neg = correction_subgrad(correction, neg_raw)
    m_a, m_b = len(out_a), len(out_b)
    cot_a = slope_pos * (obj_coeffs.a / m_a) * loss_grad(loss, out_a) + slope_neg * (
        obj_coeffs.b / m_a
    ) * loss_grad(loss, -out_a)
    cot_b = -slope_pos * (obj_coeffs.c / m_b) * loss_grad(loss, out_b) - slope_neg * (
        obj_coeffs.d / m_b
    ) * loss_grad(loss, -out_b)
    backward(model, cache_a, cot_a)
    backward(model, cache_b, cot_b)
    optimizer_step(opt_state, model)
    return objective, pos_raw, neg_raw


def _train_loop(
    side_a,
    side_b,
    test: LabeledPool,
    monitor_coeffs: RiskCoefficients,
    obj_coeffs: RiskCoefficients,
    correction: CorrectionSpec,
    arch: Architecture,
    optimizer_config,
    loss: LossKind,
    epochs: int,
    batch_size: int,
    seed: int,
    record_batches: bool,
) -> tuple[Model, TrainingTrace]:
    model = model_init(arch, seed)
    opt_state = optimizer_init(optimizer_config, model)
    trace = TrainingTrace()
    best_acc = -np.inf
    for epoch in range(1, epochs + 1):
        for batch_index, (xb_a, xb_b) in enumerate(
            minibatches(side_a, side_b, batch_size, seed=(seed, epoch))
        ):
            objective, pos_raw, neg_raw = _train_step(
                model, opt_state, obj_coeffs, correction, loss, xb_a, xb_b
            )
            if not np.isfinite(objective):
                raise TrainingFault(
                    f"non-finite objective at epoch {epoch}, batch {batch_index}"
                )
            if record_batches:
                trace.batch_groups.append(
                    BatchGroupRecord(epoch, batch_index, pos_raw, neg_raw)
                )
        out_a, _ = forward(model, side_a)
        out_b, _ = forward(model, side_b)
        parts = uu_risk_parts(monitor_coeffs, out_a, out_b, loss)
        risk_uu = uu_unbiased_risk(parts)
        risk_cc = uu_corrected_risk(parts, correction).value
        acc, risk01 = evaluate(model, test)
        best_acc = max(best_acc, acc)
        trace.records.append(
            EpochRecord(
                epoch=epoch,
                train_risk_uu=risk_uu,
                train_risk_cc=risk_cc,
                test_acc=acc,
                test_risk01=risk01,
                best_acc=best_acc,
            )
        )
        if trace.first_negative_epoch is None and risk_uu < 0.0:
            trace.first_negative_epoch = epoch
    return model, trace


def _ordered_sides(dataset: UUDataset):
    """Unlabeled views ordered (larger prior first) to match the normalized
    coefficients."""
    if dataset.theta >= dataset.theta_prime:
        return dataset.x_tr, dataset.x_tr_prime
    return dataset.x_tr_prime, dataset.x_tr


def train_uu(
    dataset: UUDataset,
    arch: Architecture,
    optimizer_config,
    method: MethodSpec,
    loss: LossKind,
    epochs: int,
    batch_size: int,
    seed: int,
    *,
    record_batches: bool = False,
) -> tuple[Model, TrainingTrace]:
    """Train on the unlabeled views only.  Deterministic given ``seed``.

    Raises for the supervised oracle method, which needs hidden labels; use
    :func:`train_pn_oracle` for that baseline in validation code.
    """
    if method.name == "supervised_pn":
        raise ConfigurationError(
            "the supervised oracle needs hidden labels; call train_pn_oracle"
        )
    if epochs < 0:
        raise ConfigurationError("epochs must be non-negative")
    coeffs = compute_coefficients(
        dataset.theta, dataset.theta_prime, dataset.pi_p, allow_boundaries=True
    )
    side_a, side_b = _ordered_sides(dataset)
    return _train_loop(
        side_a,
        side_b,
        dataset.test,
        monitor_coeffs=coeffs,
        obj_coeffs=_objective_coefficients(method, coeffs),
        correction=method.effective_correction,
        arch=arch,
        optimizer_config=optimizer_config,
        loss=loss,
        epochs=epochs,
        batch_size=batch_size,
        seed=seed,
        record_batches=record_batches,
    )


def train_pn_oracle(
    dataset: UUDataset,
    arch: Architecture,
    optimizer_config,
    loss: LossKind,
    epochs: int,
    batch_size: int,
    seed: int,
    *,
    record_batches: bool = False,
) -> tuple[Model, TrainingTrace]:
    """Validation-only supervised baseline using the hidden labels.

    The training rows of both unlabeled sets are pooled and re-split by
    their true labels; the objective is the ordinary supervised estimator
    at the dataset's pi_p.  Row order within each class is preserved, so a
    dataset built with theta=1, theta'=0 trains step-for-step identically
    to the unbiased method.
    """
    if dataset.hidden_labels_tr is None or dataset.hidden_labels_tr_prime is None:
        raise ConfigurationError("the supervised oracle needs hidden labels")
    side_a, side_b = _ordered_sides(dataset)
    labels_a, labels_b = (
        (dataset.hidden_labels_tr, dataset.hidden_labels_tr_prime)
        if dataset.theta >= dataset.theta_prime
        else (dataset.hidden_labels_tr_prime, dataset.hidden_labels_tr)
    )
    features = np.vstack([side_a, side_b])
    labels = np.concatenate([labels_a, labels_b])
    pos = features[labels == 1]
    neg = features[labels == -1]
    if len(pos) == 0 or len(neg) == 0:
        raise InsufficientDataError("oracle training needs both classes present")
    pn_coeffs = compute_coefficients(1.0, 0.0, dataset.pi_p, allow_boundaries=True)
    return _train_loop(
        pos,
        neg,
        dataset.test,
        monitor_coeffs=pn_coeffs,
        obj_coeffs=pn_coeffs,
        correction=CorrectionSpec.identity(),
        arch=arch,
        optimizer_config=optimizer_config,
        loss=loss,
        epochs=epochs,
        batch_size=batch_size,
        seed=seed,
        record_batches=record_batches,
    )


def evaluate(model: Model, test: LabeledPool) -> tuple[float, float]:
    """Test accuracy and zero-one risk.

    Predictions are positive iff the score is strictly positive; the
    zero-one risk charges 1/2 at an exactly-zero margin, so the two numbers
    sum to 1 except when some test margin is exactly zero.
    """
    if len(test) == 0:
        raise InsufficientDataError("empty test pool")
    outputs, _ = forward(model, test.features)
    predictions = np.where(outputs > 0.0, 1, -1)
    accuracy = float(np.mean(predictions == test.labels))
    margins = test.labels * outputs
    risk01 = float(np.mean(loss_eval(LossKind.ZERO_ONE, margins)))
    return accuracy, risk01


def accuracy_drop(trace: TrainingTrace) -> float:
    """Best test accuracy over all epochs minus the final accuracy."""
    if not trace.records:
        raise InsufficientDataError("accuracy drop is undefined for an empty trace")
    return trace.best_accuracy - trace.final_accuracy


@dataclass(frozen=True)
class GradCheckFixture:
    """A frozen minibatch situation for gradient verification."""

    inputs: np.ndarray
    inputs_prime: np.ndarray
    coeffs: RiskCoefficients
    model_seed: int = 0


def _objective_and_branches(model, obj_coeffs, correction, loss_f, x_all, m_a):
    """Objective value plus the branch pattern (rectifier signs and group
    signs) it was computed on.  Finite differencing is only valid between
    two evaluations with identical patterns.  ``x_all`` stacks both sides;
    the first ``m_a`` rows belong to the larger-prior side."""
    h = x_all
    last = len(model.weights) - 1
    pattern = []
    z = None
    for j, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = h @ w.T + b
        if j != last:
            mask = z > 0.0
            pattern.append(mask)
            h = z * mask
    out = z[:, 0]
    out_a, out_b = out[:m_a], out[m_a:]
    m_b = out_b.size
    pos_raw = obj_coeffs.a * float(loss_f(out_a).mean()) - obj_coeffs.c * float(
        loss_f(out_b).mean()
    )
    neg_raw = obj_coeffs.d * float(loss_f(-out_b).mean()) - obj_coeffs.b * float(
        loss_f(-out_a).mean()
    )
    objective = correction_apply(correction, pos_raw) + correction_apply(correction, neg_raw)
    signature = b"".join(p.tobytes() for p in pattern) + bytes(
        [pos_raw >= 0.0, neg_raw >= 0.0]
    )
    return objective, signature


def grad_check(
    arch: Architecture,
    method: MethodSpec,
    loss: LossKind,
    fixture: GradCheckFixture,
    step: float = 1e-5,
) -> float:
    """Max relative error between the analytic minibatch gradient and central
    finite differences, over every parameter.

    Parameters whose +/-step evaluations fall on different sides of a
    rectifier or correction kink are excluded: the difference quotient does
    not estimate a one-sided slope there.  Relative error uses a floor of
    1e-6 in the denominator so exact zero gradients compare cleanly.
    """
    if step <= 0.0:
        raise ConfigurationError("step must be positive")
    obj_coeffs = _objective_coefficients(method, fixture.coeffs)
    correction = method.effective_correction
    x_a, x_b = fixture.inputs, fixture.inputs_prime

    model = model_init(arch, fixture.model_seed)
    out_a, cache_a = forward(model, x_a)
    out_b, cache_b = forward(model, x_b)
    pos_raw, neg_raw = _batch_groups(obj_coeffs, loss, out_a, out_b)
    slope_pos = correction_subgrad(correction, pos_raw)
    slope_neg = correction_subgrad(correction, neg_raw)
    m_a, m_b = len(out_a), len(out_b)
    cot_a = slope_pos * (obj_coeffs.a / m_a) * loss_grad(loss, out_a) + slope_neg * (
        obj_coeffs.b / m_a
    ) * loss_grad(loss, -out_a)
    cot_b = -slope_pos * (obj_coeffs.c / m_b) * loss_grad(loss, out_b) - slope_neg * (
        obj_coeffs.d / m_b
    ) * loss_grad(loss, -out_b)
    backward(model, cache_a, cot_a)
    backward(model, cache_b, cot_b)
    analytic = [g.copy() for g in model.gradients()]

    x_all = np.vstack([x_a, x_b])
    m_a = x_a.shape[0]
    loss_f = loss_fn(loss)
    worst = 0.0
    for param, grad in zip(model.parameters(), analytic):
        flat_p = param.reshape(-1)
        flat_g = grad.reshape(-1)
        for idx in range(flat_p.size):
            original = flat_p[idx]
            flat_p[idx] = original + step
            up, sig_up = _objective_and_branches(
                model, obj_coeffs, correction, loss_f, x_all, m_a
            )
            flat_p[idx] = original - step
            down, sig_down = _objective_and_branches(
                model, obj_coeffs, correction, loss_f, x_all, m_a
            )
            flat_p[idx] = original
            if sig_up != sig_down:
                continue
            fd = (up - down) / (2.0 * step)
            denom = max(abs(flat_g[idx]), abs(fd), 1e-6)
            worst = max(worst, abs(flat_g[idx] - fd) / denom)
    return worst


def trace_to_csv(trace: TrainingTrace) -> str:
    """Render the per-epoch records as CSV (17 significant digits, so values
    round-trip exactly)."""
    lines = ["epoch,train_risk_uu,train_risk_cc,test_acc,test_risk01,best_acc"]
    for r in trace.records:
        lines.append(
            f"{r.epoch},{r.train_risk_uu:.17e},{r.train_risk_cc:.17e},"
            f"{r.test_acc:.17e},{r.test_risk01:.17e},{r.best_acc:.17e}"
        )
    return "\n".join(lines) + "\n"


def summary_block(trace: TrainingTrace) -> str:
    """Flat key=value run summary."""
    if trace.records:
        final_acc = f"{trace.final_accuracy:.17e}"
        delta_a = f"{accuracy_drop(trace):.17e}"
    else:
        final_acc = "nan"
        delta_a = "nan"
    first_neg = trace.first_negative_epoch if trace.first_negative_epoch is not None else "none"
    return (
        f"final_acc={final_acc}\n"
        f"delta_a={delta_a}\n"
        f"first_negative_epoch={first_neg}\n"
    )
