"""Binary classification from two unlabeled datasets with different class
priors.

The library provides the prior-rewriting risk estimators (unbiased and
consistently corrected), from-scratch linear/MLP models with exact
backpropagation, SGD/Adam optimizers, synthetic and IDX data tooling, the
minibatch training loop for every method variant, closed-form bound
evaluators, and Monte Carlo machinery for validating the estimators against
ground truth.
"""

from .coefficients import RiskCoefficients, compute_coefficients
from .corrections import CorrectionSpec, correction_apply, correction_subgrad
from .losses import LossKind, loss_eval, loss_grad, lipschitz_constant, loss_ceiling
from .risk import (
    CorrectedRisk,
    UURiskParts,
    ber_zero_one,
    empirical_pn_risk,
    uu_biased_risk,
    uu_corrected_risk,
    uu_risk_parts,
    uu_unbiased_risk,
)
from .bounds import (
    BoundInputs,
    bias_bound,
    deviation_bound,
    estimation_error_bound_mlp,
    format_bound_report,
)
from .models import (
    Architecture,
    BatchCache,
    Model,
    backward,
    forward,
    frobenius_norms,
    load_model,
    model_init,
    predict_labels,
    save_model,
)
from .optim import AdamConfig, OptimizerState, SgdMomentumConfig, optimizer_init, optimizer_step
from .data import (
    LabeledPool,
    UUDataset,
    dataset_manifest,
    gaussian_pool,
    make_uu_datasets,
    minibatches,
    sample_gaussian_mixture,
)
from .idx import read_idx, read_idx_raw, write_idx
from .train import (
    GradCheckFixture,
    MethodSpec,
    TrainingTrace,
    accuracy_drop,
    evaluate,
    grad_check,
    summary_block,
    trace_to_csv,
    train_pn_oracle,
    train_uu,
)
from .montecarlo import (
    EstimatorStudy,
    GaussianProblem,
    TrueRiskEstimate,
    bayes_linear_model,
    estimator_study,
    true_risk_study,
)

__version__ = "0.1.0"

__all__ = [
    "AdamConfig",
    "Architecture",
    "BatchCache",
    "BoundInputs",
    "CorrectedRisk",
    "CorrectionSpec",
    "EstimatorStudy",
    "GaussianProblem",
    "GradCheckFixture",
    "LabeledPool",
    "LossKind",
    "MethodSpec",
    "Model",
    "OptimizerState",
    "RiskCoefficients",
    "SgdMomentumConfig",
    "TrainingTrace",
    "TrueRiskEstimate",
    "UUDataset",
    "UURiskParts",
    "accuracy_drop",
    "backward",
    "bayes_linear_model",
    "ber_zero_one",
    "bias_bound",
    "compute_coefficients",
    "correction_apply",
    "correction_subgrad",
    "dataset_manifest",
    "deviation_bound",
    "empirical_pn_risk",
    "estimation_error_bound_mlp",
    "estimator_study",
    "evaluate",
    "format_bound_report",
    "forward",
    "frobenius_norms",
    "gaussian_pool",
    "grad_check",
    "lipschitz_constant",
    "load_model",
    "loss_ceiling",
    "loss_eval",
    "loss_grad",
    "make_uu_datasets",
    "minibatches",
    "model_init",
    "optimizer_init",
    "optimizer_step",
    "predict_labels",
    "read_idx",
    "read_idx_raw",
    "sample_gaussian_mixture",
    "save_model",
    "summary_block",
    "trace_to_csv",
    "train_pn_oracle",
    "train_uu",
    "true_risk_study",
    "uu_biased_risk",
    "uu_corrected_risk",
    "uu_risk_parts",
    "uu_unbiased_risk",
    "write_idx",
]
