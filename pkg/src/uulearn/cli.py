"""Experiment command line.

Subcommands:

* ``compare``   -- train every configured method over a list of seeds and
  write per-run trace CSVs plus an aggregated summary table.
* ``cooccur``   -- same runs, plus a report on whether the training risk
  went negative and whether test accuracy peaked before the end (the
  negative-risk / overfitting co-occurrence).
* ``mc``        -- Monte Carlo validation of the estimators on synthetic
  Gaussians against a labeled ground-truth oracle.
* ``bounds``    -- evaluate the closed-form bias/deviation/estimation-error
  bounds for a given configuration.
* ``gradcheck`` -- finite-difference verification of the training gradient.

A config file (``--config``, flat ``key = value`` lines under arbitrary
``[section]`` headers) supplies the same settings as the flags; explicit
flags override file values, and unknown keys are rejected.  Every invocation
writes its effective configuration to ``<out>/config.echo``, and rerunning
with identical settings reproduces all output files byte for byte.
"""

from __future__ import annotations

import argparse
import configparser
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .bounds import (
    BoundInputs,
    bias_bound,
    deviation_bound,
    estimation_error_bound_mlp,
    format_bound_report,
)
from .coefficients import compute_coefficients
from .corrections import CorrectionSpec
from .data import LabeledPool, UUDataset, dataset_manifest, gaussian_pool, make_uu_datasets
from .errors import UULearnError
from .idx import read_idx, read_idx_raw
from .losses import LossKind, lipschitz_constant
from .models import Architecture
from .montecarlo import GaussianProblem, bayes_linear_model, estimator_study, true_risk_study
from .optim import AdamConfig, SgdMomentumConfig
from .train import (
    GradCheckFixture,
    MethodSpec,
    accuracy_drop,
    grad_check,
    trace_to_csv,
    train_uu,
)

__all__ = ["main", "build_parser"]

# rng stream tags so pool construction, corruption, and training draw from
# independent deterministic streams per seed
_POOL_STREAM = 1
_CORRUPT_STREAM = 2


def _fmt(x: float) -> str:
    return f"{x:.17e}"


# --------------------------------------------------------------------------
# argument definitions
# --------------------------------------------------------------------------


def _add_prior_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--theta", type=float, default=0.6, help="class prior of the first unlabeled set (default 0.6)")
    p.add_argument("--theta-prime", type=float, default=0.4, help="class prior of the second unlabeled set (default 0.4)")
    p.add_argument("--pi-p", type=float, default=0.5, help="test class prior (default 0.5)")


def _add_size_flags(p: argparse.ArgumentParser, n_default: int) -> None:
    p.add_argument("--n", type=int, default=n_default, help=f"size of the first unlabeled set (default {n_default})")
    p.add_argument("--n-prime", type=int, default=n_default, help=f"size of the second unlabeled set (default {n_default})")


def _add_data_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, default=10, help="synthetic feature dimension (default 10)")
    p.add_argument("--separation", type=float, default=1.5, help="distance between synthetic class means (default 1.5)")
    p.add_argument("--pool-per-class", type=int, default=None, help="synthetic pool size per class (default: sized to fit the requested sets)")
    p.add_argument("--test-size", type=int, default=2000, help="held-out labeled test examples (default 2000)")
    p.add_argument("--iid-priors", action=argparse.BooleanOptionalAction, default=False, help="draw each set's positive count binomially instead of exactly round(prior*size)")
    p.add_argument("--idx-images", type=str, default=None, help="IDX image file to use instead of synthetic data")
    p.add_argument("--idx-labels", type=str, default=None, help="IDX label file paired with --idx-images")
    p.add_argument("--positive-classes", type=str, nargs="+", default=None, help="label values forming the positive class (IDX source)")


def _add_train_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", type=str, default="mlp:32,32", help="'linear' or 'mlp:<hidden widths>' (default mlp:32,32)")
    p.add_argument("--loss", type=str, default="log", help="surrogate loss: log or sig (default log)")
    p.add_argument("--method", type=str, nargs="+", default=["biased", "unbiased", "corrected"], help="methods to train: biased, unbiased, corrected (default: all three)")
    p.add_argument("--lambda", dest="lam", type=str, nargs="+", default=["0"], help="negative-branch slopes for corrected runs; 0 = hard max, -1 = absolute value (default 0)")
    p.add_argument("--optimizer", type=str, default="adam", choices=["adam", "sgd"], help="optimizer (default adam)")
    p.add_argument("--lr", type=float, default=1e-3, help="learning rate (default 1e-3)")
    p.add_argument("--momentum", type=float, default=0.9, help="sgd momentum (default 0.9)")
    p.add_argument("--weight-decay", type=float, default=0.0, help="L2 coefficient added to gradients (default 0)")
    p.add_argument("--epochs", type=int, default=200, help="training epochs (default 200)")
    p.add_argument("--batch-size", type=int, default=500, help="minibatch size (default 500)")
    p.add_argument("--seed", type=int, nargs="+", default=[0], help="one run per seed (default 0)")
    p.add_argument("--workers", type=int, default=None, help="parallel run workers (default: available cores)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="uulearn", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    compare = sub.add_parser("compare", help="method-comparison sweep with trace CSVs and a summary table")
    cooccur = sub.add_parser("cooccur", help="negative-risk / overfitting co-occurrence study")
    for p in (compare, cooccur):
        p.add_argument("--config", type=str, default=None, help="key = value config file; flags override")
        _add_prior_flags(p)
        _add_size_flags(p, n_default=5000)
        _add_data_flags(p)
        _add_train_flags(p)
        p.add_argument("--out", type=str, required=True, help="output directory")
    cooccur.add_argument("--overfit-threshold", type=float, default=0.01, help="accuracy drop counting as an overfitting event (default 0.01)")

    mc = sub.add_parser("mc", help="Monte Carlo estimator validation on synthetic Gaussians")
    mc.add_argument("--config", type=str, default=None, help="key = value config file; flags override")
    _add_prior_flags(mc)
    _add_size_flags(mc, n_default=500)
    mc.add_argument("--dim", type=int, default=1, help="synthetic feature dimension (default 1)")
    mc.add_argument("--separation", type=float, default=4.0, help="distance between class means (default 4)")
    mc.add_argument("--loss", type=str, default="log", help="loss: log or sig (default log)")
    mc.add_argument("--lambda", dest="lam", type=str, nargs="+", default=["0"], help="correction slopes to study (default 0)")
    mc.add_argument("--trials", type=int, default=10000, help="resampling trials per size (default 10000)")
    mc.add_argument("--sizes", type=int, nargs="+", default=[100, 400, 1600], help="sample sizes for the bias-decay study (default 100 400 1600)")
    mc.add_argument("--true-risk-samples", type=int, default=10**6, help="labeled draws for the ground-truth risk (default 1e6)")
    mc.add_argument("--delta", type=float, default=0.05, help="confidence level for bound evaluation (default 0.05)")
    mc.add_argument("--loss-ceiling", type=float, default=None, help="loss ceiling for the bounds (default: largest loss observed in the ground-truth study)")
    mc.add_argument("--seed", type=int, nargs="+", default=[0], help="base seed (default 0)")
    mc.add_argument("--idx-images", type=str, default=None, help=argparse.SUPPRESS)
    mc.add_argument("--idx-labels", type=str, default=None, help=argparse.SUPPRESS)
    mc.add_argument("--out", type=str, required=True, help="output directory")

    bounds = sub.add_parser("bounds", help="evaluate the closed-form bounds for a configuration")
    bounds.add_argument("--config", type=str, default=None, help="key = value config file; flags override")
    _add_prior_flags(bounds)
    _add_size_flags(bounds, n_default=500)
    bounds.add_argument("--alpha", type=float, required=True, help="lower bound on pi_p * positive-class risk")
    bounds.add_argument("--beta", type=float, required=True, help="lower bound on pi_n * negative-class risk")
    bounds.add_argument("--loss-ceiling", type=float, required=True, help="supremum of the loss over admissible outputs")
    bounds.add_argument("--lambda", dest="lam", type=str, nargs="+", default=["0"], help="correction slope (default 0)")
    bounds.add_argument("--delta", type=float, default=0.05, help="confidence level (default 0.05)")
    bounds.add_argument("--loss", type=str, default="log", help="loss whose Lipschitz constant enters the network bound (default log)")
    bounds.add_argument("--frob-norms", type=float, nargs="+", default=None, help="per-layer Frobenius norm ceilings (enables the network bound)")
    bounds.add_argument("--input-ceiling", type=float, default=None, help="bound on the input norm (required with --frob-norms)")
    bounds.add_argument("--out", type=str, required=True, help="output directory")

    gradcheck = sub.add_parser("gradcheck", help="finite-difference check of the training gradient")
    gradcheck.add_argument("--config", type=str, default=None, help="key = value config file; flags override")
    _add_prior_flags(gradcheck)
    gradcheck.add_argument("--model", type=str, default="mlp:32,32", help="'linear' or 'mlp:<hidden widths>' (default mlp:32,32)")
    gradcheck.add_argument("--dim", type=int, default=10, help="feature dimension (default 10)")
    gradcheck.add_argument("--loss", type=str, default="log", help="loss: log or sig (default log)")
    gradcheck.add_argument("--method", type=str, nargs="+", default=["unbiased", "corrected"], help="methods to check (default unbiased corrected)")
    gradcheck.add_argument("--lambda", dest="lam", type=str, nargs="+", default=["0", "-0.5", "-1"], help="correction slopes for corrected checks")
    gradcheck.add_argument("--step", type=float, default=1e-5, help="finite-difference step (default 1e-5)")
    gradcheck.add_argument("--fixtures", type=int, default=20, help="random fixtures per combination (default 20)")
    gradcheck.add_argument("--batch-rows", type=int, default=6, help="rows per side in each fixture (default 6)")
    gradcheck.add_argument("--tolerance", type=float, default=1e-4, help="max relative error allowed (default 1e-4)")
    gradcheck.add_argument("--seed", type=int, nargs="+", default=[0], help="base seed (default 0)")
    gradcheck.add_argument("--out", type=str, default=None, help="optional output directory for gradcheck.txt")

    return parser


# --------------------------------------------------------------------------
# config file merging
# --------------------------------------------------------------------------


def _config_file_tokens(path: str, parser: argparse.ArgumentParser, command: str) -> list[str]:
    """Turn a config file into flag tokens, rejecting unknown keys."""
    cp = configparser.ConfigParser()
    text = Path(path).read_text()
    if not text.lstrip().startswith("["):
        text = "[config]\n" + text
    cp.read_string(text)
    # the subparser owning the command's flags
    sub_actions = [a for a in parser._actions if isinstance(a, argparse._SubParsersAction)]
    subparser = sub_actions[0].choices[command]
    known = set(subparser._option_string_actions)
    tokens: list[str] = []
    for section in cp.sections():
        for key, raw in cp.items(section):
            flag = "--" + key.strip().lower().replace("_", "-")
            if flag == "--config":
                subparser.error("config files cannot nest another config file")
            if flag not in known:
                subparser.error(f"unknown config key: {key}")
            action = subparser._option_string_actions[flag]
            values = raw.split()
            if isinstance(action, argparse.BooleanOptionalAction):
                truthy = raw.strip().lower() in ("1", "true", "yes", "on")
                tokens.append(flag if truthy else "--no-" + flag[2:])
            elif action.nargs in ("+", "*"):
                tokens.append(flag)
                tokens.extend(values)
            else:
                tokens.append(flag)
                tokens.append(raw.strip())
    return tokens


def _parse_with_config(parser: argparse.ArgumentParser, argv: list[str]) -> argparse.Namespace:
    """Parse once to find --config, then reparse with file tokens inserted
    ahead of the explicit flags so the flags win."""
    first = parser.parse_args(argv)
    config_path = getattr(first, "config", None)
    if not config_path:
        return first
    command = argv[0]
    file_tokens = _config_file_tokens(config_path, parser, command)
    merged = [command] + file_tokens + argv[1:]
    return parser.parse_args(merged)


# --------------------------------------------------------------------------
# shared setup helpers
# --------------------------------------------------------------------------


def _parse_lambdas(values, parser) -> list[float]:
    out = []
    for token in values:
        for piece in str(token).split(","):
            if not piece:
                continue
            try:
                lam = float(piece)
            except ValueError:
                parser.error(f"--lambda values must be numbers, got {piece!r}")
            if lam > 0:
                parser.error(f"--lambda must be <= 0, got {lam}")
            out.append(lam)
    if not out:
        parser.error("--lambda needs at least one value")
    return out


def _parse_methods(values, lambdas, parser) -> list[MethodSpec]:
    names = []
    for token in values:
        names.extend(piece for piece in str(token).split(",") if piece)
    if not names:
        parser.error("--method needs at least one value")
    specs: list[MethodSpec] = []
    for name in names:
        if name == "biased":
            specs.append(MethodSpec.biased())
        elif name == "unbiased":
            specs.append(MethodSpec.unbiased())
        elif name == "corrected":
            specs.extend(MethodSpec.corrected(_correction_for(lam)) for lam in lambdas)
        else:
            parser.error(f"unknown method {name!r} (choose biased, unbiased, corrected)")
    return specs


def _correction_for(lam: float) -> CorrectionSpec:
    return CorrectionSpec.hard_max() if lam == 0 else CorrectionSpec.leaky(lam)


def _parse_model(text: str, dim: int, parser) -> Architecture:
    if text == "linear":
        return Architecture.linear(dim)
    if text.startswith("mlp:"):
        try:
            hidden = [int(w) for w in text[4:].split(",") if w]
        except ValueError:
            parser.error(f"bad --model widths in {text!r}")
        if not hidden:
            parser.error("mlp needs at least one hidden width, e.g. mlp:32,32")
        return Architecture.mlp([dim, *hidden, 1])
    parser.error(f"--model must be 'linear' or 'mlp:<widths>', got {text!r}")


def _parse_loss(text: str, parser) -> LossKind:
    try:
        kind = LossKind.from_name(text)
    except UULearnError as exc:
        parser.error(str(exc))
    if kind is LossKind.ZERO_ONE:
        parser.error("the zero-one loss cannot be trained with; use log or sig")
    return kind


def _validate_priors(args, parser) -> None:
    for name in ("theta", "theta_prime", "pi_p"):
        value = getattr(args, name)
        if not 0.0 < value < 1.0:
            parser.error(f"--{name.replace('_', '-')} must lie strictly inside (0, 1), got {value}")
    if abs(args.theta - args.theta_prime) <= 1e-6:
        parser.error(
            f"degenerate priors: theta={args.theta} and theta-prime={args.theta_prime} "
            "must differ by more than 1e-6"
        )


def _echo_config(args: argparse.Namespace, out_dir: Path) -> None:
    # the output path is not part of the experiment: leaving it out keeps
    # reruns into different directories byte-identical
    skip = {"command", "config", "out"}
    lines = []
    for key in sorted(vars(args)):
        if key in skip:
            continue
        lines.append(f"{key}={getattr(args, key)}")
    (out_dir / "config.echo").write_text("\n".join(lines) + "\n")


def _build_pool(args, seed) -> LabeledPool:
    if args.idx_images:
        if not args.idx_labels or args.positive_classes is None:
            raise UULearnError("an IDX source needs --idx-labels and --positive-classes")
        dims, data = read_idx(args.idx_images)
        _, raw_labels = read_idx_raw(args.idx_labels)
        if dims[0] != raw_labels.size:
            raise UULearnError(
                f"image count {dims[0]} does not match label count {raw_labels.size}"
            )
        positive = [int(v) for token in args.positive_classes for v in str(token).split(",") if v]
        labels = np.where(np.isin(raw_labels, positive), 1, -1)
        return LabeledPool(
            features=data.reshape(dims[0], -1),
            labels=labels,
            provenance={"source": args.idx_images, "positive_classes": positive},
        )
    per_class = args.pool_per_class
    if per_class is None:
        per_class = max(args.n, args.n_prime) + args.test_size
    return gaussian_pool(args.dim, args.separation, per_class, seed=(seed, _POOL_STREAM))


def _build_dataset(args, seed) -> UUDataset:
    pool = _build_pool(args, seed)
    test_fraction = args.test_size / len(pool)
    return make_uu_datasets(
        pool,
        args.theta,
        args.theta_prime,
        args.n,
        args.n_prime,
        test_fraction,
        seed=(seed, _CORRUPT_STREAM),
        pi_p=args.pi_p,
        iid_priors=args.iid_priors,
    )


def _optimizer_config(args):
    if args.optimizer == "adam":
        return AdamConfig(lr=args.lr, weight_decay=args.weight_decay)
    return SgdMomentumConfig(lr=args.lr, momentum=args.momentum, weight_decay=args.weight_decay)


# --------------------------------------------------------------------------
# training runs (compare / cooccur)
# --------------------------------------------------------------------------


def _execute_run(payload) -> dict:
    """Worker-safe single training run; returns everything the parent needs."""
    args, method_name, lam, seed = payload
    method = (
        MethodSpec.corrected(_correction_for(lam))
        if method_name == "uu_corrected"
        else MethodSpec(method_name)
    )
    dataset = _build_dataset(args, seed)
    parser = argparse.ArgumentParser()
    arch = _parse_model(args.model, dataset.x_tr.shape[1], parser)
    loss = _parse_loss(args.loss, parser)
    model, trace = train_uu(
        dataset,
        arch,
        _optimizer_config(args),
        method,
        loss,
        epochs=args.epochs,
        batch_size=args.batch_size,
        seed=seed,
    )
    return {
        "label": method.label,
        "seed": seed,
        "csv": trace_to_csv(trace),
        "manifest": dataset_manifest(dataset),
        "final_acc": trace.final_accuracy,
        "best_acc": trace.best_accuracy,
        "best_epoch": trace.best_epoch,
        "drop": accuracy_drop(trace),
        "first_negative_epoch": trace.first_negative_epoch,
        "epochs": len(trace),
    }


def _run_jobs(args, methods: list[MethodSpec]) -> tuple[list[dict], list[str]]:
    payloads = []
    for method in methods:
        lam = method.correction.slope if method.correction is not None else None
        for seed in args.seed:
            payloads.append((args, method.name, lam, seed))
    workers = args.workers if args.workers else os.cpu_count() or 1
    results: list[dict] = []
    faults: list[str] = []
    if workers > 1 and len(payloads) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_execute_run, p) for p in payloads]
            for payload, future in zip(payloads, futures):
                try:
                    results.append(future.result())
                except Exception as exc:  # noqa: BLE001 - fault is reported, run continues
                    faults.append(f"{payload[1]} lam={payload[2]} seed={payload[3]}: {exc}")
    else:
        for payload in payloads:
            try:
                results.append(_execute_run(payload))
            except Exception as exc:  # noqa: BLE001
                faults.append(f"{payload[1]} lam={payload[2]} seed={payload[3]}: {exc}")
    return results, faults


def _write_traces(results: list[dict], out_dir: Path) -> None:
    for r in results:
        (out_dir / f"trace_{r['label']}_{r['seed']}.csv").write_text(r["csv"])


def _summary_rows(results: list[dict], args) -> list[str]:
    by_label: dict[str, list[dict]] = {}
    order: list[str] = []
    for r in results:
        if r["label"] not in by_label:
            by_label[r["label"]] = []
            order.append(r["label"])
        by_label[r["label"]].append(r)
    rows = ["method,theta,theta_prime,acc_mean,acc_std,drop_mean,drop_std"]
    for label in order:
        accs = np.array([r["final_acc"] for r in by_label[label]])
        drops = np.array([r["drop"] for r in by_label[label]])
        acc_std = accs.std(ddof=1) if accs.size > 1 else 0.0
        drop_std = drops.std(ddof=1) if drops.size > 1 else 0.0
        rows.append(
            f"{label},{args.theta:.17g},{args.theta_prime:.17g},"
            f"{_fmt(accs.mean())},{_fmt(acc_std)},{_fmt(drops.mean())},{_fmt(drop_std)}"
        )
    return rows


def _report_faults(faults: list[str], out_dir: Path) -> None:
    for fault in faults:
        print(f"run failed: {fault}", file=sys.stderr)
    if faults:
        (out_dir / "faults.txt").write_text("\n".join(faults) + "\n")


def run_comparison(args, parser) -> int:
    _validate_priors(args, parser)
    lambdas = _parse_lambdas(args.lam, parser)
    methods = _parse_methods(args.method, lambdas, parser)
    _parse_loss(args.loss, parser)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _echo_config(args, out_dir)
    results, faults = _run_jobs(args, methods)
    _write_traces(results, out_dir)
    (out_dir / "summary.csv").write_text("\n".join(_summary_rows(results, args)) + "\n")
    _report_faults(faults, out_dir)
    return 1 if faults else 0


def run_cooccurrence(args, parser) -> int:
    _validate_priors(args, parser)
    lambdas = _parse_lambdas(args.lam, parser)
    methods = _parse_methods(args.method, lambdas, parser)
    if not any(m.name == "uu_unbiased" for m in methods):
        parser.error("the co-occurrence study needs 'unbiased' among --method")
    _parse_loss(args.loss, parser)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _echo_config(args, out_dir)
    results, faults = _run_jobs(args, methods)
    _write_traces(results, out_dir)
    (out_dir / "summary.csv").write_text("\n".join(_summary_rows(results, args)) + "\n")

    lines = []
    for r in results:
        first_neg = r["first_negative_epoch"]
        risk_event = first_neg is not None
        overfit_event = r["drop"] >= args.overfit_threshold
        onset = r["best_epoch"]
        gap = (onset - first_neg) if risk_event else "na"
        events = {
            (True, True): "both",
            (True, False): "risk_only",
            (False, True): "overfit_only",
            (False, False): "neither",
        }[(risk_event, overfit_event)]
        lines.append(
            f"run={r['label']}_{r['seed']} "
            f"first_negative_epoch={first_neg if risk_event else 'none'} "
            f"overfit_onset_epoch={onset} "
            f"accuracy_drop={_fmt(r['drop'])} "
            f"gap={gap} events={events}"
        )
    (out_dir / "cooccur_report.txt").write_text("\n".join(lines) + "\n")
    _report_faults(faults, out_dir)
    return 1 if faults else 0


# --------------------------------------------------------------------------
# mc / bounds / gradcheck
# --------------------------------------------------------------------------


def run_estimator_mc(args, parser) -> int:
    _validate_priors(args, parser)
    if args.idx_images or args.idx_labels:
        parser.error("mc needs synthetic data (an IDX source has no ground truth)")
    if args.trials < 1:
        parser.error("--trials must be positive")
    lambdas = _parse_lambdas(args.lam, parser)
    loss = _parse_loss(args.loss, parser)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _echo_config(args, out_dir)

    seed = args.seed[0]
    problem = GaussianProblem(dim=args.dim, separation=args.separation, pi_p=args.pi_p)
    model = bayes_linear_model(problem)
    coeffs = compute_coefficients(args.theta, args.theta_prime, args.pi_p)
    truth = true_risk_study(model, loss, problem, args.true_risk_samples, seed=(seed, 10))
    ceiling = args.loss_ceiling if args.loss_ceiling is not None else truth.loss_ceiling_hat

    report: dict = {
        "true_risk": truth.risk,
        "true_risk_samples": truth.n_samples,
        "alpha_hat": truth.weighted_pos_risk,
        "beta_hat": truth.weighted_neg_risk,
        "loss_ceiling": ceiling,
        "trials": args.trials,
    }

    study = estimator_study(
        model, loss, coeffs, problem, args.n, args.n_prime, args.trials, seed=(seed, 11)
    )
    report["uu_mean"] = study.uu_mean
    report["uu_stderr"] = study.uu_stderr
    report["uu_abs_error_in_stderrs"] = abs(study.uu_mean - truth.risk) / study.uu_stderr
    for lam in lambdas:
        spec = _correction_for(lam)
        report[f"corrected_{spec.label}_mean"] = study.corrected_mean(spec)
        report[f"corrected_{spec.label}_bias"] = study.corrected_mean(spec) - truth.risk

    for size in args.sizes:
        decay = estimator_study(
            model, loss, coeffs, problem, size, size, args.trials, seed=(seed, 12, size)
        )
        inputs = BoundInputs(
            alpha=truth.weighted_pos_risk,
            beta=truth.weighted_neg_risk,
            loss_ceiling=ceiling,
            correction_lipschitz=_correction_for(lambdas[0]).lipschitz,
            coeffs=coeffs,
            n=size,
            n_prime=size,
            delta=args.delta,
        )
        _, bias_upper = bias_bound(inputs)
        for lam in lambdas:
            spec = _correction_for(lam)
            report[f"bias_n{size}_{spec.label}"] = decay.corrected_mean(spec) - truth.risk
        report[f"bias_upper_n{size}"] = bias_upper

    text = format_bound_report(report)
    (out_dir / "mc_report.txt").write_text(text)
    print(text, end="")
    return 0


def run_bounds(args, parser) -> int:
    _validate_priors(args, parser)
    lambdas = _parse_lambdas(args.lam, parser)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    _echo_config(args, out_dir)
    coeffs = compute_coefficients(args.theta, args.theta_prime, args.pi_p)
    spec = _correction_for(lambdas[0])
    inputs = BoundInputs(
        alpha=args.alpha,
        beta=args.beta,
        loss_ceiling=args.loss_ceiling,
        correction_lipschitz=spec.lipschitz,
        coeffs=coeffs,
        n=args.n,
        n_prime=args.n_prime,
        delta=args.delta,
    )
    mass, bias_upper = bias_bound(inputs)
    report = {
        "a": coeffs.a,
        "b": coeffs.b,
        "c": coeffs.c,
        "d": coeffs.d,
        "chi": inputs.chi,
        "negative_region_mass": mass,
        "bias_upper": bias_upper,
        "deviation_bound": deviation_bound(inputs),
    }
    if args.frob_norms is not None:
        if args.input_ceiling is None:
            parser.error("--frob-norms needs --input-ceiling")
        loss = _parse_loss(args.loss, parser)
        report["estimation_error_bound_mlp"] = estimation_error_bound_mlp(
            inputs,
            depth=len(args.frob_norms),
            frob_norms=args.frob_norms,
            input_norm_ceiling=args.input_ceiling,
            loss_lipschitz=lipschitz_constant(loss),
        )
    text = format_bound_report(report)
    (out_dir / "bounds.txt").write_text(text)
    print(text, end="")
    return 0


def run_gradcheck(args, parser) -> int:
    _validate_priors(args, parser)
    if args.fixtures < 1:
        parser.error("--fixtures must be positive")
    lambdas = _parse_lambdas(args.lam, parser)
    loss = _parse_loss(args.loss, parser)
    arch = _parse_model(args.model, args.dim, parser)
    methods = _parse_methods(args.method, lambdas, parser)
    for m in methods:
        if m.name == "uu_biased":
            parser.error("gradcheck supports unbiased and corrected methods")
    coeffs = compute_coefficients(args.theta, args.theta_prime, args.pi_p)
    seed = args.seed[0]
    rng = np.random.default_rng((seed, 20))
    lines = []
    worst_overall = 0.0
    for method in methods:
        worst = 0.0
        for k in range(args.fixtures):
            fixture = GradCheckFixture(
                inputs=rng.standard_normal((args.batch_rows, args.dim)),
                inputs_prime=rng.standard_normal((args.batch_rows, args.dim)) - 1.0,
                coeffs=coeffs,
                model_seed=int(rng.integers(2**31)),
            )
            worst = max(worst, grad_check(arch, method, loss, fixture, step=args.step))
        worst_overall = max(worst_overall, worst)
        lines.append(f"{method.label}: max_relative_error={worst:.3e}")
    verdict = "PASS" if worst_overall < args.tolerance else "FAIL"
    lines.append(f"overall: max_relative_error={worst_overall:.3e} tolerance={args.tolerance:g} {verdict}")
    text = "\n".join(lines) + "\n"
    print(text, end="")
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "gradcheck.txt").write_text(text)
    return 0 if verdict == "PASS" else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = _parse_with_config(parser, list(sys.argv[1:] if argv is None else argv))
    try:
        if args.command == "compare":
            return run_comparison(args, parser)
        if args.command == "cooccur":
            return run_cooccurrence(args, parser)
        if args.command == "mc":
            return run_estimator_mc(args, parser)
        if args.command == "bounds":
            return run_bounds(args, parser)
        if args.command == "gradcheck":
            return run_gradcheck(args, parser)
    except UULearnError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")  # pragma: no cover


if __name__ == "__main__":
    sys.exit(main())
