"""Dataset construction.

Synthetic Gaussian pools with known ground truth, corruption of any labeled
pool into two unlabeled sets with different class priors, and deterministic
shuffling/batching for paired minibatch training.

Corruption draws exact class counts by default (round(theta * n) positives),
which keeps validation variance at zero; ``iid_priors=True`` instead draws
each set's positive count binomially, i.e. faithful i.i.d. sampling from the
prior-mixed marginal.  Test data are split off before corruption, so no test
row can appear in either unlabeled set.  The two unlabeled sets are disjoint
whenever the pool has the capacity, and fall back to sharing rows across
sets (never within one set) when it does not.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import CapacityError, ConfigurationError, InsufficientDataError

__all__ = [
    "LabeledPool",
    "UUDataset",
    "gaussian_pool",
    "sample_gaussian_mixture",
    "make_uu_datasets",
    "minibatches",
    "dataset_manifest",
]


@dataclass(frozen=True)
class LabeledPool:
    """Feature matrix (rows = examples) with labels in {+1, -1}."""

    features: np.ndarray
    labels: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.features.ndim != 2:
            raise ConfigurationError("features must be a 2-D matrix")
        if self.labels.shape != (self.features.shape[0],):
            raise ConfigurationError("labels must have one entry per feature row")
        if not np.all(np.isin(self.labels, (-1, 1))):
            raise ConfigurationError("labels must be +1 or -1")

    def __len__(self) -> int:
        return self.features.shape[0]

    @property
    def dim(self) -> int:
        return self.features.shape[1]

    @property
    def n_positive(self) -> int:
        return int(np.sum(self.labels == 1))

    @property
    def n_negative(self) -> int:
        return int(np.sum(self.labels == -1))


@dataclass(frozen=True)
class UUDataset:
    """Two unlabeled training pools plus a labeled evaluation set.

    ``hidden_labels_*`` record the true labels of the unlabeled rows for
    validation; training entry points only consume the unlabeled views, and
    the oracle baseline that does need labels is a separate, explicitly
    named entry point.
    """

    x_tr: np.ndarray
    x_tr_prime: np.ndarray
    test: LabeledPool
    theta: float
    theta_prime: float
    pi_p: float
    hidden_labels_tr: np.ndarray | None = None
    hidden_labels_tr_prime: np.ndarray | None = None
    provenance: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.x_tr.shape[0]

    @property
    def n_prime(self) -> int:
        return self.x_tr_prime.shape[0]


def gaussian_pool(dim: int, separation: float, n_per_class: int, seed) -> LabeledPool:
    """Two spherical Gaussian classes: positives at +mu, negatives at -mu,
    with mu = (separation/2) * e_1.  The Bayes rule is the sign of the first
    coordinate, which makes ground-truth risks computable in closed form."""
    if dim < 1 or n_per_class < 1:
        raise ConfigurationError("dim and n_per_class must be at least 1")
    if separation < 0:
        raise ConfigurationError("separation must be non-negative")
    rng = np.random.default_rng(seed)
    mu = np.zeros(dim)
    mu[0] = separation / 2.0
    pos = rng.standard_normal((n_per_class, dim)) + mu
    neg = rng.standard_normal((n_per_class, dim)) - mu
    features = np.vstack([pos, neg])
    labels = np.concatenate([np.ones(n_per_class, dtype=int), -np.ones(n_per_class, dtype=int)])
    perm = rng.permutation(2 * n_per_class)
    return LabeledPool(
        features=features[perm],
        labels=labels[perm],
        provenance={
            "source": "gaussian",
            "dim": dim,
            "separation": separation,
            "n_per_class": n_per_class,
            "seed": seed,
        },
    )


def sample_gaussian_mixture(
    dim: int, separation: float, prior: float, size: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``size`` i.i.d. examples from the prior-mixed Gaussian marginal.

    Each example is positive with probability ``prior``; features follow the
    same +/-mu class conditionals as :func:`gaussian_pool`.  Returns
    (features, labels)."""
    labels = np.where(rng.random(size) < prior, 1, -1)
    mu = np.zeros(dim)
    mu[0] = separation / 2.0
    features = rng.standard_normal((size, dim)) + labels[:, None] * mu
    return features, labels


def _draw_class_rows(unused: list, used: list, count: int, label: int, rng) -> np.ndarray:
    """Take ``count`` distinct rows for one set: unused rows first, then rows
    already consumed by the other set (shared across sets, never within)."""
    total = len(unused) + len(used)
    if count > total:
        name = "positive" if label == 1 else "negative"
        raise CapacityError(
            f"need {count} {name} examples but only {total} remain outside the test split",
            short_class=label,
        )
    take = min(count, len(unused))
    chosen = list(unused[:take])
    del unused[:take]
    if take < count:
        extra = rng.choice(len(used), size=count - take, replace=False)
        chosen.extend(used[i] for i in extra)
    used.extend(chosen)
    return np.asarray(chosen, dtype=int)


def make_uu_datasets(
    pool: LabeledPool,
    theta: float,
    theta_prime: float,
    n: int,
    n_prime: int,
    test_fraction: float,
    seed,
    *,
    pi_p: float | None = None,
    iid_priors: bool = False,
) -> UUDataset:
    """Corrupt a labeled pool into two unlabeled sets at priors theta and
    theta', holding out a labeled test split first.

    ``pi_p`` fixes the test split's class prior (stratified draw); when
    omitted it defaults to the pool's own positive fraction.  Fully
    deterministic given ``seed``.
    """
    if not 0.0 <= theta <= 1.0 or not 0.0 <= theta_prime <= 1.0:
        raise ConfigurationError("theta and theta_prime must lie in [0, 1]")
    if n < 1 or n_prime < 1:
        raise ConfigurationError("both unlabeled sets need at least one example")
    if not 0.0 < test_fraction < 1.0:
        raise ConfigurationError("test_fraction must lie in (0, 1)")
    if pool.n_positive == 0 or pool.n_negative == 0:
        raise InsufficientDataError("corruption needs both classes in the pool")

    rng = np.random.default_rng(seed)
    if pi_p is None:
        pi_p = pool.n_positive / len(pool)

    pos_idx = rng.permutation(np.flatnonzero(pool.labels == 1)).tolist()
    neg_idx = rng.permutation(np.flatnonzero(pool.labels == -1)).tolist()

    n_test = int(round(test_fraction * len(pool)))
    n_test_pos = int(round(pi_p * n_test))
    n_test_neg = n_test - n_test_pos
    if n_test_pos > len(pos_idx):
        raise CapacityError(
            f"test split needs {n_test_pos} positives but the pool has {len(pos_idx)}",
            short_class=1,
        )
    if n_test_neg > len(neg_idx):
        raise CapacityError(
            f"test split needs {n_test_neg} negatives but the pool has {len(neg_idx)}",
            short_class=-1,
        )
    test_rows = np.asarray(pos_idx[:n_test_pos] + neg_idx[:n_test_neg], dtype=int)
    del pos_idx[:n_test_pos]
    del neg_idx[:n_test_neg]
    test_perm = rng.permutation(len(test_rows))
    test = LabeledPool(
        features=pool.features[test_rows][test_perm],
        labels=pool.labels[test_rows][test_perm],
        provenance={**pool.provenance, "split": "test"},
    )

    def positive_count(size: int, prior: float) -> int:
        if iid_priors:
            return int(rng.binomial(size, prior))
        return int(round(prior * size))

    used_pos: list = []
    used_neg: list = []

    def build_set(size: int, prior: float) -> tuple[np.ndarray, np.ndarray]:
        k_pos = positive_count(size, prior)
        rows_pos = _draw_class_rows(pos_idx, used_pos, k_pos, 1, rng)
        rows_neg = _draw_class_rows(neg_idx, used_neg, size - k_pos, -1, rng)
        rows = np.concatenate([rows_pos, rows_neg])
        labels = np.concatenate([np.ones(k_pos, dtype=int), -np.ones(size - k_pos, dtype=int)])
        perm = rng.permutation(size)
        return pool.features[rows][perm], labels[perm]

    x_tr, hidden_tr = build_set(n, theta)
    x_tr_prime, hidden_tr_prime = build_set(n_prime, theta_prime)

    return UUDataset(
        x_tr=x_tr,
        x_tr_prime=x_tr_prime,
        test=test,
        theta=theta,
        theta_prime=theta_prime,
        pi_p=pi_p,
        hidden_labels_tr=hidden_tr,
        hidden_labels_tr_prime=hidden_tr_prime,
        provenance={
            **pool.provenance,
            "seed": seed,
            "iid_priors": iid_priors,
            "test_fraction": test_fraction,
        },
    )


def minibatches(x_tr, x_tr_prime, batch_size: int, seed) -> list[tuple[np.ndarray, np.ndarray]]:
    """One epoch of paired minibatches.

    Both sets are shuffled independently, then sliced into
    k = ceil(max(n, n') / batch_size) contiguous parts so the sides are
    exhausted together; per-side part sizes differ by at most one.  A batch
    size exceeding both set sizes degrades to a single full batch (with a
    warning)."""
    if batch_size < 2:
        raise ConfigurationError(f"batch_size must be at least 2, got {batch_size}")
    x_tr = np.asarray(x_tr, dtype=np.float64)
    x_tr_prime = np.asarray(x_tr_prime, dtype=np.float64)
    n, n_prime = x_tr.shape[0], x_tr_prime.shape[0]
    if n == 0 or n_prime == 0:
        raise InsufficientDataError("both sets must be non-empty")
    if batch_size > max(n, n_prime):
        warnings.warn(
            f"batch_size {batch_size} exceeds both set sizes ({n}, {n_prime}); "
            "falling back to one full batch per epoch",
            stacklevel=2,
        )
    k = max(1, -(-max(n, n_prime) // batch_size))
    rng = np.random.default_rng(seed)
    order = rng.permutation(n)
    order_prime = rng.permutation(n_prime)
    parts = np.array_split(order, k)
    parts_prime = np.array_split(order_prime, k)
    return [
        (x_tr[p], x_tr_prime[q])
        for p, q in zip(parts, parts_prime)
        if len(p) > 0 and len(q) > 0
    ]


def dataset_manifest(ds: UUDataset) -> str:
    """Flat key=value description of a dataset (for reproducibility logs)."""
    entries = {
        "theta": f"{ds.theta:.17g}",
        "theta_prime": f"{ds.theta_prime:.17g}",
        "pi_p": f"{ds.pi_p:.17g}",
        "n": ds.n,
        "n_prime": ds.n_prime,
        "n_test": len(ds.test),
        "dim": ds.x_tr.shape[1],
    }
    for key, value in sorted(ds.provenance.items()):
        entries[f"provenance.{key}"] = value
    return "\n".join(f"{k}={v}" for k, v in entries.items()) + "\n"
