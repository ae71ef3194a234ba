"""From-scratch differentiable classifiers: linear and fully connected MLP.

A model maps a batch of d-vectors to one real score per row.  The MLP
alternates affine maps with rectifier activations; the final layer is affine
with no activation.  ``forward`` returns the scores plus a cache of
intermediate values, and ``backward`` consumes that cache together with a
per-row cotangent to accumulate exact parameter gradients of
``sum_i cotangent_i * score_i``.

Caches are tied to the parameter values present at forward time: every
parameter mutation bumps ``model.version``, and using a cache whose version
no longer matches raises ``StaleCacheError``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, StaleCacheError

__all__ = [
    "Architecture",
    "Model",
    "BatchCache",
    "model_init",
    "forward",
    "backward",
    "predict_labels",
    "frobenius_norms",
    "save_model",
    "load_model",
]

CHECKPOINT_MAGIC = b"UUML"
CHECKPOINT_VERSION = 1
_ARCH_CODES = {"linear": 0, "mlp": 1}
_ARCH_NAMES = {code: name for name, code in _ARCH_CODES.items()}


@dataclass(frozen=True)
class Architecture:
    """Layer widths, input first and output (always 1) last."""

    widths: tuple[int, ...]
    kind: str

    def __post_init__(self):
        if self.kind not in _ARCH_CODES:
            raise ConfigurationError(f"unknown architecture kind: {self.kind!r}")
        if len(self.widths) < 2:
            raise ConfigurationError("an architecture needs at least input and output widths")
        if any(w < 1 for w in self.widths):
            raise ConfigurationError(f"layer widths must be positive, got {self.widths}")
        if self.widths[-1] != 1:
            raise ConfigurationError(f"output width must be 1, got {self.widths[-1]}")
        if self.kind == "linear" and len(self.widths) != 2:
            raise ConfigurationError("a linear model has no hidden layers")

    @classmethod
    def linear(cls, dim: int) -> "Architecture":
        return cls((int(dim), 1), "linear")

    @classmethod
    def mlp(cls, widths) -> "Architecture":
        return cls(tuple(int(w) for w in widths), "mlp")

    @property
    def input_dim(self) -> int:
        return self.widths[0]

    @property
    def depth(self) -> int:
        """Number of weight matrices."""
        return len(self.widths) - 1


@dataclass
class Model:
    """Parameter container with paired gradient storage.

    ``weights[j]`` has shape (widths[j+1], widths[j]); ``biases[j]`` has
    length widths[j+1].  Gradient arrays always mirror these shapes.
    """

    arch: Architecture
    weights: list
    biases: list
    grad_weights: list = field(repr=False, default=None)
    grad_biases: list = field(repr=False, default=None)
    version: int = 0
    grads_fresh: bool = False

    def __post_init__(self):
        if self.grad_weights is None:
            self.grad_weights = [np.zeros_like(w) for w in self.weights]
        if self.grad_biases is None:
            self.grad_biases = [np.zeros_like(b) for b in self.biases]

    def zero_grads(self) -> None:
        for g in self.grad_weights:
            g.fill(0.0)
        for g in self.grad_biases:
            g.fill(0.0)
        self.grads_fresh = False

    def bump_version(self) -> None:
        self.version += 1

    def parameters(self):
        """Yield every parameter array (weights then bias, per layer)."""
        for w, b in zip(self.weights, self.biases):
            yield w
            yield b

    def gradients(self):
        for gw, gb in zip(self.grad_weights, self.grad_biases):
            yield gw
            yield gb


@dataclass
class BatchCache:
    """Intermediates retained from one forward pass."""

    inputs: np.ndarray
    pre_activations: list
    hidden_activations: list
    model_version: int


def model_init(arch: Architecture, seed: int) -> Model:
    """Deterministic initialization: weights uniform on
    (-1/sqrt(fan_in), +1/sqrt(fan_in)), biases zero."""
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(arch.widths[:-1], arch.widths[1:]):
        scale = 1.0 / np.sqrt(fan_in)
        weights.append(rng.uniform(-scale, scale, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return Model(arch=arch, weights=weights, biases=biases)


def forward(model: Model, inputs) -> tuple[np.ndarray, BatchCache]:
    """Score a batch.  Returns (scores of shape (n,), cache)."""
    x = np.asarray(inputs, dtype=np.float64)
    if x.ndim == 1:
        x = x[None, :]
    if x.ndim != 2 or x.shape[1] != model.arch.input_dim:
        raise ConfigurationError(
            f"expected inputs of shape (n, {model.arch.input_dim}), got {x.shape}"
        )
    pre_activations = []
    hidden_activations = []
    h = x
    last = len(model.weights) - 1
    for j, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = h @ w.T + b
        pre_activations.append(z)
        if j != last:
            h = np.maximum(z, 0.0)
            hidden_activations.append(h)
    outputs = pre_activations[-1][:, 0]
    cache = BatchCache(
        inputs=x,
        pre_activations=pre_activations,
        hidden_activations=hidden_activations,
        model_version=model.version,
    )
    return outputs, cache


def backward(model: Model, cache: BatchCache, output_grads) -> None:
    """Accumulate d(sum_i output_grads[i] * score_i)/d(params) into the
    model's gradient arrays.

    The rectifier uses subgradient 0 at exactly zero pre-activation.
    """
    if cache.model_version != model.version:
        raise StaleCacheError(
            "forward cache predates a parameter update; rerun forward"
        )
    u = np.asarray(output_grads, dtype=np.float64)
    n = cache.inputs.shape[0]
    if u.shape != (n,):
        raise ConfigurationError(
            f"output_grads must have shape ({n},), got {u.shape}"
        )
    dz = u[:, None]
    for j in range(len(model.weights) - 1, -1, -1):
        h_prev = cache.inputs if j == 0 else cache.hidden_activations[j - 1]
        model.grad_weights[j] += dz.T @ h_prev
        model.grad_biases[j] += dz.sum(axis=0)
        if j > 0:
            dh = dz @ model.weights[j]
            dz = dh * (cache.pre_activations[j - 1] > 0.0)
    model.grads_fresh = True


def predict_labels(model: Model, inputs) -> np.ndarray:
    """Hard labels: +1 iff the score is strictly positive, else -1."""
    outputs, _ = forward(model, inputs)
    return np.where(outputs > 0.0, 1, -1)


def frobenius_norms(model: Model) -> list[float]:
    """Per-layer Frobenius norms of the weight matrices (biases excluded)."""
    return [float(np.sqrt(np.sum(w * w))) for w in model.weights]


def save_model(model: Model, path) -> None:
    """Write a checkpoint.

    Layout: magic "UUML", format version (u32), architecture kind (u8),
    width count (u32), widths (u32 each), then per layer the weight matrix
    (row-major) followed by the bias vector, all little-endian float64.
    """
    with open(path, "wb") as fh:
        fh.write(CHECKPOINT_MAGIC)
        fh.write(struct.pack("<I", CHECKPOINT_VERSION))
        fh.write(struct.pack("<B", _ARCH_CODES[model.arch.kind]))
        fh.write(struct.pack("<I", len(model.arch.widths)))
        for w in model.arch.widths:
            fh.write(struct.pack("<I", w))
        for w, b in zip(model.weights, model.biases):
            fh.write(np.ascontiguousarray(w, dtype="<f8").tobytes())
            fh.write(np.ascontiguousarray(b, dtype="<f8").tobytes())


def load_model(path) -> Model:
    """Read a checkpoint written by :func:`save_model`.  Gradients start
    zeroed."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != CHECKPOINT_MAGIC:
        raise ConfigurationError(f"not a model checkpoint: bad magic {blob[:4]!r}")
    (version,) = struct.unpack_from("<I", blob, 4)
    if version != CHECKPOINT_VERSION:
        raise ConfigurationError(f"unsupported checkpoint version {version}")
    (kind_code,) = struct.unpack_from("<B", blob, 8)
    if kind_code not in _ARCH_NAMES:
        raise ConfigurationError(f"unknown architecture code {kind_code}")
    (n_widths,) = struct.unpack_from("<I", blob, 9)
    offset = 13
    widths = struct.unpack_from(f"<{n_widths}I", blob, offset)
    offset += 4 * n_widths
    arch = Architecture(tuple(widths), _ARCH_NAMES[kind_code])
    param_count = sum(
        fan_out * fan_in + fan_out
        for fan_in, fan_out in zip(arch.widths[:-1], arch.widths[1:])
    )
    expected = offset + 8 * param_count
    if len(blob) != expected:
        raise ConfigurationError(
            f"checkpoint length mismatch: expected {expected} bytes, file has {len(blob)}"
        )
    weights, biases = [], []
    for fan_in, fan_out in zip(arch.widths[:-1], arch.widths[1:]):
        w = np.frombuffer(blob, dtype="<f8", count=fan_out * fan_in, offset=offset)
        weights.append(w.reshape(fan_out, fan_in).copy())
        offset += 8 * fan_out * fan_in
        b = np.frombuffer(blob, dtype="<f8", count=fan_out, offset=offset)
        biases.append(b.copy())
        offset += 8 * fan_out
    return Model(arch=arch, weights=weights, biases=biases)
