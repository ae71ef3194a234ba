"""Model initialization, forward/backward exactness, and checkpoint IO."""

import numpy as np
import pytest

from uulearn import (
    Architecture,
    Model,
    backward,
    forward,
    frobenius_norms,
    load_model,
    model_init,
    predict_labels,
    save_model,
)
from uulearn.errors import ConfigurationError, StaleCacheError


def linear_model(w, b):
    w = np.atleast_2d(np.asarray(w, dtype=float))
    model = Model(
        arch=Architecture.linear(w.shape[1]),
        weights=[w.copy()],
        biases=[np.array([float(b)])],
    )
    return model


def scalar_objective(model, x, u):
    """Independent evaluation of sum_i u_i * g(x_i) used as the FD oracle."""
    out, _ = forward(model, x)
    return float(np.dot(u, out))


def hidden_sign_pattern(model, x):
    _, cache = forward(model, x)
    return b"".join((z > 0).tobytes() for z in cache.pre_activations[:-1])


class TestInit:
    def test_deterministic(self):
        a = model_init(Architecture.linear(4), seed=7)
        b = model_init(Architecture.linear(4), seed=7)
        for wa, wb in zip(a.weights, b.weights):
            np.testing.assert_array_equal(wa, wb)

    def test_shapes(self):
        m = model_init(Architecture.mlp([4, 8, 1]), seed=1)
        assert [w.shape for w in m.weights] == [(8, 4), (1, 8)]
        assert [b.shape for b in m.biases] == [(8,), (1,)]
        assert [g.shape for g in m.grad_weights] == [(8, 4), (1, 8)]

    def test_seed_sensitivity(self):
        a = model_init(Architecture.mlp([4, 8, 1]), seed=1)
        b = model_init(Architecture.mlp([4, 8, 1]), seed=2)
        assert not np.array_equal(a.weights[0], b.weights[0])

    def test_scale_and_zero_biases(self):
        m = model_init(Architecture.mlp([16, 32, 1]), seed=0)
        assert np.abs(m.weights[0]).max() <= 1.0 / 4.0
        assert np.all(m.biases[0] == 0.0)

    def test_arch_validation(self):
        with pytest.raises(ConfigurationError):
            Architecture.mlp([4, 8, 2])
        with pytest.raises(ConfigurationError):
            Architecture.mlp([4])
        with pytest.raises(ConfigurationError):
            Architecture(widths=(3, 4, 1), kind="linear")


class TestForward:
    def test_zero_model(self):
        m = linear_model([[0.0, 0.0]], 0.0)
        out, _ = forward(m, np.random.default_rng(0).standard_normal((6, 2)))
        np.testing.assert_array_equal(out, np.zeros(6))

    def test_linear_hand_value(self):
        m = linear_model([[1.0, -1.0]], 0.5)
        out, _ = forward(m, np.array([[2.0, 3.0]]))
        assert out[0] == pytest.approx(-0.5, abs=1e-15)

    def test_mlp_hand_unrolled(self):
        m = Model(
            arch=Architecture.mlp([2, 2, 1]),
            weights=[np.array([[1.0, 0.0], [0.0, 1.0]]), np.array([[1.0, -1.0]])],
            biases=[np.array([0.1, -0.2]), np.array([0.05])],
        )
        # z1 = (1.1, -1.2); relu -> (1.1, 0); out = 1.1 - 0 + 0.05 = 1.15
        out, _ = forward(m, np.array([[1.0, -1.0]]))
        assert out[0] == pytest.approx(1.15, abs=1e-15)

    def test_dimension_mismatch(self):
        m = model_init(Architecture.linear(3), seed=0)
        with pytest.raises(ConfigurationError):
            forward(m, np.zeros((2, 4)))

    def test_deterministic_and_side_effect_free(self):
        m = model_init(Architecture.mlp([3, 5, 1]), seed=4)
        x = np.random.default_rng(1).standard_normal((7, 3))
        w_before = [w.copy() for w in m.weights]
        out1, _ = forward(m, x)
        out2, _ = forward(m, x)
        np.testing.assert_array_equal(out1, out2)
        for w, w0 in zip(m.weights, w_before):
            np.testing.assert_array_equal(w, w0)


class TestBackward:
    def test_zero_cotangent(self):
        m = model_init(Architecture.mlp([3, 4, 1]), seed=2)
        x = np.random.default_rng(0).standard_normal((5, 3))
        _, cache = forward(m, x)
        backward(m, cache, np.zeros(5))
        for g in m.gradients():
            np.testing.assert_array_equal(g, np.zeros_like(g))

    def test_linear_closed_form(self):
        m = linear_model([[0.3, -0.7, 0.1]], 0.2)
        rng = np.random.default_rng(3)
        x = rng.standard_normal((8, 3))
        u = rng.standard_normal(8)
        _, cache = forward(m, x)
        backward(m, cache, u)
        np.testing.assert_allclose(m.grad_weights[0][0], u @ x, atol=1e-12)
        assert m.grad_biases[0][0] == pytest.approx(u.sum(), abs=1e-12)

    @pytest.mark.parametrize(
        "arch",
        [Architecture.linear(4), Architecture.mlp([4, 6, 1]), Architecture.mlp([3, 8, 5, 1])],
        ids=lambda a: "x".join(map(str, a.widths)),
    )
    def test_matches_finite_differences(self, arch):
        rng = np.random.default_rng(12)
        step = 1e-5
        for trial in range(20):
            model = model_init(arch, seed=100 + trial)
            x = rng.standard_normal((5, arch.input_dim))
            u = rng.standard_normal(5)
            _, cache = forward(model, x)
            backward(model, cache, u)
            analytic = [g.copy() for g in model.gradients()]
            for param, grad in zip(model.parameters(), analytic):
                fp, fg = param.reshape(-1), grad.reshape(-1)
                for idx in range(fp.size):
                    orig = fp[idx]
                    fp[idx] = orig + step
                    up = scalar_objective(model, x, u)
                    sig_up = hidden_sign_pattern(model, x)
                    fp[idx] = orig - step
                    down = scalar_objective(model, x, u)
                    sig_down = hidden_sign_pattern(model, x)
                    fp[idx] = orig
                    if sig_up != sig_down:
                        continue
                    fd = (up - down) / (2 * step)
                    denom = max(abs(fg[idx]), abs(fd), 1e-6)
                    assert abs(fg[idx] - fd) / denom < 1e-5

    def test_stale_cache_detected(self):
        m = model_init(Architecture.linear(2), seed=0)
        x = np.zeros((3, 2))
        _, cache = forward(m, x)
        m.bump_version()
        with pytest.raises(StaleCacheError):
            backward(m, cache, np.zeros(3))

    def test_accumulation_across_calls(self):
        m = linear_model([[1.0]], 0.0)
        x = np.array([[2.0]])
        u = np.array([1.0])
        _, cache = forward(m, x)
        backward(m, cache, u)
        backward(m, cache, u)
        assert m.grad_weights[0][0, 0] == pytest.approx(4.0)


class TestPredictAndNorms:
    def test_zero_model_boundary_convention(self):
        m = linear_model([[0.0]], 0.0)
        np.testing.assert_array_equal(predict_labels(m, np.zeros((4, 1))), -np.ones(4))

    def test_positive_margin(self):
        m = linear_model([[1.0, 0.0]], 0.0)
        assert predict_labels(m, np.array([[3.0, -9.0]]))[0] == 1

    def test_sign_with_boundary_rule(self):
        m = linear_model([[1.0]], 0.0)
        labels = predict_labels(m, np.array([[0.1], [-0.1], [0.0]]))
        np.testing.assert_array_equal(labels, [1, -1, -1])

    def test_frobenius_hand_values(self):
        m = linear_model([[3.0, 4.0]], 0.0)
        assert frobenius_norms(m) == [pytest.approx(5.0, abs=1e-15)]
        z = model_init(Architecture.mlp([3, 4, 1]), seed=0)
        for w in z.weights:
            w.fill(0.0)
        assert frobenius_norms(z) == [0.0, 0.0]

    def test_frobenius_brute_force(self):
        m = model_init(Architecture.mlp([5, 7, 1]), seed=9)
        norms = frobenius_norms(m)
        for norm, w in zip(norms, m.weights):
            total = 0.0
            for row in w:
                for value in row:
                    total += float(value) ** 2
            assert norm == pytest.approx(np.sqrt(total), rel=1e-12)

    def test_positive_homogeneity_of_body(self):
        m = model_init(Architecture.mlp([4, 6, 5, 1]), seed=3)
        x = np.random.default_rng(8).standard_normal((10, 4))
        _, cache = forward(m, x)
        base = cache.hidden_activations[-1].copy()
        alpha = 2.7
        m.weights[-2] *= alpha
        m.biases[-2] *= alpha
        _, cache2 = forward(m, x)
        np.testing.assert_allclose(cache2.hidden_activations[-1], alpha * base, rtol=1e-12)


class TestCheckpoint:
    def test_round_trip_bitwise(self, tmp_path):
        m = model_init(Architecture.mlp([6, 4, 1]), seed=5)
        path = tmp_path / "model.uuml"
        save_model(m, path)
        loaded = load_model(path)
        assert loaded.arch == m.arch
        for wa, wb in zip(m.weights, loaded.weights):
            np.testing.assert_array_equal(wa, wb)
        for ba, bb in zip(m.biases, loaded.biases):
            np.testing.assert_array_equal(ba, bb)

    def test_magic_bytes(self, tmp_path):
        m = model_init(Architecture.linear(2), seed=0)
        path = tmp_path / "model.uuml"
        save_model(m, path)
        assert path.read_bytes()[:4] == b"UUML"

    def test_bad_magic_rejected(self, tmp_path):
        path = tmp_path / "junk.uuml"
        path.write_bytes(b"NOPE" + bytes(32))
        with pytest.raises(ConfigurationError):
            load_model(path)

    def test_truncated_rejected(self, tmp_path):
        m = model_init(Architecture.linear(2), seed=0)
        path = tmp_path / "model.uuml"
        save_model(m, path)
        path.write_bytes(path.read_bytes()[:-4])
        with pytest.raises(ConfigurationError):
            load_model(path)
