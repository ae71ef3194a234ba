"""Prior-to-coefficient mapping: hand values, algebraic identities, and
normalization behaviour."""

import numpy as np
import pytest

from uulearn import compute_coefficients
from uulearn.errors import ConfigurationError, DegeneratePriorsError


class TestHandValues:
    def test_supervised_reduction_boundary(self):
        k = compute_coefficients(1.0, 0.0, 0.5, allow_boundaries=True)
        assert (k.a, k.b, k.c, k.d) == (0.5, 0.0, 0.0, 0.5)

    def test_symmetric_narrow_gap(self):
        k = compute_coefficients(0.6, 0.4, 0.5)
        assert k.a == pytest.approx(1.5, abs=1e-12)
        assert k.b == pytest.approx(1.0, abs=1e-12)
        assert k.c == pytest.approx(1.0, abs=1e-12)
        assert k.d == pytest.approx(1.5, abs=1e-12)

    def test_asymmetric_prior(self):
        k = compute_coefficients(0.8, 0.2, 0.4)
        assert k.a == pytest.approx(8 / 15, abs=1e-12)
        assert k.b == pytest.approx(0.2, abs=1e-12)
        assert k.c == pytest.approx(2 / 15, abs=1e-12)
        assert k.d == pytest.approx(0.8, abs=1e-12)
        assert k.a - k.c == pytest.approx(0.4, abs=1e-12)
        assert k.d - k.b == pytest.approx(0.6, abs=1e-12)


class TestIdentities:
    def test_identities_on_random_grid(self):
        rng = np.random.default_rng(42)
        checked = 0
        while checked < 1000:
            theta, theta_prime, pi_p = rng.uniform(0.001, 0.999, size=3)
            if abs(theta - theta_prime) <= 1e-3:
                continue
            k = compute_coefficients(theta, theta_prime, pi_p)
            assert abs((k.a - k.c) - pi_p) < 1e-12
            assert abs((k.d - k.b) - (1.0 - pi_p)) < 1e-12
            assert min(k.a, k.b, k.c, k.d) >= 0.0
            checked += 1

    def test_swap_normalization(self):
        k1 = compute_coefficients(0.7, 0.3, 0.45)
        k2 = compute_coefficients(0.3, 0.7, 0.45)
        assert k1 == k2
        assert k1.theta == 0.7 and k1.theta_prime == 0.3

    def test_pi_n_and_sum(self):
        k = compute_coefficients(0.8, 0.2, 0.4)
        assert k.pi_n == pytest.approx(0.6)
        assert k.coefficient_sum == pytest.approx(k.a + k.b + k.c + k.d)


class TestValidation:
    def test_degenerate_priors(self):
        with pytest.raises(DegeneratePriorsError):
            compute_coefficients(0.5, 0.5, 0.5)
        with pytest.raises(DegeneratePriorsError):
            compute_coefficients(0.5, 0.5 + 1e-9, 0.5)

    def test_custom_gap(self):
        compute_coefficients(0.50, 0.48, 0.5, min_gap=0.01)
        with pytest.raises(DegeneratePriorsError):
            compute_coefficients(0.50, 0.495, 0.5, min_gap=0.01)

    def test_boundary_priors_need_opt_in(self):
        with pytest.raises(ConfigurationError):
            compute_coefficients(1.0, 0.0, 0.5)
        compute_coefficients(1.0, 0.0, 0.5, allow_boundaries=True)

    def test_pi_p_strictly_interior(self):
        with pytest.raises(ConfigurationError):
            compute_coefficients(0.8, 0.2, 0.0)
        with pytest.raises(ConfigurationError):
            compute_coefficients(0.8, 0.2, 1.0, allow_boundaries=True)

    def test_non_finite_rejected(self):
        with pytest.raises(ConfigurationError):
            compute_coefficients(np.nan, 0.2, 0.5)
