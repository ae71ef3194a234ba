"""Risk estimators against hand-computed fixtures and algebraic properties."""

import math

import numpy as np
import pytest

from uulearn import (
    CorrectionSpec,
    LossKind,
    RiskCoefficients,
    UURiskParts,
    ber_zero_one,
    compute_coefficients,
    empirical_pn_risk,
    uu_biased_risk,
    uu_corrected_risk,
    uu_risk_parts,
    uu_unbiased_risk,
)
from uulearn.errors import InsufficientDataError, UndefinedMetricError

LN2 = math.log(2.0)


def logistic_scalar(z: float) -> float:
    # independent scalar path for oracle arithmetic
    return math.log1p(math.exp(-z)) if z > -500 else -z


def make_parts(A, B, C, D, n=10, n_prime=10):
    return UURiskParts(
        pos_larger=A, neg_larger=B, pos_smaller=C, neg_smaller=D, n=n, n_prime=n_prime
    )


class TestEmpiricalPnRisk:
    def test_constant_loss_collapse(self):
        for pi_p in (0.1, 0.5, 0.9):
            assert empirical_pn_risk([LN2] * 4, [LN2] * 7, pi_p) == pytest.approx(LN2, abs=1e-15)

    def test_hand_value(self):
        assert empirical_pn_risk([0.2, 0.4], [0.6], 0.5) == pytest.approx(0.45, abs=1e-15)

    def test_degenerate_prior_weight(self):
        assert empirical_pn_risk([0.2, 0.4], [0.9], 1.0) == pytest.approx(0.3, abs=1e-15)

    def test_empty_rejected(self):
        with pytest.raises(InsufficientDataError):
            empirical_pn_risk([], [0.1], 0.5)
        with pytest.raises(InsufficientDataError):
            empirical_pn_risk([0.1], [], 0.5)


class TestUURiskParts:
    def test_constant_zero_classifier_collapses_to_ln2(self):
        for theta, theta_prime, pi_p in [(0.6, 0.4, 0.5), (0.8, 0.2, 0.4), (0.9, 0.3, 0.7)]:
            k = compute_coefficients(theta, theta_prime, pi_p)
            parts = uu_risk_parts(k, np.zeros(5), np.zeros(8), LossKind.LOGISTIC)
            assert uu_unbiased_risk(parts) == pytest.approx(LN2, abs=1e-12)

    def test_clean_labels_reduction_matches_pn(self):
        rng = np.random.default_rng(5)
        k = compute_coefficients(1.0, 0.0, 0.35, allow_boundaries=True)
        out_pos = rng.standard_normal(40)
        out_neg = rng.standard_normal(30)
        parts = uu_risk_parts(k, out_pos, out_neg, LossKind.LOGISTIC)
        expected = empirical_pn_risk(
            [logistic_scalar(z) for z in out_pos],
            [logistic_scalar(-z) for z in out_neg],
            0.35,
        )
        assert uu_unbiased_risk(parts) == pytest.approx(expected, abs=1e-12)

    def test_six_sample_hand_fixture(self):
        k = compute_coefficients(0.7, 0.3, 0.4)
        out = np.array([0.5, -1.2, 2.0])
        out_prime = np.array([-0.3, 0.8, -2.5])
        parts = uu_risk_parts(k, out, out_prime, LossKind.LOGISTIC)
        mean_plus = sum(logistic_scalar(z) for z in out) / 3
        mean_minus = sum(logistic_scalar(-z) for z in out) / 3
        mean_plus_p = sum(logistic_scalar(z) for z in out_prime) / 3
        mean_minus_p = sum(logistic_scalar(-z) for z in out_prime) / 3
        assert parts.pos_larger == pytest.approx(k.a * mean_plus, abs=1e-12)
        assert parts.neg_larger == pytest.approx(k.b * mean_minus, abs=1e-12)
        assert parts.pos_smaller == pytest.approx(k.c * mean_plus_p, abs=1e-12)
        assert parts.neg_smaller == pytest.approx(k.d * mean_minus_p, abs=1e-12)
        assert parts.n == 3 and parts.n_prime == 3

    def test_grouping_agreement(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            A, B, C, D = rng.uniform(0, 5, size=4)
            parts = make_parts(A, B, C, D)
            direct = A - B - C + D
            grouped = parts.pos_group + parts.neg_group
            assert abs(direct - grouped) < 1e-12
            assert uu_unbiased_risk(parts) == pytest.approx(direct, abs=1e-12)

    def test_exchangeability_after_normalization(self):
        rng = np.random.default_rng(23)
        out_large = rng.standard_normal(12)
        out_small = rng.standard_normal(9)
        k_fwd = compute_coefficients(0.7, 0.3, 0.45)
        k_swapped = compute_coefficients(0.3, 0.7, 0.45)
        parts_fwd = uu_risk_parts(k_fwd, out_large, out_small, LossKind.SIGMOID)
        parts_swapped = uu_risk_parts(k_swapped, out_large, out_small, LossKind.SIGMOID)
        assert uu_unbiased_risk(parts_fwd) == uu_unbiased_risk(parts_swapped)

    def test_empty_batch_rejected(self):
        k = compute_coefficients(0.6, 0.4, 0.5)
        with pytest.raises(InsufficientDataError):
            uu_risk_parts(k, np.array([]), np.zeros(3), LossKind.LOGISTIC)


class TestCorrectedRisk:
    def test_hand_values(self):
        parts = make_parts(0.2, 0.1, 0.5, 0.3)
        assert uu_unbiased_risk(parts) == pytest.approx(-0.1, abs=1e-15)
        assert uu_corrected_risk(parts, CorrectionSpec.hard_max()).value == pytest.approx(0.2, abs=1e-15)
        assert uu_corrected_risk(parts, CorrectionSpec.leaky(-1.0)).value == pytest.approx(0.5, abs=1e-15)
        assert uu_corrected_risk(parts, CorrectionSpec.leaky(-0.5)).value == pytest.approx(0.35, abs=1e-15)

    def test_cancellation(self):
        parts = make_parts(0.4, 0.2, 0.4, 0.2)
        assert uu_unbiased_risk(parts) == 0.0

    def test_identity_equals_unbiased(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            parts = make_parts(*rng.uniform(0, 3, size=4))
            corrected = uu_corrected_risk(parts, CorrectionSpec.identity())
            assert corrected.value == pytest.approx(uu_unbiased_risk(parts), abs=1e-15)

    def test_domination_properties(self):
        rng = np.random.default_rng(9)
        specs = [CorrectionSpec.hard_max(), CorrectionSpec.leaky(-0.5), CorrectionSpec.leaky(-1.0)]
        for _ in range(300):
            parts = make_parts(*rng.uniform(0, 3, size=4))
            unbiased = uu_unbiased_risk(parts)
            for spec in specs:
                corrected = uu_corrected_risk(parts, spec)
                assert corrected.value >= 0.0
                assert corrected.value >= unbiased - 1e-15
                if parts.pos_group >= 0.0 and parts.neg_group >= 0.0:
                    assert corrected.value == pytest.approx(unbiased, abs=1e-15)


class TestBiasedRisk:
    def test_constant_zero(self):
        assert uu_biased_risk(np.zeros(4), np.zeros(4), LossKind.LOGISTIC) == pytest.approx(
            LN2, abs=1e-15
        )

    def test_symmetric_batches(self):
        rng = np.random.default_rng(31)
        out = rng.standard_normal(20)
        value = uu_biased_risk(out, -out, LossKind.LOGISTIC)
        expected = np.mean([logistic_scalar(z) for z in out])
        assert value == pytest.approx(expected, abs=1e-12)

    def test_four_sample_hand_fixture(self):
        out = np.array([0.5, -1.0])
        out_prime = np.array([2.0, -0.25])
        value = uu_biased_risk(out, out_prime, LossKind.LOGISTIC)
        expected = 0.5 * (logistic_scalar(0.5) + logistic_scalar(-1.0)) / 2 + 0.5 * (
            logistic_scalar(-2.0) + logistic_scalar(0.25)
        ) / 2
        assert value == pytest.approx(expected, abs=1e-12)

    def test_unequal_sizes_warn(self):
        with pytest.warns(UserWarning):
            uu_biased_risk(np.zeros(3), np.zeros(5), LossKind.LOGISTIC)


class TestBalancedError:
    def test_perfect(self):
        assert ber_zero_one([1, 1, -1], [1, 1, -1]) == 0.0

    def test_all_positive_predictor(self):
        assert ber_zero_one([1, 1, 1, -1], [1, 1, 1, 1]) == 0.5
        assert ber_zero_one([1, -1, -1, -1], [1, 1, 1, 1]) == 0.5

    def test_hand_counts(self):
        labels = [1, 1, 1, 1, -1, -1]
        preds = [1, 1, 1, -1, -1, 1]
        assert ber_zero_one(labels, preds) == pytest.approx(0.375, abs=1e-15)

    def test_missing_class(self):
        with pytest.raises(UndefinedMetricError):
            ber_zero_one([1, 1], [1, -1])
