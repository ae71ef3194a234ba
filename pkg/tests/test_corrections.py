"""Correction family: values, subgradients, and the defining properties
(non-negative, Lipschitz, identity on the non-negative half line)."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from uulearn import CorrectionSpec, correction_apply, correction_subgrad
from uulearn.errors import ConfigurationError, InputDomainError

NON_IDENTITY = [
    CorrectionSpec.hard_max(),
    CorrectionSpec.leaky(-0.5),
    CorrectionSpec.leaky(-1.0),
    CorrectionSpec.leaky(0.0),
]

finite_reals = st.floats(
    min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False
)


class TestApply:
    def test_absolute_value(self):
        assert correction_apply(CorrectionSpec.leaky(-1.0), -2.0) == 2.0

    def test_hard_max(self):
        spec = CorrectionSpec.hard_max()
        assert correction_apply(spec, -2.0) == 0.0
        assert correction_apply(spec, 3.0) == 3.0

    def test_leaky_half(self):
        assert correction_apply(CorrectionSpec.leaky(-0.5), -0.3) == pytest.approx(0.15, abs=1e-15)

    def test_identity_passes_negatives(self):
        assert correction_apply(CorrectionSpec.identity(), -4.2) == -4.2

    def test_positive_slope_rejected(self):
        with pytest.raises(ConfigurationError):
            CorrectionSpec.leaky(0.3)

    def test_non_finite_input_rejected(self):
        with pytest.raises(InputDomainError):
            correction_apply(CorrectionSpec.hard_max(), np.nan)

    def test_hard_max_equals_leaky_zero(self):
        x = np.linspace(-5, 5, 101)
        np.testing.assert_array_equal(
            correction_apply(CorrectionSpec.hard_max(), x),
            correction_apply(CorrectionSpec.leaky(0.0), x),
        )


class TestSubgrad:
    def test_negative_branch_slope(self):
        assert correction_subgrad(CorrectionSpec.leaky(-1.0), -5.0) == -1.0
        assert correction_subgrad(CorrectionSpec.hard_max(), -5.0) == 0.0

    def test_identity_branch(self):
        assert correction_subgrad(CorrectionSpec.hard_max(), 2.0) == 1.0

    def test_kink_tie_break_is_one(self):
        for spec in NON_IDENTITY:
            assert correction_subgrad(spec, 0.0) == 1.0


class TestDefinitionProperties:
    @pytest.mark.parametrize("spec", NON_IDENTITY, ids=lambda s: s.label)
    @given(x=finite_reals)
    def test_non_negative_dominating_identity_on_positives(self, spec, x):
        fx = correction_apply(spec, x)
        assert fx >= 0.0
        assert fx >= x
        if x >= 0.0:
            assert fx == x

    @pytest.mark.parametrize("spec", NON_IDENTITY + [CorrectionSpec.identity()], ids=lambda s: s.label)
    @given(x=finite_reals, y=finite_reals)
    def test_lipschitz(self, spec, x, y):
        lhs = abs(correction_apply(spec, x) - correction_apply(spec, y))
        assert lhs <= spec.lipschitz * abs(x - y) * (1 + 1e-12) + 1e-12

    def test_lipschitz_constants(self):
        assert CorrectionSpec.identity().lipschitz == 1.0
        assert CorrectionSpec.hard_max().lipschitz == 1.0
        assert CorrectionSpec.leaky(-0.5).lipschitz == 1.0
        assert CorrectionSpec.leaky(-2.5).lipschitz == 2.5

    def test_labels(self):
        assert CorrectionSpec.hard_max().label == "hard_max"
        assert CorrectionSpec.leaky(-0.5).label == "leaky-0.5"
        assert CorrectionSpec.identity().label == "identity"

    def test_invalid_kind_combinations(self):
        with pytest.raises(ConfigurationError):
            CorrectionSpec("identity", 0.5)
        with pytest.raises(ConfigurationError):
            CorrectionSpec("hard_max", -0.5)
        with pytest.raises(ConfigurationError):
            CorrectionSpec("warp", 0.0)
