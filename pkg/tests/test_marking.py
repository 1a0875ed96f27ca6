"""Marked-interferometer joints: closed forms against the Born-rule projection path."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings

from quasijoint import (
    CompositeState,
    DiscreteJoint,
    MarkerConfig,
    PhaseDensity,
    PhaseJoint,
    PureState,
    analyzer_states,
    bloch_from_state,
    born_joint_discrete,
    born_joint_phase,
    entangled_state,
    evaluate_phase_density,
    gamma_coefficients,
    marginal_phase,
    marginal_x,
    marginal_z,
    marginal_z_of_phase,
    operational_joint_discrete,
    operational_joint_phase,
    phase_grid,
)
from helpers import any_configs, haar_state, pure_states

SQRT1_2 = 1.0 / math.sqrt(2.0)
TWO_PI = 2.0 * math.pi


class TestMarkerConfig:
    def test_canonical_range(self):
        cfg = MarkerConfig(-0.3, 4.0)
        assert 0.0 <= cfg.theta < math.pi
        assert 0.0 <= cfg.vartheta < math.pi

    def test_reduction_is_idempotent(self):
        cfg = MarkerConfig(0.7, 2.9)
        again = MarkerConfig(cfg.theta, cfg.vartheta)
        assert (again.theta, again.vartheta) == (cfg.theta, cfg.vartheta)

    def test_analyzer_shift_by_pi_is_exact_equivalence(self):
        state = PureState(0.6, 0.8)
        base = operational_joint_discrete(state, MarkerConfig(0.5, 0.9))
        shifted = operational_joint_discrete(state, MarkerConfig(0.5, 0.9 + math.pi))
        np.testing.assert_allclose(base.as_array(), shifted.as_array(), atol=1e-12)

    def test_marking_shift_by_pi_flips_the_fringe(self):
        # the documented caveat: the mod-pi representative of theta + pi
        # reproduces the literal statistics at theta + pi only after x -> -x
        theta, vartheta = 0.4, 1.1
        cfg = MarkerConfig(theta, vartheta)
        g = gamma_coefficients(cfg)
        diff = vartheta - (theta + math.pi)
        literal_gx_plus = math.cos(diff) * math.cos(vartheta)
        assert literal_gx_plus == pytest.approx(-g.gx_plus, abs=1e-12)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            MarkerConfig(float("inf"), 0.0)


class TestAnalyzerStates:
    def test_aligned(self):
        plus, minus = analyzer_states(0.0)
        np.testing.assert_array_equal(plus, [1.0, 0.0])
        np.testing.assert_array_equal(minus, [0.0, 1.0])

    def test_perpendicular(self):
        plus, minus = analyzer_states(math.pi / 2)
        np.testing.assert_allclose(plus, [0.0, 1.0], atol=1e-15)
        np.testing.assert_allclose(minus, [-1.0, 0.0], atol=1e-15)

    def test_diagonal(self):
        plus, minus = analyzer_states(math.pi / 4)
        np.testing.assert_allclose(plus, [SQRT1_2, SQRT1_2], atol=1e-15)
        np.testing.assert_allclose(minus, [-SQRT1_2, SQRT1_2], atol=1e-15)

    @given(any_configs())
    def test_orthonormal(self, cfg):
        plus, minus = analyzer_states(cfg.vartheta)
        assert abs(float(plus @ minus)) <= 1e-15
        assert float(plus @ plus) == pytest.approx(1.0, abs=1e-15)
        assert float(minus @ minus) == pytest.approx(1.0, abs=1e-15)


class TestGammaCoefficients:
    def test_unmarked_aligned(self):
        g = gamma_coefficients(MarkerConfig(0.0, 0.0))
        assert (g.g0_plus, g.g0_minus) == (1.0, 0.0)
        assert (g.gx_plus, g.gx_minus) == (1.0, 0.0)
        assert (g.gz_plus, g.gz_minus) == (0.0, 0.0)

    def test_diagonal_marking_and_analyzer(self):
        # direct trigonometric evaluation: gamma_0 = (1 + 1/2)/2, etc.
        g = gamma_coefficients(MarkerConfig(math.pi / 4, math.pi / 4))
        assert g.g0_plus == pytest.approx(0.75, abs=1e-12)
        assert g.g0_minus == pytest.approx(0.25, abs=1e-12)
        assert g.gx_plus == pytest.approx(SQRT1_2, abs=1e-12)
        assert g.gx_minus == pytest.approx(0.0, abs=1e-12)
        assert g.gz_plus == pytest.approx(0.25, abs=1e-12)
        assert g.gz_minus == pytest.approx(0.25, abs=1e-12)

    def test_full_marking_gives_signed_fringe_weights(self):
        g = gamma_coefficients(MarkerConfig(math.pi / 2, math.pi / 4))
        assert g.gx_plus == pytest.approx(0.5, abs=1e-12)
        assert g.gx_minus == pytest.approx(-0.5, abs=1e-12)

    @given(any_configs())
    def test_invariants(self, cfg):
        g = gamma_coefficients(cfg)
        assert g.g0_plus + g.g0_minus == pytest.approx(1.0, abs=1e-12)
        assert g.gx_plus + g.gx_minus == pytest.approx(math.cos(cfg.theta), abs=1e-12)
        direct = 0.5 * (math.cos(2 * cfg.vartheta - 2 * cfg.theta) - math.cos(2 * cfg.vartheta))
        assert g.gz_plus + g.gz_minus == pytest.approx(direct, abs=1e-12)


class TestEntangledState:
    def test_full_marking_of_upper_path(self):
        composite = entangled_state(PureState(1, 0), math.pi / 2)
        np.testing.assert_allclose(
            composite.as_array(), [[0.0, 1.0], [0.0, 0.0]], atol=1e-15
        )

    def test_lower_path_never_marked(self):
        composite = entangled_state(PureState(0, 1), 1.234)
        assert composite.lower_right == 1.0
        assert composite.lower_up == 0.0
        assert composite.upper_right == 0.0

    def test_balanced_state_half_marking(self):
        composite = entangled_state(PureState(SQRT1_2, SQRT1_2), math.pi / 4)
        assert composite.upper_right == pytest.approx(0.5, abs=1e-12)
        assert composite.upper_up == pytest.approx(0.5, abs=1e-12)
        assert abs(composite.lower_right) == pytest.approx(SQRT1_2, abs=1e-12)

    @given(pure_states(), any_configs())
    def test_unit_norm(self, state, cfg):
        arr = entangled_state(state, cfg.theta).as_array()
        assert float(np.sum(np.abs(arr) ** 2)) == pytest.approx(1.0, abs=1e-12)

    def test_composite_validation(self):
        with pytest.raises(ValueError):
            CompositeState(1.0, 1.0, 0.0, 0.0)


class TestOperationalJointDiscrete:
    def test_unmarked_aligned_fringe_eigenstate(self):
        state = PureState(SQRT1_2, SQRT1_2)
        joint = operational_joint_discrete(state, MarkerConfig(0.0, 0.0))
        oracle = born_joint_discrete(state, MarkerConfig(0.0, 0.0))
        assert joint.value(1, 1) == pytest.approx(1.0, abs=1e-12)
        for (x, z), value in joint.items():
            assert value == pytest.approx(oracle.value(x, z), abs=1e-12)
            if (x, z) != (1, 1):
                assert value == pytest.approx(0.0, abs=1e-12)

    def test_fully_marked_upper_path(self):
        cfg = MarkerConfig(math.pi / 2, math.pi / 2)
        state = PureState(1, 0)
        joint = operational_joint_discrete(state, cfg)
        oracle = born_joint_discrete(state, cfg)
        # upper path is rotated to |up>, which the analyzer reads as z = +1
        assert joint.value(1, 1) == pytest.approx(0.5, abs=1e-12)
        assert joint.value(-1, 1) == pytest.approx(0.5, abs=1e-12)
        assert joint.value(1, -1) == pytest.approx(0.0, abs=1e-12)
        np.testing.assert_allclose(joint.as_array(), oracle.as_array(), atol=1e-12)

    def test_lower_path_with_aligned_analyzer(self):
        joint = operational_joint_discrete(PureState(0, 1), MarkerConfig(0.77, 0.0))
        assert joint.value(1, 1) == pytest.approx(0.5, abs=1e-12)
        assert joint.value(-1, 1) == pytest.approx(0.5, abs=1e-12)
        assert joint.value(1, -1) == pytest.approx(0.0, abs=1e-12)

    @given(pure_states(), any_configs())
    @settings(max_examples=150)
    def test_matches_born_rule(self, state, cfg):
        closed = operational_joint_discrete(state, cfg)
        direct = born_joint_discrete(state, cfg)
        np.testing.assert_allclose(closed.as_array(), direct.as_array(), atol=1e-12)


class TestOperationalJointPhase:
    def test_basis_state_unmarked(self):
        joint = operational_joint_phase(PureState(1, 0), MarkerConfig(0.0, 0.0))
        assert joint.plus.c0 == pytest.approx(1.0 / TWO_PI, abs=1e-12)
        assert joint.plus.c_cos == 0.0
        assert joint.plus.c_sin == 0.0
        assert joint.minus.c0 == pytest.approx(0.0, abs=1e-12)

    def test_fringe_eigenstate_unmarked(self):
        joint = operational_joint_phase(PureState(SQRT1_2, SQRT1_2), MarkerConfig(0.0, 0.0))
        assert joint.plus.c_cos == pytest.approx(1.0 / TWO_PI, abs=1e-12)
        assert joint.minus.c0 == pytest.approx(0.0, abs=1e-12)

    def test_circular_state_against_projection(self):
        state = PureState(SQRT1_2, 1j * SQRT1_2)
        cfg = MarkerConfig(math.pi / 3, math.pi / 3)
        joint = operational_joint_phase(state, cfg)
        phi = phase_grid(64)
        direct = born_joint_phase(state, cfg, phi)
        np.testing.assert_allclose(evaluate_phase_density(joint.plus, phi), direct[:, 0], atol=1e-12)
        np.testing.assert_allclose(evaluate_phase_density(joint.minus, phi), direct[:, 1], atol=1e-12)

    @given(pure_states(), any_configs())
    @settings(max_examples=80)
    def test_matches_born_rule_on_grid(self, state, cfg):
        joint = operational_joint_phase(state, cfg)
        phi = phase_grid(64)
        direct = born_joint_phase(state, cfg, phi)
        np.testing.assert_allclose(evaluate_phase_density(joint.plus, phi), direct[:, 0], atol=1e-12)
        np.testing.assert_allclose(evaluate_phase_density(joint.minus, phi), direct[:, 1], atol=1e-12)


class TestMarginals:
    def test_fringe_marginal_of_unmarked_eigenstate(self):
        joint = operational_joint_discrete(PureState(SQRT1_2, SQRT1_2), MarkerConfig(0.0, 0.0))
        assert marginal_x(joint).p_plus == pytest.approx(1.0, abs=1e-12)

    def test_analyzer_marginal_of_fully_marked_upper(self):
        joint = operational_joint_discrete(PureState(1, 0), MarkerConfig(math.pi / 2, math.pi / 2))
        assert marginal_z(joint).p_plus == pytest.approx(1.0, abs=1e-12)

    @given(pure_states(), any_configs())
    def test_fringe_marginal_formula(self, state, cfg):
        e = bloch_from_state(state)
        joint = operational_joint_discrete(state, cfg)
        expected = 0.5 * (1.0 + math.cos(cfg.theta) * e.ex)
        assert marginal_x(joint).p_plus == pytest.approx(expected, abs=1e-12)

    @given(pure_states(), any_configs())
    def test_analyzer_marginal_formula(self, state, cfg):
        e = bloch_from_state(state)
        g = gamma_coefficients(cfg)
        joint = operational_joint_discrete(state, cfg)
        for z in (1, -1):
            expected = g.g0(z) + z * g.gz(z) * e.ez
            assert marginal_z(joint).probability(z) == pytest.approx(expected, abs=1e-12)

    @given(pure_states(), any_configs())
    def test_phase_marginal_normalized_and_first_harmonic(self, state, cfg):
        e = bloch_from_state(state)
        g = gamma_coefficients(cfg)
        joint = operational_joint_phase(state, cfg)
        total = marginal_phase(joint)
        assert total.integral == pytest.approx(1.0, abs=1e-12)
        assert TWO_PI * total.c_cos == pytest.approx(math.cos(cfg.theta) * e.ex, abs=1e-12)
        for z in (1, -1):
            assert TWO_PI * joint.for_z(z).c_cos == pytest.approx(g.gx(z) * e.ex, abs=1e-12)

    @given(pure_states(), any_configs())
    def test_phase_z_marginal_equals_discrete_one(self, state, cfg):
        from_phase = marginal_z_of_phase(operational_joint_phase(state, cfg))
        from_discrete = marginal_z(operational_joint_discrete(state, cfg))
        assert from_phase.p_plus == pytest.approx(from_discrete.p_plus, abs=1e-12)

    @given(pure_states())
    def test_full_marking_flattens_the_fringe(self, state):
        joint = operational_joint_discrete(state, MarkerConfig(math.pi / 2, 0.83))
        assert marginal_x(joint).p_plus == pytest.approx(0.5, abs=1e-12)
        assert marginal_x(joint).p_minus == pytest.approx(0.5, abs=1e-12)

    @given(pure_states(), any_configs())
    def test_fringe_visibility_is_cos_theta(self, state, cfg):
        e = bloch_from_state(state)
        joint = operational_joint_discrete(state, cfg)
        amplitude = abs(marginal_x(joint).expectation)
        assert amplitude == pytest.approx(abs(math.cos(cfg.theta) * e.ex), abs=1e-12)


class TestJointValidation:
    def test_sum_must_be_one(self):
        with pytest.raises(ValueError):
            DiscreteJoint(0.5, 0.5, 0.5, 0.5)

    def test_operational_must_be_nonnegative(self):
        with pytest.raises(ValueError):
            DiscreteJoint(0.6, 0.6, -0.1, -0.1, kind="operational")

    def test_quasi_may_be_negative(self):
        joint = DiscreteJoint(0.6, 0.6, -0.1, -0.1, kind="quasi")
        assert joint.value(-1, 1) == -0.1

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            DiscreteJoint(0.25, 0.25, 0.25, 0.25, kind="bogus")

    def test_phase_joint_normalization(self):
        flat = PhaseDensity(0.25 / TWO_PI, 0.0, 0.0)
        with pytest.raises(ValueError):
            PhaseJoint(flat, flat)  # integrates to 1/2

    def test_operational_phase_slices_must_be_nonnegative(self):
        dipping = PhaseDensity(0.5 / TWO_PI, 0.4, 0.0)
        rest = PhaseDensity(0.5 / TWO_PI, 0.0, 0.0)
        with pytest.raises(ValueError):
            PhaseJoint(dipping, rest, kind="operational")
        assert PhaseJoint(dipping, rest, kind="quasi").plus.c_cos == 0.4
