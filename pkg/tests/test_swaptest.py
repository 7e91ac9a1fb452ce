"""Swap-test statevector simulation, shot sampling, and estimator variance."""
import math

import numpy as np
import pytest

from qkmeans.embedding import QubitState, RescaledAngle, embed, prepare_state
from qkmeans.swaptest import (
    ShotPolicy,
    SwapTestOutcome,
    ancilla_probabilities,
    estimator_variance,
    overlap,
    swap_test_exact,
    swap_test_sampled,
    swap_test_state,
)

KET0 = QubitState(1.0 + 0j, 0j)
KET1 = QubitState(0j, 1.0 + 0j)
PLUS = QubitState(1 / math.sqrt(2) + 0j, 1 / math.sqrt(2) + 0j)


def random_state(rng) -> QubitState:
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    v = v / np.linalg.norm(v)
    return QubitState(v[0], v[1])


class TestOverlap:
    def test_self_overlap_has_unit_modulus(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            s = random_state(rng)
            assert abs(overlap(s, s)) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal(self):
        assert overlap(KET0, KET1) == 0.0

    def test_embedded_pair_closed_form(self):
        # rescaled points (0,0) and (0,1): overlap is
        # cos(pi/4)^2 + e^{-i pi/2} sin(pi/4)^2 = 1/2 - i/2
        kind = RescaledAngle(1.0)
        psi = prepare_state(embed((0.0, 0.0), kind))
        phi = prepare_state(embed((0.0, 1.0), kind))
        assert overlap(psi, phi) == pytest.approx(0.5 - 0.5j, abs=1e-12)

    def test_matches_general_closed_form(self):
        # inner product of two embedded states, written out in angles
        rng = np.random.default_rng(1)
        kind = RescaledAngle(1.0)
        for _ in range(200):
            (x1, y1), (x2, y2) = rng.uniform(-1, 1, (2, 2))
            psi = prepare_state(embed((x1, y1), kind))
            phi = prepare_state(embed((x2, y2), kind))
            expected = (
                math.cos(math.pi / 4 * (x1 + 1)) * math.cos(math.pi / 4 * (x2 + 1))
                + np.exp(1j * math.pi / 2 * (y1 - y2))
                * math.sin(math.pi / 4 * (x1 + 1)) * math.sin(math.pi / 4 * (x2 + 1))
            )
            assert overlap(psi, phi) == pytest.approx(expected, abs=1e-12)


class TestSwapTestExact:
    def test_identical_states_give_zero(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            s = random_state(rng)
            assert swap_test_exact(s, s) == 0.0

    def test_orthogonal_states_give_half(self):
        assert swap_test_exact(KET0, KET1) == pytest.approx(0.5, abs=1e-12)

    def test_half_overlap_gives_quarter(self):
        # |<0|+>|^2 = 1/2, so P(1) = (1 - 1/2) / 2
        assert swap_test_exact(KET0, PLUS) == pytest.approx(0.25, abs=1e-12)

    def test_statevector_matches_closed_form(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            psi, phi = random_state(rng), random_state(rng)
            closed = (1 - abs(overlap(psi, phi)) ** 2) / 2
            assert abs(swap_test_exact(psi, phi) - closed) < 1e-12

    def test_range_and_total_probability(self):
        rng = np.random.default_rng(4)
        for _ in range(300):
            psi, phi = random_state(rng), random_state(rng)
            state = swap_test_state(psi, phi)
            p0, p1 = ancilla_probabilities(state)
            assert 0.0 <= p1 <= 0.5 + 1e-12
            assert abs(p0 + p1 - 1.0) < 1e-12

    def test_post_measurement_branches_normalized(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            psi, phi = random_state(rng), random_state(rng)
            state = swap_test_state(psi, phi)
            p0, p1 = ancilla_probabilities(state)
            for block, p in ((state[:4], p0), (state[4:], p1)):
                if p > 1e-12:
                    collapsed = block / math.sqrt(p)
                    assert abs(np.linalg.norm(collapsed) - 1.0) < 1e-12

    def test_non_normalized_rejected(self):
        bad = QubitState(1.0 + 0j, 1.0 + 0j)
        with pytest.raises(ValueError, match="normalized"):
            swap_test_exact(bad, KET0)


class TestSwapTestSampled:
    def test_identical_states_never_fire(self):
        rng = np.random.default_rng(6)
        for seed in range(20):
            s = random_state(rng)
            out = swap_test_sampled(s, s, ShotPolicy(shots=64, seed=seed))
            assert out.ones_count == 0

    def test_orthogonal_states_concentrate_at_half(self):
        out = swap_test_sampled(KET0, KET1, ShotPolicy(shots=1_000_000, seed=7))
        assert abs(out.p1_estimate - 0.5) <= 0.0015  # 3 binomial sigmas

    def test_single_shot_is_binary(self):
        for seed in range(10):
            out = swap_test_sampled(KET0, KET1, ShotPolicy(shots=1, seed=seed))
            assert out.p1_estimate in (0.0, 1.0)

    def test_deterministic_given_seed(self):
        a = swap_test_sampled(KET0, PLUS, ShotPolicy(shots=100, seed=42))
        b = swap_test_sampled(KET0, PLUS, ShotPolicy(shots=100, seed=42))
        assert a == b

    def test_unbiased(self):
        # grand mean over many independent runs stays within 4 standard errors
        p = swap_test_exact(KET0, PLUS)
        runs, shots = 10_000, 16
        total = 0
        for seed in range(runs):
            total += swap_test_sampled(KET0, PLUS, ShotPolicy(shots=shots, seed=seed)).ones_count
        grand_mean = total / (runs * shots)
        se = math.sqrt(p * (1 - p) / (runs * shots))
        assert abs(grand_mean - p) < 4 * se

    def test_analytic_policy_rejected(self):
        with pytest.raises(ValueError, match="shot count"):
            swap_test_sampled(KET0, KET1, ShotPolicy())

    def test_invalid_shots_rejected(self):
        with pytest.raises(ValueError, match="shots"):
            ShotPolicy(shots=0)

    def test_outcome_invariants_enforced(self):
        with pytest.raises(ValueError):
            SwapTestOutcome(p1_estimate=0.5, shots=10, ones_count=4)
        with pytest.raises(ValueError):
            SwapTestOutcome(p1_estimate=1.1, shots=10, ones_count=11)


class TestEstimatorVariance:
    def test_perfect_overlap_is_deterministic(self):
        assert estimator_variance(1.0, 100) == 0.0

    def test_zero_overlap_single_shot(self):
        assert estimator_variance(0.0, 1) == 0.25

    def test_formula_value(self):
        assert estimator_variance(0.5, 100) == pytest.approx(1.875e-3, abs=1e-18)

    def test_matches_sampled_spread(self):
        # empirical variance of the estimator agrees with the formula
        p = swap_test_exact(KET0, PLUS)
        ov_sq = 1 - 2 * p
        shots = 32
        estimates = [
            swap_test_sampled(KET0, PLUS, ShotPolicy(shots=shots, seed=s)).p1_estimate
            for s in range(4000)
        ]
        empirical = np.var(estimates)
        assert empirical == pytest.approx(estimator_variance(ov_sq, shots), rel=0.1)

    @pytest.mark.parametrize("bad", [-0.1, 1.1])
    def test_range_checked(self, bad):
        with pytest.raises(ValueError, match="overlap_sq"):
            estimator_variance(bad, 10)

    def test_shots_checked(self):
        with pytest.raises(ValueError, match="shots"):
            estimator_variance(0.5, 0)
