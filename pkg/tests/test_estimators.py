import math

import numpy as np
import pytest

from thermoscale.estimators import (
    EmptyBatchError,
    EstimatorMode,
    estimate_beta_from_count,
    run_thermalizing_trials,
    sample_excited_count,
)
from thermoscale.rng import RngStream
from thermoscale.thermal import TwoLevelSpec, shot_noise_sigma_beta, thermal_summary

# frozen guard for the deterministic 1/N part of the jeffreys estimator bias,
# calibrated once at 2e4 trials over (n, beta) in {16..1600} x {0.5..3}
BIAS_GUARD_C = 1.0


class TestSampleExcitedCount:
    def test_vanishing_probability_gives_zero(self):
        stream = RngStream(11)
        assert all(
            sample_excited_count(10, 1e-15, stream.substream(i)) == 0 for i in range(100)
        )

    def test_binomial_moments(self):
        draws = sample_excited_count(10**5, 0.5, RngStream(12), size=10**4)
        sigma_single = math.sqrt(10**5 * 0.25)
        assert abs(draws.mean() - 5e4) < 5 * sigma_single / math.sqrt(10**4)
        assert abs(draws.var() - 2.5e4) < 0.1 * 2.5e4

    def test_exhaustive_pmf_three_atoms(self):
        draws = sample_excited_count(3, 0.5, RngStream(14), size=10**6)
        counts = np.bincount(draws, minlength=4) / draws.size
        expected = np.array([1.0, 3.0, 3.0, 1.0]) / 8.0
        assert np.all(np.abs(counts - expected) < 5e-4)

    def test_bounds_and_validation(self):
        k = sample_excited_count(7, 0.3, RngStream(14))
        assert 0 <= k <= 7
        with pytest.raises(ValueError):
            sample_excited_count(0, 0.5, RngStream(1))
        with pytest.raises(ValueError):
            sample_excited_count(5, 0.0, RngStream(1))
        with pytest.raises(ValueError):
            sample_excited_count(5, 1.0, RngStream(1))


class TestEstimateBetaFromCount:
    def test_jeffreys_symmetry_point(self):
        # k = n/2 shrinks to exactly one half, so the estimate is exactly zero
        assert estimate_beta_from_count(5, 10, 1.0, "jeffreys") == 0.0
        assert estimate_beta_from_count(50, 100, 1.0, EstimatorMode.JEFFREYS) == 0.0

    def test_raw_boundary_is_invalid(self):
        assert estimate_beta_from_count(0, 10, 1.0, "raw") is None
        assert estimate_beta_from_count(10, 10, 1.0, "raw") is None

    def test_raw_hand_value(self):
        assert estimate_beta_from_count(25, 100, 1.0, "raw") == pytest.approx(
            math.log(3.0), rel=1e-14
        )

    def test_jeffreys_always_finite(self):
        for k in (0, 1, 50, 99, 100):
            value = estimate_beta_from_count(k, 100, 1.0, "jeffreys")
            assert value is not None and math.isfinite(value)

    def test_count_validation(self):
        with pytest.raises(ValueError):
            estimate_beta_from_count(11, 10, 1.0)
        with pytest.raises(ValueError):
            estimate_beta_from_count(-1, 10, 1.0)


class TestRunThermalizingTrials:
    def test_spread_matches_shot_noise_prediction(self):
        spec = TwoLevelSpec(100, 1.0)
        batch = run_thermalizing_trials(spec, 1.0, 10**4, "jeffreys", RngStream(21))
        predicted = shot_noise_sigma_beta(spec, 1.0)
        assert batch.sample_std == pytest.approx(predicted, rel=0.05)

    def test_all_invalid_raises_empty_batch(self):
        # one atom in raw mode: every count is 0 or 1, so every trial is invalid
        with pytest.raises(EmptyBatchError) as info:
            run_thermalizing_trials(TwoLevelSpec(1, 1.0), 0.0, 50, "raw", RngStream(22))
        assert info.value.invalid_count == 50
        assert info.value.trials == 50

    def test_sqrt_scaling_between_sizes(self):
        big = run_thermalizing_trials(TwoLevelSpec(400, 1.0), 1.0, 10**4, "jeffreys", RngStream(23, 0))
        small = run_thermalizing_trials(TwoLevelSpec(100, 1.0), 1.0, 10**4, "jeffreys", RngStream(23, 1))
        assert big.sample_std / small.sample_std == pytest.approx(0.5, rel=0.10)

    def test_batch_bookkeeping(self):
        batch = run_thermalizing_trials(TwoLevelSpec(5, 1.0), 0.5, 500, "raw", RngStream(24))
        assert batch.trials == 500
        assert batch.invalid_count + len(batch.estimates) == 500
        assert batch.invalid_count > 0  # n=5 hits degenerate counts regularly
        assert batch.sample_std == pytest.approx(float(np.std(batch.estimates, ddof=1)), rel=1e-15)

    def test_requires_two_trials(self):
        with pytest.raises(ValueError):
            run_thermalizing_trials(TwoLevelSpec(5, 1.0), 0.5, 1, "raw", RngStream(1))


class TestEstimatorQuality:
    @pytest.mark.parametrize("n_atoms", [100, 400])
    @pytest.mark.parametrize("x", [0.2, 1.0, 3.0])
    def test_cramer_rao_compliance_and_near_saturation(self, n_atoms, x):
        # variance can dip at most 5 percent below the information bound, and
        # the spread stays within [0.95, 1.10] of the closed-form prediction
        spec = TwoLevelSpec(n_atoms, 1.0)
        batch = run_thermalizing_trials(
            spec, x, 10**4, "jeffreys", RngStream(77, n_atoms * 10 + int(x * 10))
        )
        fisher = thermal_summary(spec, x).fisher_info
        assert batch.sample_std**2 * fisher >= 0.95
        ratio = batch.sample_std / shot_noise_sigma_beta(spec, x)
        assert 0.95 <= ratio <= 1.10

    @pytest.mark.parametrize(
        "n_atoms,beta", [(16, 1.0), (100, 1.0), (100, 3.0), (400, 1.0)]
    )
    def test_bias_guard(self, n_atoms, beta):
        batch = run_thermalizing_trials(
            TwoLevelSpec(n_atoms, 1.0), beta, 10**4, "jeffreys", RngStream(78, n_atoms)
        )
        stat_term = 3.0 * batch.sample_std / math.sqrt(batch.trials)
        assert abs(batch.sample_mean - beta) <= stat_term + BIAS_GUARD_C / n_atoms


class TestReproducibility:
    def test_identical_seed_reproduces_batch_bitwise(self):
        spec = TwoLevelSpec(50, 1.0)
        a = run_thermalizing_trials(spec, 0.8, 300, "jeffreys", RngStream(31, 4))
        b = run_thermalizing_trials(spec, 0.8, 300, "jeffreys", RngStream(31, 4))
        assert np.array_equal(a.estimates, b.estimates)
        assert a.sample_mean == b.sample_mean
        assert a.sample_std == b.sample_std

    def test_trials_are_schedule_invariant(self):
        # reconstruct each trial independently, in scrambled order, from its
        # own substream; the batch must match element for element
        spec = TwoLevelSpec(40, 1.0)
        stream = RngStream(32, 9)
        batch = run_thermalizing_trials(spec, 1.2, 64, "jeffreys", stream)
        p = 1.0 / (1.0 + math.exp(1.2))
        order = np.random.default_rng(0).permutation(64)
        replayed = {}
        for t in order:
            gen = stream.substream(int(t)).generator()
            k = int(gen.binomial(40, p))
            replayed[int(t)] = estimate_beta_from_count(k, 40, 1.0, "jeffreys")
        assert list(batch.estimates) == [replayed[t] for t in range(64)]

    def test_different_stream_different_batch(self):
        spec = TwoLevelSpec(50, 1.0)
        a = run_thermalizing_trials(spec, 0.8, 100, "jeffreys", RngStream(31, 4))
        b = run_thermalizing_trials(spec, 0.8, 100, "jeffreys", RngStream(31, 5))
        assert not np.array_equal(a.estimates, b.estimates)
