import math

import pytest

from corpus import scheme_from_profiles, table1_scheme
from discern.errors import BarrierError, ConfigError
from discern.noisy import (
    NoiseConfig,
    majority_error,
    repetitions_for,
    simulate_noisy_identification,
    simulate_tagged,
)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"epsilon": 0.5},
        {"epsilon": -0.01},
        {"delta": 0.0},
        {"delta": 1.0},
        {"trials": 0},
    ],
)
def test_config_validation(kwargs):
    base = {"epsilon": 0.1, "delta": 0.01, "trials": 10, "seed": 1}
    base.update(kwargs)
    with pytest.raises(ConfigError):
        NoiseConfig(**base)


def test_majority_error_exact_small_case():
    # r=3, eps=0.1: 3 eps^2 (1-eps) + eps^3 = 0.028
    assert majority_error(3, 0.1) == pytest.approx(0.028, abs=1e-12)
    assert majority_error(1, 0.25) == pytest.approx(0.25, abs=1e-12)
    assert majority_error(9, 0.0) == 0.0


def test_repetitions_monotone_in_difficulty():
    assert repetitions_for(0.0, 0.005) == 1
    r_easy = repetitions_for(0.05, 0.005)
    r_mid = repetitions_for(0.1, 0.005)
    r_hard = repetitions_for(0.2, 0.005)
    assert r_easy <= r_mid <= r_hard
    assert repetitions_for(0.1, 0.0005) >= r_mid  # tighter target, more repeats
    for eps, r in ((0.05, r_easy), (0.1, r_mid), (0.2, r_hard)):
        assert r % 2 == 1
        assert majority_error(r, eps) <= 0.005
        if r > 1:
            assert majority_error(r - 2, eps) > 0.005


def test_noiseless_is_exact(s2):
    result = simulate_noisy_identification(s2, NoiseConfig(0.0, 0.01, 100, 7))
    assert result.mean_queries == 2.0
    assert result.empirical_error == 0.0
    assert result.repetitions == 1
    assert result.tagged_queries == 1


def test_seed_determinism(s2):
    cfg = NoiseConfig(0.1, 0.01, 500, 7)
    assert simulate_noisy_identification(s2, cfg) == simulate_noisy_identification(s2, cfg)
    other = simulate_noisy_identification(s2, NoiseConfig(0.1, 0.01, 500, 8))
    assert other.mean_queries == simulate_noisy_identification(s2, cfg).mean_queries
    # Same repetition schedule, so mean queries agree; error counts may differ.


def test_error_within_target(s2):
    result = simulate_noisy_identification(s2, NoiseConfig(0.1, 0.01, 10_000, 7))
    assert result.empirical_error <= 0.01


def test_mean_queries_grow_with_noise(s2):
    means = [
        simulate_noisy_identification(s2, NoiseConfig(eps, 0.01, 200, 7)).mean_queries
        for eps in (0.0, 0.05, 0.1, 0.2)
    ]
    assert means == sorted(means)


def test_extreme_epsilon_finite(s2):
    result = simulate_noisy_identification(s2, NoiseConfig(0.49, 0.5, 10, 7))
    assert result.repetitions > 100
    assert result.mean_queries == 2 * result.repetitions


def test_reference_bound_value(s2):
    result = simulate_noisy_identification(s2, NoiseConfig(0.1, 0.01, 10, 7))
    assert result.reference_bound == pytest.approx(math.log(100) / 0.64, rel=1e-12)


def test_barrier_scheme_rejected(s1):
    with pytest.raises(BarrierError):
        simulate_noisy_identification(s1, NoiseConfig(0.1, 0.01, 10, 7))


def test_single_class_scheme():
    scheme = scheme_from_profiles([(0, 1)])
    result = simulate_noisy_identification(scheme, NoiseConfig(0.2, 0.1, 50, 3))
    assert result.mean_queries == 0.0
    assert result.empirical_error == 0.0


def test_tagged_clean_side_channel(s1, s2):
    for scheme in (s1, s2):
        for eps in (0.0, 0.3, 0.45):
            result = simulate_tagged(scheme, NoiseConfig(eps, 0.01, 10, 7))
            assert result.mean_queries == 1.0
            assert result.empirical_error == 0.0


def test_tagged_large_scheme():
    scheme = table1_scheme()
    result = simulate_tagged(scheme, NoiseConfig(0.2, 0.01, 10, 7))
    assert result.mean_queries == 1.0 and result.empirical_error == 0.0


def test_result_records_reproducibility_metadata(s2):
    result = simulate_noisy_identification(s2, NoiseConfig(0.1, 0.01, 10, 42))
    assert result.seed == 42
    assert result.rng == "numpy-philox"
