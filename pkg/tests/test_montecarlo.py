import math

import numpy as np
import pytest

from dixie import (
    InterlacedFamily,
    SimulationConfig,
    TaintedSimulationError,
    WeightLaw,
    interarrival_stats,
    interlace,
    kernels,
    simulate_once,
    simulate_summary,
    single_law_distribution,
    wald_check,
)
from dixie.montecarlo import alias_setup

UNI = WeightLaw("uniform")
ZIPF1 = WeightLaw("zipf", 1.0)


def test_summary_reproducible():
    dist = single_law_distribution(UNI, 8)
    cfg = SimulationConfig(trials=500, seed=42)
    a = simulate_summary(dist, 1, cfg)
    b = simulate_summary(dist, 1, cfg)
    assert a == b
    c = simulate_summary(dist, 1, SimulationConfig(trials=500, seed=43))
    assert a != c


def test_degenerate_single_coupon():
    dist = single_law_distribution(UNI, 1)
    got = simulate_summary(dist, 5, SimulationConfig(trials=100, seed=7))
    assert got.mean == 5.0
    assert got.stderr == 0.0
    assert got.second_rising == 30.0
    assert got.capped_trials == 0


def test_simulate_once_matches_summary_stream():
    dist = single_law_distribution(ZIPF1, 5)
    cfg = SimulationConfig(trials=20, seed=11)
    summary_mean = simulate_summary(dist, 2, cfg).mean
    singles = [simulate_once(dist, 2, 11, trial=i) for i in range(20)]
    assert np.mean(singles) == pytest.approx(summary_mean, rel=1e-15)


def test_sampler_frequencies_match_probs():
    dist = single_law_distribution(ZIPF1, 6)
    cutoff, alias = alias_setup(dist.probs)
    n_draws = 10**6
    hist = kernels.type_frequencies(cutoff, alias, n_draws, 2024)
    freqs = hist / n_draws
    for p, f in zip(dist.probs, freqs):
        tol = 5.0 * math.sqrt(p * (1.0 - p) / n_draws)
        assert abs(f - p) < tol


def test_coupling_monotone_in_m():
    # the draw sequence depends only on (seed, trial), so the stopping
    # time for m+1 can never precede the one for m on the same stream
    dist = single_law_distribution(UNI, 6)
    cutoff, alias = alias_setup(dist.probs)
    for trial in range(50):
        t1 = kernels.sim_trial(cutoff, alias, 1, 10**9, 99, trial)
        t2 = kernels.sim_trial(cutoff, alias, 2, 10**9, 99, trial)
        t3 = kernels.sim_trial(cutoff, alias, 3, 10**9, 99, trial)
        assert t1 < t2 < t3


def test_mean_close_to_exact_small_case():
    # E[T] = 14.7 for the 6-type uniform collector
    dist = single_law_distribution(UNI, 6)
    got = simulate_summary(dist, 1, SimulationConfig(trials=20_000, seed=3))
    assert got.capped_trials == 0
    assert abs(got.mean - 14.7) < 4.0 * got.stderr


def test_draw_cap_taints_summary():
    dist = single_law_distribution(UNI, 4)
    got = simulate_summary(
        dist, 1, SimulationConfig(trials=50, seed=1, draw_cap=3)
    )
    assert got.capped_trials == 50
    assert got.trials_completed == 0
    with pytest.raises(TaintedSimulationError):
        got.require_clean()


def test_interarrival_two_symmetric_families():
    fam = InterlacedFamily((UNI, UNI), 5, rare_index=1)
    got = interarrival_stats(fam, 200_000, seed=8)
    assert got.expected_mean == pytest.approx(2.0)
    assert got.expected_var == pytest.approx(2.0)
    assert got.sample_mean == pytest.approx(2.0, rel=0.02)
    assert got.sample_var == pytest.approx(2.0, rel=0.05)


def test_interarrival_rare_zipf():
    fam = InterlacedFamily((UNI, ZIPF1), 50)
    got = interarrival_stats(fam, 400_000, seed=12)
    dist = interlace(fam)
    p = dist.subfamily_totals[1] / dist.weight_total
    assert got.expected_mean == pytest.approx(1.0 / p, rel=1e-12)
    se_mean = math.sqrt(got.expected_var / got.count)
    assert abs(got.sample_mean - got.expected_mean) < 4.0 * se_mean


def test_interarrival_needs_interlacing():
    with pytest.raises(ValueError):
        interarrival_stats(InterlacedFamily((UNI,), 5, rare_index=0), 1000, 1)


def test_wald_single_family_exact():
    pairs = wald_check((UNI, UNI), 1, (4, 8), rare_index=1)
    # both subfamilies are uniform with equal weight: the decomposition is
    # the classical doubling identity, only asymptotically exact
    for _, ratio in pairs:
        assert 0.5 < ratio < 1.5


def test_wald_ratio_tends_to_one():
    pairs = wald_check((UNI, ZIPF1), 1, (10, 40, 160))
    gaps = [abs(r - 1.0) for _, r in pairs]
    # convergence is so fast that later gaps sit at rounding level
    assert all(b < a or b < 1e-12 for a, b in zip(gaps, gaps[1:]))
    assert gaps[2] < 1e-10
