"""Seeded simulation of the m-set collection process.

Sampling uses an alias table (O(1) per draw) and one independent RNG
stream per trial derived from (seed, trial index), so summaries are
bit-reproducible regardless of how many threads run the trials.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import TaintedSimulationError
from .weights import interlace

DEFAULT_DRAW_CAP = 10**9


@dataclass(frozen=True)
class SimulationConfig:
    trials: int
    seed: int
    draw_cap: int = DEFAULT_DRAW_CAP

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")


@dataclass(frozen=True)
class SimSummary:
    mean: float
    stderr: float
    second_rising: float  # empirical E[T(T+1)]
    trials_completed: int
    capped_trials: int

    def require_clean(self):
        if self.capped_trials:
            raise TaintedSimulationError(
                f"{self.capped_trials} trial(s) hit the draw cap; "
                "summary is biased"
            )
        return self


@dataclass(frozen=True)
class InterarrivalStats:
    sample_mean: float
    sample_var: float
    count: int
    expected_mean: float  # total weight / rare-subfamily weight
    expected_var: float  # geometric variance (1-p)/p^2


def alias_setup(probs):
    """Vose alias table: per-slot acceptance cutoffs and alias targets."""
    n = len(probs)
    cutoff = np.asarray(probs, dtype=np.float64) * n
    alias = np.arange(n, dtype=np.int64)
    small = [k for k in range(n) if cutoff[k] < 1.0]
    large = [k for k in range(n) if cutoff[k] >= 1.0]
    while small and large:
        s = small.pop()
        g = large.pop()
        alias[s] = g
        cutoff[g] -= 1.0 - cutoff[s]
        if cutoff[g] < 1.0:
            small.append(g)
        else:
            large.append(g)
    for k in small + large:  # numerical leftovers accept unconditionally
        cutoff[k] = 1.0
    return np.ascontiguousarray(cutoff), np.ascontiguousarray(alias)


def simulate_once(dist, m, seed, trial=0, draw_cap=DEFAULT_DRAW_CAP):
    """Number of draws for one trial; None if the draw cap was hit."""
    cutoff, alias = alias_setup(dist.probs)
    t = kernels.sim_trial(cutoff, alias, m, draw_cap, seed, trial)
    return None if t < 0 else int(t)


def simulate_summary(dist, m, cfg):
    """Run cfg.trials independent trials and summarize the stopping time.

    Trial i always uses RNG stream (seed, i); statistics are computed from
    the per-trial result array in index order, so the output is identical
    for any worker count.
    """
    cutoff, alias = alias_setup(dist.probs)
    draws = kernels.sim_many(
        cutoff, alias, m, cfg.draw_cap, cfg.seed, cfg.trials
    )
    ok = draws[draws >= 0].astype(np.float64)
    capped = int(cfg.trials - ok.size)
    if ok.size == 0:
        return SimSummary(math.nan, math.nan, math.nan, 0, capped)
    mean = float(np.mean(ok))
    if ok.size > 1:
        stderr = float(np.std(ok, ddof=1) / math.sqrt(ok.size))
    else:
        stderr = 0.0
    second = float(np.mean(ok * (ok + 1.0)))
    return SimSummary(mean, stderr, second, int(ok.size), capped)


def interarrival_stats(family, total_draws, seed):
    """Empirical vs expected moments of rare-coupon interarrival blocks.

    A block counts draws up to and including each rare-subfamily draw, so
    block lengths are geometric on {1, 2, ...} with success probability
    p = (rare subfamily weight) / (total weight) and mean 1/p.
    """
    if family.k < 2:
        raise ValueError("interarrival statistics need at least 2 subfamilies")
    rare = family.resolved_rare_index()
    dist = interlace(family)
    n = dist.n_types
    is_rare = np.zeros(n, dtype=np.bool_)
    is_rare[rare::family.k] = True
    cutoff, alias = alias_setup(dist.probs)
    count, s1, s2 = kernels.interarrival_scan(
        cutoff, alias, is_rare, total_draws, seed
    )
    if count < 2:
        raise ValueError(
            f"only {count} completed block(s) in {total_draws} draws"
        )
    mean = s1 / count
    var = (s2 - s1 * s1 / count) / (count - 1)
    p = dist.subfamily_totals[rare] / dist.weight_total
    return InterarrivalStats(
        sample_mean=mean,
        sample_var=var,
        count=int(count),
        expected_mean=1.0 / p,
        expected_var=(1.0 - p) / p**2,
    )


def wald_check(laws, m, sizes, cfg=None, rare_index=None):
    """Ratio of the exact full-mixture mean to the decomposition
    (rare-subfamily mean) * (total weight / rare weight), per size M.

    The decomposition becomes exact as M grows; ratios should approach 1.
    Returns a list of (M, ratio) pairs.
    """
    from .quadrature import (
        CollectorQuery,
        QuadratureConfig,
        exact_rising_moment,
    )
    from .weights import InterlacedFamily, subfamily_distribution

    cfg = cfg or QuadratureConfig()
    query = CollectorQuery(m=m, r=1)
    out = []
    for size in sizes:
        fam = InterlacedFamily(tuple(laws), size, rare_index)
        rare = fam.resolved_rare_index()
        dist = interlace(fam)
        full = exact_rising_moment(dist, query, cfg).value
        sub = subfamily_distribution(fam, rare)
        part = exact_rising_moment(sub, query, cfg).value
        scale = dist.weight_total / dist.subfamily_totals[rare]
        out.append((size, full / (part * scale)))
    return out
