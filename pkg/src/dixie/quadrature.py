"""Exact expectations and rising moments of the collection stopping time.

The mean number of draws to complete m sets satisfies

    E[T] = integral_0^inf [ 1 - prod_j S_m(p_j t) e^{-p_j t} ] dt,

with S_m the partial exponential sum; the r-th rising moment inserts a
factor r * t^(r-1).  The same integral over *raw* (unnormalized) weights is
the scale-free quantity L1; multiplying it by the grand weight total gives
the rare-subfamily product estimate of the full expectation.

A small absorbing-chain dynamic program provides an independent exact
oracle for tiny instances.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import kernels
from .errors import (
    QuadratureConvergenceError,
    RareClassError,
    StateSpaceError,
)
from .weights import Rarity, generate_weights, interlace

MAX_RISING_ORDER = 4  # t^(r-1) growth degrades conditioning beyond this
_TAIL_SAFETY = 10.0


@dataclass(frozen=True)
class CollectorQuery:
    """How many complete sets (m) and which rising-moment order (r)."""

    m: int = 1
    r: int = 1

    def __post_init__(self):
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not 1 <= self.r <= MAX_RISING_ORDER:
            raise ValueError(
                f"rising-moment order must be in 1..{MAX_RISING_ORDER}, "
                f"got {self.r}"
            )


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-8
    abs_floor: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_floor <= 0:
            raise ValueError("rel_tol and abs_floor must be positive")


@dataclass(frozen=True)
class MomentResult:
    value: float
    est_error: float
    integrand_evals: int


def _upper_cutoff(rates, m, cfg):
    """Point beyond which the integrand is below the absolute floor.

    The integrand decays like N * exp(-r_min t) * poly(t), so a cutoff of
    order (ln N + m lnln N) / r_min works; it is doubled until the value
    actually drops below the floor.
    """
    n = len(rates)
    r_min = float(np.min(rates))
    t_hi = (math.log(n) + m * math.log(math.log(n) + 2.0) + 30.0) / r_min
    for _ in range(200):
        if kernels.survival_gap(t_hi, rates, m) < cfg.abs_floor:
            return t_hi
        t_hi *= 2.0
    raise QuadratureConvergenceError(
        "integrand failed to decay below the absolute floor",
        float("nan"),
        float("inf"),
    )


def _moment_integral(rates, m, r, cfg):
    """r * integral of survival_gap(t) * t^(r-1) over [0, inf)."""
    rates = np.ascontiguousarray(rates, dtype=np.float64)
    t_hi = _upper_cutoff(rates, m, cfg)

    def integrand(t):
        g = kernels.survival_gap(t, rates, m)
        if r == 1:
            return g
        return g * t ** (r - 1)

    out = integrate.quad(
        integrand,
        0.0,
        t_hi,
        epsabs=cfg.abs_floor * t_hi**r,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions,
        full_output=1,
    )
    value, abserr, info = out[0], out[1], out[2]
    if len(out) > 3:
        raise QuadratureConvergenceError(
            f"adaptive quadrature did not converge: {out[3]}",
            r * value,
            r * abserr,
        )
    tail_bound = (
        kernels.survival_gap(t_hi, rates, m) * t_hi**r * _TAIL_SAFETY
    )
    return MomentResult(
        value=r * value,
        est_error=r * (abserr + tail_bound),
        integrand_evals=int(info["neval"]),
    )


def exact_rising_moment(dist, query, cfg=QuadratureConfig()):
    """E[T(T+1)...(T+r-1)] for the stopping time of ``dist``, exactly."""
    return _moment_integral(dist.probs, query.m, query.r, cfg)


def l1_integral(raw_weights, m, cfg=QuadratureConfig()):
    """Scale-free expectation integral over raw (unnormalized) weights.

    Equals the exact mean of the normalized distribution divided by the
    weight total (substituting t = u * total in the mean integral).
    """
    return _moment_integral(raw_weights, m, 1, cfg).value


def theorem1_estimate(family, m, cfg=QuadratureConfig()):
    """Product estimate: grand weight total times the rare-subfamily L1.

    Valid when the rare subfamily's coupons are asymptotically far rarer
    than the rest; a growing (Case I) rare subfamily is rejected.
    """
    rare = family.resolved_rare_index()
    rare_law = family.subfamilies[rare]
    if rare_law.rarity_class is not Rarity.CASE_II:
        raise RareClassError(
            f"rare subfamily {rare_law.spec()} has growing weights; the "
            "product estimate requires a decaying rare subfamily"
        )
    dist = interlace(family)
    d = generate_weights(rare_law, family.size)
    return dist.weight_total * l1_integral(d, m, cfg)


STATE_LIMIT = 10**7


def markov_oracle(dist, query):
    """Exact expectation by absorbing-chain first-step recursion.

    Independent of the quadrature path: no integration, no sampling.
    Supports r = 1 (mean) and r = 2 (E[T(T+1)]); the state space
    (m+1)^N must stay at or below 10^7.
    """
    if query.r > 2:
        raise ValueError("chain oracle supports rising order r <= 2")
    n = dist.n_types
    size = (query.m + 1) ** n
    if size > STATE_LIMIT:
        raise StateSpaceError(size, STATE_LIMIT)
    e1, e2 = kernels.chain_moments(
        np.ascontiguousarray(dist.probs), query.m, size
    )
    if query.r == 1:
        return e1
    return e2 + e1
