"""Stopping times of interlaced coupon collection (m complete sets).

Exact expectations and rising moments by stable semi-infinite quadrature,
a small exact chain oracle, leading-order asymptotics per weight law,
reproducible Monte Carlo, and packaged studies behind a CLI.
"""

from ._backend import BACKEND, USING_NUMBA
from .asymptotics import (
    ConditionReport,
    DecayFunction,
    LeadingTerm,
    check_conditions,
    harmonic,
    leading_expectation,
    leading_l1,
    leading_sum,
    zeta,
)
from .errors import (
    AmbiguousRareError,
    DixieError,
    LawParseError,
    QuadratureConvergenceError,
    RareClassError,
    StateSpaceError,
    TaintedSimulationError,
    WeightRangeError,
)
from .montecarlo import (
    InterarrivalStats,
    SimSummary,
    SimulationConfig,
    interarrival_stats,
    simulate_once,
    simulate_summary,
    wald_check,
)
from .quadrature import (
    CollectorQuery,
    MomentResult,
    QuadratureConfig,
    exact_rising_moment,
    l1_integral,
    markov_oracle,
    theorem1_estimate,
)
from .weights import (
    CouponDistribution,
    InterlacedFamily,
    Rarity,
    WeightLaw,
    generate_weights,
    interlace,
    parse_law,
    partial_sum,
    single_law_distribution,
    subfamily_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "USING_NUMBA",
    "AmbiguousRareError",
    "CollectorQuery",
    "ConditionReport",
    "CouponDistribution",
    "DecayFunction",
    "DixieError",
    "InterarrivalStats",
    "InterlacedFamily",
    "LawParseError",
    "LeadingTerm",
    "MomentResult",
    "QuadratureConfig",
    "QuadratureConvergenceError",
    "RareClassError",
    "Rarity",
    "SimSummary",
    "SimulationConfig",
    "StateSpaceError",
    "TaintedSimulationError",
    "WeightLaw",
    "WeightRangeError",
    "check_conditions",
    "exact_rising_moment",
    "generate_weights",
    "harmonic",
    "interarrival_stats",
    "interlace",
    "l1_integral",
    "leading_expectation",
    "leading_l1",
    "leading_sum",
    "markov_oracle",
    "parse_law",
    "partial_sum",
    "simulate_once",
    "simulate_summary",
    "single_law_distribution",
    "subfamily_distribution",
    "theorem1_estimate",
    "wald_check",
    "zeta",
]
