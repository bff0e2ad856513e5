"""Weight-sequence catalogue, interlacing, and coupon distributions.

A coupon distribution over N types is built from strictly positive weights
w_1..w_N by normalizing with their total.  Here the weight vector is the
interlacing of k catalogued subsequences of M entries each (N = k*M):
subfamily s occupies positions s, s+k, s+2k, ... .  The probabilities are a
multiset invariant of the layout, so one uniform offset convention is used
for every k.
"""

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    AmbiguousRareError,
    LawParseError,
    WeightRangeError,
)

SUM_TOL = 1e-12


class Rarity(enum.Enum):
    """Convergence class of sum_j exp(-w_j * xi) over the weight sequence.

    CASE_I: convergent for some xi > 0 (growing weights; the subfamily's
    own collection integral stays bounded).  CASE_II: divergent for every
    xi (decaying or constant weights; the integral grows without bound).
    Fixed per-kind lookup, not computed.
    """

    CASE_I = "I"
    CASE_II = "II"


# kind -> (parameter name or None, rarity class, index of first weight)
_CATALOGUE = {
    "uniform": (None, Rarity.CASE_II, 1),
    "power": ("r", Rarity.CASE_I, 1),
    "zipf": ("p", Rarity.CASE_II, 1),
    "log": ("r", Rarity.CASE_II, 2),
    "expgrow": ("p", Rarity.CASE_I, 1),
    "expdecay": ("p", Rarity.CASE_II, 0),
    "factorial": (None, Rarity.CASE_I, 1),
    "recipfactorial": (None, Rarity.CASE_II, 1),
    "superexp": ("c", Rarity.CASE_I, 1),
}

_MAX_EXP = 700.0  # exp() overflows float64 just above 709
_MAX_FACTORIAL = 170  # 171! > max float64


@dataclass(frozen=True)
class WeightLaw:
    """One catalogued weight sequence with its (single) real parameter."""

    kind: str
    param: float | None = None

    def __post_init__(self):
        if self.kind not in _CATALOGUE:
            raise LawParseError(f"unknown weight law {self.kind!r}")
        pname = _CATALOGUE[self.kind][0]
        if pname is None:
            if self.param is not None:
                raise LawParseError(f"law {self.kind!r} takes no parameter")
        else:
            if self.param is None:
                raise LawParseError(
                    f"law {self.kind!r} requires parameter {pname}"
                )
            if not (self.param > 0):
                raise LawParseError(
                    f"law {self.kind!r} needs {pname} > 0, got {self.param}"
                )

    @property
    def rarity_class(self):
        return _CATALOGUE[self.kind][1]

    @property
    def first_index(self):
        """Index j of the first generated weight (log laws start at 2)."""
        return _CATALOGUE[self.kind][2]

    def spec(self):
        pname = _CATALOGUE[self.kind][0]
        if pname is None:
            return self.kind
        return f"{self.kind}:{pname}={self.param:g}"

    def max_size(self):
        """Largest M whose weights stay finite in float64, or None."""
        if self.kind == "factorial":
            return _MAX_FACTORIAL
        if self.kind == "expgrow":
            return int(_MAX_EXP / self.param)
        if self.kind == "superexp":
            m = 1
            while (m + 1) * self.param * math.log(m + 2) <= _MAX_EXP:
                m += 1
            return m
        if self.kind == "power":
            if self.param * math.log(1e9) < _MAX_EXP:  # M^r fine up to 1e9
                return None
            return int(math.exp(_MAX_EXP / self.param))
        return None


def parse_law(token):
    """Parse a law spec like ``zipf:p=1`` or ``uniform``."""
    name, sep, rest = token.partition(":")
    name = name.strip()
    if name not in _CATALOGUE:
        raise LawParseError(f"unknown weight law {name!r} in {token!r}")
    pname = _CATALOGUE[name][0]
    if not sep:
        return WeightLaw(name)
    if pname is None:
        raise LawParseError(f"law {name!r} takes no parameter: {token!r}")
    key, eq, val = rest.partition("=")
    if key.strip() != pname or not eq:
        raise LawParseError(
            f"expected {name}:{pname}=<value>, got {token!r}"
        )
    try:
        param = float(val)
    except ValueError:
        raise LawParseError(f"bad numeric value in {token!r}") from None
    return WeightLaw(name, param)


def generate_weights(law, size):
    """The first ``size`` weights of the law, as a float64 vector.

    Indexing follows the law's own start: the log law yields entries for
    j = 2..size+1 (ln 1 would give a zero weight), the decaying exponential
    starts at exponent 0 so that its total tends to 1/(1 - e^-p).
    """
    if size < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    cap = law.max_size()
    if cap is not None and size > cap:
        raise WeightRangeError(
            f"{law.spec()} weights overflow float64 beyond M={cap} "
            f"(requested M={size})",
            cap,
        )
    j = np.arange(law.first_index, law.first_index + size, dtype=np.float64)
    if law.kind == "uniform":
        w = np.ones(size)
    elif law.kind == "power":
        w = j ** law.param
    elif law.kind == "zipf":
        w = j ** (-law.param)
    elif law.kind == "log":
        w = np.log(j) ** (-law.param)
    elif law.kind == "expgrow":
        w = np.exp(law.param * j)
    elif law.kind == "expdecay":
        w = np.exp(-law.param * j)
    elif law.kind == "factorial":
        w = np.cumprod(j)
    elif law.kind == "recipfactorial":
        w = 1.0 / np.cumprod(j)
    elif law.kind == "superexp":
        # representative with c_j = c * ln(j+1): w_j = (j+1)^(c*j)
        w = np.exp(j * law.param * np.log(j + 1.0))
    else:  # pragma: no cover
        raise AssertionError(law.kind)
    if not np.all(np.isfinite(w)) or np.any(w <= 0.0):
        raise WeightRangeError(
            f"{law.spec()} produced non-finite or non-positive weights "
            f"at M={size}",
            size - 1,
        )
    return w


def partial_sum(law, size):
    """Exact (compensated) sum of the first ``size`` weights."""
    return math.fsum(generate_weights(law, size))


@dataclass(frozen=True)
class CouponDistribution:
    """Normalized coupon probabilities plus the weight bookkeeping."""

    probs: np.ndarray
    weight_total: float
    subfamily_totals: tuple

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", p)
        if np.any(p <= 0.0):
            raise ValueError("all coupon probabilities must be positive")
        if abs(math.fsum(p) - 1.0) > SUM_TOL:
            raise ValueError("coupon probabilities must sum to 1")
        if abs(math.fsum(self.subfamily_totals) - self.weight_total) > (
            SUM_TOL * abs(self.weight_total)
        ):
            raise ValueError("subfamily totals must add up to the total")

    @property
    def n_types(self):
        return len(self.probs)


@dataclass(frozen=True)
class InterlacedFamily:
    """k catalogued subfamilies of M coupons each, interlaced positionally.

    ``rare_index`` designates the decaying (rare) subfamily used by the
    product estimate; when None it defaults to the unique Case II
    subfamily and construction of that default fails loudly if ambiguous.
    """

    subfamilies: tuple
    size: int
    rare_index: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "subfamilies", tuple(self.subfamilies))
        if len(self.subfamilies) < 1:
            raise ValueError("need at least one subfamily")
        if self.size < 1:
            raise ValueError(f"size must be >= 1, got {self.size}")
        if self.rare_index is not None and not (
            0 <= self.rare_index < len(self.subfamilies)
        ):
            raise ValueError(f"rare_index {self.rare_index} out of range")

    @property
    def k(self):
        return len(self.subfamilies)

    @property
    def n_types(self):
        return self.k * self.size

    def resolved_rare_index(self):
        if self.rare_index is not None:
            return self.rare_index
        if self.k == 1:
            return 0
        # a weight sequence decaying to 0 beats everything else; a uniform
        # subfamily is rare only when all the others grow
        decaying = [
            i
            for i, law in enumerate(self.subfamilies)
            if law.rarity_class is Rarity.CASE_II and law.kind != "uniform"
        ]
        if len(decaying) == 1:
            return decaying[0]
        if len(decaying) > 1:
            raise AmbiguousRareError(
                f"{len(decaying)} decaying subfamilies; pass rare_index "
                "explicitly"
            )
        constant = [
            i
            for i, law in enumerate(self.subfamilies)
            if law.kind == "uniform"
        ]
        if len(constant) == 1:
            return constant[0]
        raise AmbiguousRareError(
            "no unique rare subfamily; pass rare_index explicitly"
        )

    def rare_law(self):
        return self.subfamilies[self.resolved_rare_index()]

    def with_size(self, size):
        return replace(self, size=size)

    def spec(self):
        return "+".join(law.spec() for law in self.subfamilies)


def interlace(family):
    """The full coupon distribution of an interlaced family."""
    k, m = family.k, family.size
    weights = np.empty(k * m)
    totals = []
    for s, law in enumerate(family.subfamilies):
        w = generate_weights(law, m)
        weights[s::k] = w
        totals.append(math.fsum(w))
    total = math.fsum(totals)
    return CouponDistribution(
        probs=weights / total,
        weight_total=total,
        subfamily_totals=tuple(totals),
    )


def subfamily_distribution(family, index):
    """The M-coupon distribution of one subfamily taken alone."""
    if not 0 <= index < family.k:
        raise ValueError(f"subfamily index {index} out of range")
    w = generate_weights(family.subfamilies[index], family.size)
    total = math.fsum(w)
    return CouponDistribution(
        probs=w / total, weight_total=total, subfamily_totals=(total,)
    )


def single_law_distribution(law, n_types):
    """Distribution of one law over n_types coupons (no interlacing)."""
    return subfamily_distribution(
        InterlacedFamily((law,), n_types, rare_index=0), 0
    )
