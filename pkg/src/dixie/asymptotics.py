"""Leading-order growth laws and special-function support.

For every catalogued weight law this module knows the leading term of the
weight partial sum and, for decaying laws, of the scale-free expectation
integral L1.  Their product gives the leading term of the full collection
expectation (the number of sets m does not enter at leading order).
Harmonic numbers, the Riemann zeta function, and numeric checks of the
decay-regularity conditions round out the toolbox.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import RareClassError
from .weights import Rarity

EULER_GAMMA = 0.5772156649015329


def harmonic(n):
    """H_n by exact compensated summation."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return math.fsum(1.0 / j for j in range(1, n + 1))


def zeta(p, terms=100_000):
    """Riemann zeta for p > 1: truncated series plus integral/trapezoid
    tail correction, accurate to well under 1e-10."""
    if p <= 1.0:
        raise ValueError(f"zeta requires p > 1, got {p}")
    j = np.arange(1, terms + 1, dtype=np.float64)
    head = math.fsum(j ** (-p))
    tail = (
        terms ** (1.0 - p) / (p - 1.0)
        - 0.5 * terms ** (-p)
        + p * terms ** (-p - 1.0) / 12.0
    )
    return head + tail


@dataclass(frozen=True)
class LeadingTerm:
    """A leading-order growth law M -> value.

    ``is_constant`` marks laws whose quantity tends to a finite limit;
    ``constant_known`` is False when only the growth shape is known (the
    multiplicative constant is then reported as 1).
    """

    value_at: callable
    description: str
    source_row: str
    is_constant: bool = False
    constant_known: bool = True


def leading_sum(law):
    """Leading term of the weight partial sum as M grows."""
    kind, q = law.kind, law.param
    if kind == "uniform":
        return LeadingTerm(lambda M: float(M), "M", "uniform")
    if kind == "power":
        return LeadingTerm(
            lambda M: M ** (q + 1.0) / (q + 1.0),
            f"M^{q + 1:g}/{q + 1:g}",
            "positive power law",
        )
    if kind == "zipf":
        if q < 1.0:
            return LeadingTerm(
                lambda M: M ** (1.0 - q) / (1.0 - q),
                f"M^{1 - q:g}/{1 - q:g}",
                "Zipf law 0<p<1",
            )
        if q == 1.0:
            return LeadingTerm(lambda M: math.log(M), "ln M", "std Zipf")
        z = zeta(q)
        return LeadingTerm(
            lambda M: z, f"zeta({q:g})", "Zipf law p>1", is_constant=True
        )
    if kind == "log":
        return LeadingTerm(
            lambda M: M / math.log(M) ** q,
            f"M/(ln M)^{q:g}",
            "logarithmic",
        )
    if kind == "expgrow":
        c = math.exp(q) - 1.0
        return LeadingTerm(
            lambda M: math.exp(q * (M + 1.0)) / c,
            f"e^({q:g}(M+1))/(e^{q:g}-1)",
            "growing exponential",
        )
    if kind == "expdecay":
        lim = 1.0 / (1.0 - math.exp(-q))
        return LeadingTerm(
            lambda M: lim,
            f"1/(1-e^-{q:g})",
            "decaying exponential",
            is_constant=True,
        )
    if kind == "factorial":
        return LeadingTerm(
            lambda M: math.factorial(int(M)), "M!", "factorial"
        )
    if kind == "recipfactorial":
        return LeadingTerm(
            lambda M: math.e - 1.0,
            "e-1",
            "reciprocal factorial",
            is_constant=True,
        )
    if kind == "superexp":
        return LeadingTerm(
            lambda M: math.exp(M * q * math.log(M + 1.0)),
            f"(M+1)^({q:g}M)",
            "super exponential",
        )
    raise AssertionError(kind)  # pragma: no cover


def leading_l1(law):
    """Leading term of the L1 integral for a decaying (Case II) law.

    Growing laws return a bounded-limit marker with unknown constant.
    Rows whose constant the theory leaves open (reciprocal factorial,
    decaying exponential) carry constant_known=False.
    """
    kind, q = law.kind, law.param
    if law.rarity_class is Rarity.CASE_I:
        return LeadingTerm(
            lambda M: 1.0,
            "constant",
            law.spec(),
            is_constant=True,
            constant_known=False,
        )
    if kind == "uniform":
        return LeadingTerm(lambda M: math.log(M), "ln M", "uniform")
    if kind == "zipf":
        return LeadingTerm(
            lambda M: M**q * math.log(M), f"M^{q:g} ln M", "Zipf law"
        )
    if kind == "log":
        return LeadingTerm(
            lambda M: math.log(M) ** (q + 1.0),
            f"(ln M)^{q + 1:g}",
            "logarithmic",
        )
    if kind == "expdecay":
        return LeadingTerm(
            lambda M: math.exp(q * M),
            f"C e^({q:g}M)",
            "decaying exponential",
            constant_known=False,
        )
    if kind == "recipfactorial":
        return LeadingTerm(
            lambda M: float(math.factorial(int(M))),
            "C1 M!",
            "reciprocal factorial",
            constant_known=False,
        )
    raise AssertionError(kind)  # pragma: no cover


def leading_expectation(family, m=1):
    """Leading term of the full interlaced expectation.

    Product of the summed subfamily weight-total leading terms and the
    rare subfamily's L1 leading term, as a function of M.  The number of
    sets m does not appear at leading order.
    """
    rare_law = family.rare_law()
    if rare_law.rarity_class is Rarity.CASE_I:
        raise RareClassError(
            f"rare subfamily {rare_law.spec()} has growing weights"
        )
    sums = [leading_sum(law) for law in family.subfamilies]
    l1 = leading_l1(rare_law)

    def value_at(M):
        return sum(s.value_at(M) for s in sums) * l1.value_at(M)

    desc = "(" + " + ".join(s.description for s in sums) + ") * " + (
        l1.description
    )
    return LeadingTerm(
        value_at,
        desc,
        f"{family.spec()} rare={rare_law.spec()}",
        constant_known=all(s.constant_known for s in sums)
        and l1.constant_known,
    )


# ---------------------------------------------------------------------------
# decay-regularity conditions on f with d_j = 1/f(j)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DecayFunction:
    """f with analytic derivatives up to third order, valid for x > x_min."""

    name: str
    f: callable
    df: callable
    d2f: callable
    d3f: callable
    x_min: float = 0.0


def power_growth(p):
    """f(x) = x^p (reciprocal-power decaying weights)."""
    return DecayFunction(
        name=f"x^{p:g}",
        f=lambda x: x**p,
        df=lambda x: p * x ** (p - 1.0),
        d2f=lambda x: p * (p - 1.0) * x ** (p - 2.0),
        d3f=lambda x: p * (p - 1.0) * (p - 2.0) * x ** (p - 3.0),
        x_min=0.0,
    )


def log_power_growth(r):
    """f(x) = (ln x)^r (reciprocal-log-power decaying weights)."""

    def f(x):
        return math.log(x) ** r

    def df(x):
        return r * math.log(x) ** (r - 1.0) / x

    def d2f(x):
        L = math.log(x)
        return (r * (r - 1.0) * L ** (r - 2.0) - r * L ** (r - 1.0)) / x**2

    def d3f(x):
        L = math.log(x)
        return (
            r * (r - 1.0) * (r - 2.0) * L ** (r - 3.0)
            - 3.0 * r * (r - 1.0) * L ** (r - 2.0)
            + 2.0 * r * L ** (r - 1.0)
        ) / x**3

    return DecayFunction(f"(ln x)^{r:g}", f, df, d2f, d3f, x_min=1.0)


def exponential_growth():
    """f(x) = e^x; deliberately outside the admissible class."""
    return DecayFunction(
        "e^x", math.exp, math.exp, math.exp, math.exp, x_min=0.0
    )


def stretched_exponential_growth(r):
    """f(x) = exp(x^r) with 0 < r < 1; admissible sub-exponential growth."""

    def f(x):
        return math.exp(x**r)

    def df(x):
        return r * x ** (r - 1.0) * f(x)

    def d2f(x):
        return f(x) * (
            r * (r - 1.0) * x ** (r - 2.0) + r**2 * x ** (2.0 * r - 2.0)
        )

    def d3f(x):
        return f(x) * (
            r * (r - 1.0) * (r - 2.0) * x ** (r - 3.0)
            + 3.0 * r**2 * (r - 1.0) * x ** (2.0 * r - 3.0)
            + r**3 * x ** (3.0 * r - 3.0)
        )

    return DecayFunction(f"exp(x^{r:g})", f, df, d2f, d3f, x_min=0.0)


@dataclass(frozen=True)
class ConditionReport:
    """Numeric evaluation of the four decay-regularity conditions."""

    xs: tuple
    f_values: tuple  # (i)   f(x), should grow without bound
    log_slopes: tuple  # (ii)  f'/f, should decrease toward 0
    curvature_ratios: tuple  # (iii) (f''/f')/(f'/f), should stay bounded
    third_order_ratios: tuple  # (iv) f''' f^2 / f'^3, should stay bounded
    grows: bool
    slope_vanishes: bool
    curvature_max: float
    third_order_max: float

    @property
    def admissible(self):
        return (
            self.grows
            and self.slope_vanishes
            and math.isfinite(self.curvature_max)
            and math.isfinite(self.third_order_max)
        )


def check_conditions(fun, xs):
    """Evaluate the decay conditions at increasing points xs."""
    xs = tuple(float(x) for x in xs)
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("xs must be strictly increasing")
    if xs[0] <= fun.x_min:
        raise ValueError(
            f"{fun.name} is only defined for x > {fun.x_min}"
        )
    fv, slope, curv, third = [], [], [], []
    for x in xs:
        f0, f1, f2, f3 = fun.f(x), fun.df(x), fun.d2f(x), fun.d3f(x)
        fv.append(f0)
        slope.append(f1 / f0)
        curv.append((f2 / f1) / (f1 / f0))
        third.append(f3 * f0**2 / f1**3)
    increasing = all(b > a for a, b in zip(fv, fv[1:]))
    decreasing = all(b < a for a, b in zip(slope, slope[1:]))
    return ConditionReport(
        xs=xs,
        f_values=tuple(fv),
        log_slopes=tuple(slope),
        curvature_ratios=tuple(curv),
        third_order_ratios=tuple(third),
        grows=increasing,
        slope_vanishes=decreasing and slope[-1] < 0.5 * slope[0],
        curvature_max=max(abs(c) for c in curv),
        third_order_max=max(abs(c) for c in third),
    )


def eq08_leading_l1(fun):
    """Growth law f(M) * ln(f(M)/f'(M)) implied by the decay conditions."""

    def value_at(M):
        return fun.f(M) * math.log(fun.f(M) / fun.df(M))

    return LeadingTerm(value_at, f"f(M) ln(f(M)/f'(M)), f={fun.name}", fun.name)
