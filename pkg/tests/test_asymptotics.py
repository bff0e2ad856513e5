import math
from fractions import Fraction

import pytest

from dixie import (
    InterlacedFamily,
    RareClassError,
    WeightLaw,
    check_conditions,
    generate_weights,
    harmonic,
    l1_integral,
    leading_expectation,
    leading_l1,
    leading_sum,
    partial_sum,
    zeta,
)
from dixie.asymptotics import (
    eq08_leading_l1,
    exponential_growth,
    log_power_growth,
    power_growth,
    stretched_exponential_growth,
)

UNI = WeightLaw("uniform")


def test_harmonic_exact():
    assert harmonic(1) == 1.0
    want = float(sum(Fraction(1, j) for j in range(1, 11)))
    assert harmonic(10) == pytest.approx(want, rel=1e-15)
    with pytest.raises(ValueError):
        harmonic(0)


def test_zeta_closed_forms():
    assert zeta(2.0) == pytest.approx(math.pi**2 / 6.0, abs=1e-10)
    assert zeta(4.0) == pytest.approx(math.pi**4 / 90.0, abs=1e-10)
    assert zeta(1.5) == pytest.approx(2.612375348685488, abs=1e-10)
    with pytest.raises(ValueError):
        zeta(1.0)


def test_leading_sum_values():
    assert leading_sum(UNI).value_at(7) == 7.0
    assert leading_sum(WeightLaw("power", 1.0)).value_at(100) == pytest.approx(
        5000.0
    )
    z2 = leading_sum(WeightLaw("zipf", 2.0))
    assert z2.is_constant
    assert z2.value_at(1000) == pytest.approx(1.6449340668, abs=1e-9)
    assert leading_sum(WeightLaw("zipf", 1.0)).value_at(
        math.e**3
    ) == pytest.approx(3.0)
    assert leading_sum(WeightLaw("expdecay", 1.0)).value_at(
        50
    ) == pytest.approx(1.0 / (1.0 - math.exp(-1.0)), rel=1e-14)


SUM_RATIO_LAWS = [
    (UNI, (50, 100, 200, 400)),
    (WeightLaw("power", 1.5), (50, 100, 200, 400)),
    (WeightLaw("zipf", 0.5), (50, 100, 200, 400)),
    (WeightLaw("zipf", 1.0), (50, 100, 200, 400)),
    (WeightLaw("zipf", 2.0), (50, 100, 200, 400)),
    (WeightLaw("expgrow", 1.0), (50, 100, 200, 400)),
    (WeightLaw("expdecay", 1.0), (20, 30, 40, 50)),
    (WeightLaw("recipfactorial"), (5, 10, 15, 20)),
    (WeightLaw("factorial"), (20, 50, 100, 150)),
]


@pytest.mark.parametrize("law,grid", SUM_RATIO_LAWS, ids=lambda v: str(v))
def test_partial_sum_approaches_leading(law, grid):
    lead = leading_sum(law)
    ratios = [partial_sum(law, n) / lead.value_at(n) for n in grid]
    gaps = [abs(r - 1.0) for r in ratios]
    assert gaps[-1] < gaps[0] or gaps[-1] < 1e-12
    assert ratios[-1] == pytest.approx(1.0, rel=0.35)


def test_superexp_last_term_cancels_the_rest():
    law = WeightLaw("superexp", 0.5)
    ratios = [
        partial_sum(law, n) / leading_sum(law).value_at(n)
        for n in (20, 40, 80)
    ]
    assert ratios[0] > ratios[1] > ratios[2] > 1.0
    assert ratios[2] < 1.2


def test_leading_l1_rows():
    assert leading_l1(WeightLaw("zipf", 1.0)).value_at(100) == pytest.approx(
        100 * math.log(100)
    )
    assert leading_l1(UNI).value_at(100) == pytest.approx(math.log(100))
    log_row = leading_l1(WeightLaw("log", 2.0))
    assert log_row.value_at(100) == pytest.approx(math.log(100) ** 3)
    rf = leading_l1(WeightLaw("recipfactorial"))
    assert not rf.constant_known
    assert rf.value_at(10) == pytest.approx(math.factorial(10))
    grown = leading_l1(WeightLaw("power", 2.0))
    assert grown.is_constant and not grown.constant_known


@pytest.mark.parametrize(
    "law,grid",
    [
        (UNI, (50, 100, 200, 400)),
        (WeightLaw("zipf", 1.0), (50, 100, 200, 400)),
        (WeightLaw("zipf", 2.0), (50, 100, 200, 400)),
        (WeightLaw("log", 1.0), (50, 100, 200, 400)),
        (WeightLaw("expdecay", 1.0), (10, 15, 20, 25)),
        (WeightLaw("recipfactorial"), (8, 12, 16, 20)),
    ],
    ids=lambda v: str(v),
)
def test_l1_ratio_stabilizes(law, grid):
    lead = leading_l1(law)
    ratios = [
        l1_integral(generate_weights(law, n), 1) / lead.value_at(n)
        for n in grid
    ]
    if lead.constant_known:
        gaps = [abs(r - 1.0) for r in ratios]
        assert all(b < a for a, b in zip(gaps, gaps[1:]))
    else:
        # only the growth shape is pinned down, so the ratio settles on
        # some unknown constant instead of 1
        diffs = [abs(b - a) for a, b in zip(ratios, ratios[1:])]
        assert all(d2 < d1 for d1, d2 in zip(diffs, diffs[1:]))
        assert ratios[-1] > 0.0


def test_eq08_matches_table_rows():
    # f(x) = x^p gives f ln(f/f') = M^p ln(M/p): same leading law as M^p ln M
    for p in (1.0, 2.0):
        lead = leading_l1(WeightLaw("zipf", p))
        via_f = eq08_leading_l1(power_growth(p))
        ratios = [via_f.value_at(M) / lead.value_at(M) for M in
                  (1e3, 1e6, 1e9, 1e12)]
        gaps = [abs(r - 1.0) for r in ratios]
        assert all(b <= a for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < 0.05
    # f(x) = (ln x)^r against the (ln M)^(r+1) row
    lead = leading_l1(WeightLaw("log", 1.0))
    via_f = eq08_leading_l1(log_power_growth(1.0))
    ratios = [via_f.value_at(M) / lead.value_at(M) for M in
              (1e6, 1e12, 1e24, 1e48)]
    gaps = [abs(r - 1.0) for r in ratios]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_leading_expectation_uniform_zipf():
    fam = InterlacedFamily((UNI, WeightLaw("zipf", 1.0)), 100)
    lead = leading_expectation(fam)
    want = (100 + math.log(100)) * 100 * math.log(100)
    assert lead.value_at(100) == pytest.approx(want, rel=1e-12)


def test_leading_expectation_exponential_uniform():
    fam = InterlacedFamily((WeightLaw("expgrow", 1.0), UNI), 50)
    lead = leading_expectation(fam)
    want = (math.exp(51) / (math.e - 1.0) + 50.0) * math.log(50)
    assert lead.value_at(50) == pytest.approx(want, rel=1e-12)


def test_leading_expectation_three_way():
    fam = InterlacedFamily(
        (WeightLaw("expgrow", 1.0), WeightLaw("zipf", 2.0), UNI), 40
    )
    lead = leading_expectation(fam)
    want = (
        math.exp(41) / (math.e - 1.0) + zeta(2.0) + 40.0
    ) * 40**2 * math.log(40)
    assert lead.value_at(40) == pytest.approx(want, rel=1e-12)


def test_leading_expectation_rejects_growing_rare():
    fam = InterlacedFamily((WeightLaw("power", 1.0), UNI), 10, rare_index=0)
    with pytest.raises(RareClassError):
        leading_expectation(fam)


def test_conditions_power_law():
    rep = check_conditions(power_growth(2.0), (10.0, 100.0, 1000.0))
    assert rep.log_slopes == pytest.approx((0.2, 0.02, 0.002))
    assert rep.grows and rep.slope_vanishes and rep.admissible


def test_conditions_reject_exponential():
    rep = check_conditions(exponential_growth(), (1.0, 5.0, 25.0))
    assert rep.log_slopes == pytest.approx((1.0, 1.0, 1.0))
    assert not rep.slope_vanishes
    assert not rep.admissible


def test_conditions_stretched_exponential():
    rep = check_conditions(
        stretched_exponential_growth(0.5), (10.0, 100.0, 1000.0)
    )
    assert rep.log_slopes == pytest.approx(
        tuple(0.5 * x**-0.5 for x in (10.0, 100.0, 1000.0))
    )
    assert rep.admissible


def test_conditions_validate_inputs():
    with pytest.raises(ValueError):
        check_conditions(power_growth(1.0), (10.0, 5.0))
    with pytest.raises(ValueError):
        check_conditions(log_power_growth(1.0), (0.5, 2.0))
