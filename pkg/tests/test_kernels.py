import math

import mpmath
import numpy as np
import pytest

from dixie import kernels
from dixie.montecarlo import alias_setup


def mp_poisson_tail(m, x):
    """High-precision oracle: P[Poisson(x) >= m] as a regularized lower
    incomplete gamma (cancellation-free at any magnitude)."""
    with mpmath.workdps(80):
        return float(mpmath.gammainc(m, 0, mpmath.mpf(x), regularized=True))


@pytest.mark.parametrize("m", [1, 2, 3, 5, 10])
@pytest.mark.parametrize(
    "x", [1e-12, 1e-6, 0.01, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 300.0]
)
def test_poisson_tail_matches_high_precision(m, x):
    got = kernels.poisson_tail(m, x)
    want = mp_poisson_tail(m, x)
    assert got == pytest.approx(want, rel=1e-13, abs=1e-300)


def test_poisson_tail_m1_closed_form():
    for x in [0.0, 0.1, math.log(2), 3.0, 40.0]:
        assert kernels.poisson_tail(1, x) == pytest.approx(
            -math.expm1(-x), rel=1e-15
        )
    assert kernels.poisson_tail(1, math.log(2)) == pytest.approx(0.5)


def test_poisson_tail_tiny_argument_leading_term():
    # leading complementary-series term x^3/6 at x = 1e-6
    got = kernels.poisson_tail(3, 1e-6)
    assert got == pytest.approx(1e-18 / 6.0, rel=1e-3)
    assert got == pytest.approx(mp_poisson_tail(3, 1e-6), rel=1e-12)


def test_poisson_tail_total_function():
    assert kernels.poisson_tail(1, 0.0) == 0.0
    assert kernels.poisson_tail(4, 1e-300) == 0.0
    assert kernels.poisson_tail(2, 1e6) == pytest.approx(1.0)


def test_log_tail_consistency():
    for m in (1, 2, 4):
        for x in (0.01, 0.5, 3.0, 20.0, 200.0):
            assert math.exp(kernels.log_tail(m, x)) == pytest.approx(
                kernels.poisson_tail(m, x), rel=1e-12
            )
    assert kernels.log_tail(2, 1e6) == 0.0
    assert kernels.log_tail(3, 0.0) <= -745.0


def test_log_incomplete_consistency():
    for m in (1, 3):
        for x in (0.2, 1.0, 8.0, 80.0):
            assert math.exp(kernels.log_incomplete(m, x)) == pytest.approx(
                1.0 - kernels.poisson_tail(m, x), rel=1e-12
            )


def test_survival_gap_shape():
    probs = np.array([0.5, 0.3, 0.2])
    ts = np.linspace(0.01, 200.0, 400)
    vals = [kernels.survival_gap(t, probs, 2) for t in ts]
    assert all(0.0 <= v <= 1.0 for v in vals)
    assert vals[0] == pytest.approx(1.0, abs=1e-9)  # no one done yet
    assert vals[-1] < 1e-12
    # tail is monotone nonincreasing once collection becomes likely
    late = vals[100:]
    assert all(b <= a + 1e-12 for a, b in zip(late, late[1:]))


def test_stream_state_deterministic_and_distinct():
    a = kernels.stream_state(12345, 0)
    b = kernels.stream_state(12345, 0)
    c = kernels.stream_state(12345, 1)
    d = kernels.stream_state(54321, 0)
    assert a == b
    assert a != c and a != d and c != d


def test_next_unit_range_and_mean():
    x, y, z, w = kernels.stream_state(99, 7)
    total = 0.0
    lo, hi = 1.0, 0.0
    n = 20000
    for _ in range(n):
        u, x, y, z, w = kernels.next_unit(x, y, z, w)
        total += u
        lo, hi = min(lo, u), max(hi, u)
    assert 0.0 <= lo and hi < 1.0
    assert total / n == pytest.approx(0.5, abs=0.01)


def test_alias_table_reconstructs_probs():
    probs = np.array([0.05, 0.1, 0.15, 0.2, 0.5])
    cutoff, alias = alias_setup(probs)
    n = len(probs)
    assert np.all((0.0 <= cutoff) & (cutoff <= 1.0 + 1e-12))
    rebuilt = cutoff.copy()
    for j in range(n):
        if alias[j] != j:
            rebuilt[alias[j]] += 1.0 - cutoff[j]
    np.testing.assert_allclose(rebuilt / n, probs, rtol=1e-12)


def test_chain_moments_single_coupon():
    e1, e2 = kernels.chain_moments(np.array([1.0]), 3, 4)
    # negative binomial with p=1 degenerates to exactly m draws
    assert e1 == pytest.approx(3.0, rel=1e-14)
    assert e2 == pytest.approx(9.0, rel=1e-14)


def test_chain_moments_biased_two_coupons():
    # solved by hand from the 4-state first-step equations
    e1, _ = kernels.chain_moments(np.array([2 / 3, 1 / 3]), 1, 4)
    assert e1 == pytest.approx(3.5, rel=1e-13)
