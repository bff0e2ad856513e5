"""Numeric hot loops, shared by every backend.

Everything here is written so that the numba-compiled version and the plain
Python fallback (``DIXIE_BACKEND=numpy``) execute the exact same arithmetic:
integer work stays below 2**63 so no wrap-around semantics are involved, and
floating point is evaluated in the same order on both paths.

Contents:
  * a splittable counter-based RNG (32-bit hash seeded xorshift128) giving
    one independent stream per (seed, trial) pair;
  * numerically stable Poisson tail / log-survival evaluation;
  * the coupon-collection survival-gap integrand;
  * alias-method trial simulation and interarrival block scanning;
  * the absorbing-chain dynamic program for small exact expectations.
"""

import math

import numpy as np

from ._backend import kernel, prange

M32 = 0xFFFFFFFF


# ---------------------------------------------------------------------------
# splittable RNG: per-(seed, trial) stream, derived by hashing the pair.
# All products are < 2**59 so int64 arithmetic is exact on both backends.
# ---------------------------------------------------------------------------

@kernel()
def mix32(z):
    """32-bit integer hash (two multiply-xorshift rounds)."""
    z = z & M32
    z = (((z >> 16) ^ z) * 0x45D9F3B) & M32
    z = (((z >> 16) ^ z) * 0x45D9F3B) & M32
    return (z >> 16) ^ z


@kernel()
def stream_state(seed, trial):
    """Derive an xorshift128 state for one trial of one seeded run."""
    lo = seed & M32
    hi = (seed >> 32) & M32
    t = trial & M32
    th = (trial >> 32) & M32
    x = mix32(lo ^ mix32(t + 0x9E3779B9))
    y = mix32(hi ^ mix32(t + 0x7F4A7C15))
    z = mix32(lo ^ mix32(th + t + 0x6C078965))
    w = mix32(hi ^ mix32(th + t + 0x41C64E6D))
    if (x | y | z | w) == 0:
        x = 1
    return x, y, z, w


@kernel()
def xs128_step(x, y, z, w):
    t = (x ^ ((x << 11) & M32)) & M32
    w2 = ((w ^ (w >> 19)) ^ (t ^ (t >> 8))) & M32
    return y, z, w, w2


@kernel()
def next_unit(x, y, z, w):
    """One uniform double in [0, 1) with 52 random bits, plus new state."""
    x, y, z, w = xs128_step(x, y, z, w)
    a = w >> 6
    x, y, z, w = xs128_step(x, y, z, w)
    b = w >> 6
    u = (a * 67108864.0 + b) * (1.0 / 4503599627370496.0)
    return u, x, y, z, w


# ---------------------------------------------------------------------------
# stable Poisson tail and log-survival factors
# ---------------------------------------------------------------------------

@kernel()
def log_partial_exp(m, x):
    """ln of the first m terms of e^x, i.e. ln(sum_{i<m} x^i/i!)."""
    if x > 1e100:
        # the (m-1)-th term dominates all lower ones by factors of x/i
        return (m - 1) * math.log(x) - math.lgamma(m)
    term = 1.0
    total = 1.0
    for i in range(1, m):
        term *= x / i
        total += term
    return math.log(total)


@kernel()
def poisson_tail(m, x):
    """P[Poisson(x) >= m], cancellation-free on the whole domain.

    Below the x = m + 1 crossover the complementary series
    e^{-x} sum_{i>=m} x^i/i! is summed to convergence; above it the direct
    complement of the partial exponential sum is used.
    """
    if x <= 0.0:
        return 0.0
    if x < m + 1.0:
        term = math.exp(-x)
        for i in range(1, m + 1):
            term *= x / i
        if term == 0.0:
            return 0.0
        total = term
        i = m + 1
        while True:
            term *= x / i
            total += term
            if term <= 1e-18 * total:
                return total
            i += 1
    return -math.expm1(log_partial_exp(m, x) - x)


@kernel()
def log_incomplete(m, x):
    """ln( S_m(x) e^{-x} ), the log-probability of fewer than m arrivals.

    Equal to log1p(-poisson_tail(m, x)) but safe when the tail rounds to 1.
    """
    if x <= 0.0:
        return 0.0
    if x < m + 1.0:
        return math.log1p(-poisson_tail(m, x))
    return log_partial_exp(m, x) - x


@kernel()
def log_tail(m, x):
    """ln P[Poisson(x) >= m], cancellation-free; -746 stands in for -inf."""
    if x <= 0.0:
        return -746.0
    if x < m + 1.0:
        t = poisson_tail(m, x)
        if t <= 0.0:
            return -746.0
        return math.log(t)
    li = log_partial_exp(m, x) - x
    if li < -745.0:
        return 0.0  # tail is 1 to full precision
    return math.log1p(-math.exp(li))


@kernel()
def survival_gap(t, rates, m):
    """g(t) = P[stopping time > t] in Poissonized time:
    1 - prod_j P[Poisson(r_j t) >= m] over the rate vector."""
    acc = 0.0
    for j in range(rates.shape[0]):
        acc += log_tail(m, rates[j] * t)
        if acc < -745.0:
            return 1.0
    return -math.expm1(acc)


# ---------------------------------------------------------------------------
# simulation loops (alias-method categorical sampling)
# ---------------------------------------------------------------------------

@kernel()
def sim_trial(cutoff, alias, m, draw_cap, seed, trial):
    """Draw until every type has appeared m times; -1 if draw_cap is hit."""
    n = cutoff.shape[0]
    counts = np.zeros(n, np.int64)
    remaining = n
    x, y, z, w = stream_state(seed, trial)
    draws = 0
    while draws < draw_cap:
        u1, x, y, z, w = next_unit(x, y, z, w)
        u2, x, y, z, w = next_unit(x, y, z, w)
        k = int(u1 * n)
        if k >= n:
            k = n - 1
        if u2 >= cutoff[k]:
            k = alias[k]
        draws += 1
        c = counts[k] + 1
        counts[k] = c
        if c == m:
            remaining -= 1
            if remaining == 0:
                return draws
    return -1


@kernel(parallel=True)
def sim_many(cutoff, alias, m, draw_cap, seed, trials):
    """Independent trials; out[i] depends only on (seed, i), never on the
    worker count, so parallel runs are bit-reproducible."""
    out = np.empty(trials, np.int64)
    for i in prange(trials):
        out[i] = sim_trial(cutoff, alias, m, draw_cap, seed, i)
    return out


@kernel()
def interarrival_scan(cutoff, alias, is_rare, total_draws, seed):
    """Lengths of draw blocks ending in (and including) a rare-type draw.

    Returns (completed block count, sum of lengths, sum of squared lengths).
    """
    n = cutoff.shape[0]
    x, y, z, w = stream_state(seed, 0)
    count = 0
    s1 = 0.0
    s2 = 0.0
    block = 0
    for _ in range(total_draws):
        u1, x, y, z, w = next_unit(x, y, z, w)
        u2, x, y, z, w = next_unit(x, y, z, w)
        k = int(u1 * n)
        if k >= n:
            k = n - 1
        if u2 >= cutoff[k]:
            k = alias[k]
        block += 1
        if is_rare[k]:
            count += 1
            s1 += block
            s2 += float(block) * float(block)
            block = 0
    return count, s1, s2


@kernel()
def type_frequencies(cutoff, alias, total_draws, seed):
    """Histogram of alias-method draws, for sampler correctness checks."""
    n = cutoff.shape[0]
    x, y, z, w = stream_state(seed, 0)
    hist = np.zeros(n, np.int64)
    for _ in range(total_draws):
        u1, x, y, z, w = next_unit(x, y, z, w)
        u2, x, y, z, w = next_unit(x, y, z, w)
        k = int(u1 * n)
        if k >= n:
            k = n - 1
        if u2 >= cutoff[k]:
            k = alias[k]
        hist[k] += 1
    return hist


# ---------------------------------------------------------------------------
# absorbing-chain dynamic program (exact small-N oracle)
# ---------------------------------------------------------------------------

@kernel()
def chain_moments(probs, m, nstates):
    """First and second moments of the stopping time by backward recursion.

    States are mixed-radix numbers (base m+1 per type, capped counts); a
    draw can only raise a digit, so filling the table from the absorbing
    state downward solves the first-step equations without a linear system.
    Self-loops on capped types are folded in as a geometric holding time.
    Returns (E[T], E[T^2]) from the empty state.
    """
    n = probs.shape[0]
    e1 = np.zeros(nstates)
    e2 = np.zeros(nstates)
    for idx in range(nstates - 2, -1, -1):
        stay = 0.0
        se1 = 0.0
        se2 = 0.0
        stride = 1
        for j in range(n):
            digit = (idx // stride) % (m + 1)
            if digit == m:
                stay += probs[j]
            else:
                nxt = idx + stride
                se1 += probs[j] * e1[nxt]
                se2 += probs[j] * e2[nxt]
            stride *= m + 1
        leave = 1.0 - stay
        # T = G + T' with G ~ Geo(leave) (support 1,2,...), T' from the
        # next state chosen with prob p_j / leave.
        eg = 1.0 / leave
        eg2 = (2.0 - leave) / (leave * leave)
        mean_next = se1 / leave
        sq_next = se2 / leave
        e1[idx] = eg + mean_next
        e2[idx] = eg2 + 2.0 * eg * mean_next + sq_next
    return e1[0], e2[0]
