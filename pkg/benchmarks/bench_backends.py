"""Compare the numba-compiled kernels against the plain-Python fallback.

Runs the same two workloads (a simulation batch and an integrand sweep) in
fresh subprocesses with DIXIE_BACKEND=numba and DIXIE_BACKEND=numpy, checks
that the numeric output is bit-identical, and reports wall-clock times.

Usage: python3 benchmarks/bench_backends.py [--trials 20000] [--types 20]
"""

import argparse
import json
import os
import subprocess
import sys
import textwrap

WORKLOAD = textwrap.dedent(
    """
    import json, sys, time
    import numpy as np
    from dixie import SimulationConfig, WeightLaw, simulate_summary, \\
        single_law_distribution
    from dixie import kernels

    trials, n_types = int(sys.argv[1]), int(sys.argv[2])
    dist = single_law_distribution(WeightLaw("zipf", 1.0), n_types)

    t0 = time.perf_counter()
    summary = simulate_summary(
        dist, 2, SimulationConfig(trials=trials, seed=7)
    )
    sim_time = time.perf_counter() - t0

    rates = np.ascontiguousarray(dist.probs)
    t0 = time.perf_counter()
    acc = 0.0
    for t in np.linspace(0.1, 4000.0, 20000):
        acc += kernels.survival_gap(t, rates, 2)
    integrand_time = time.perf_counter() - t0

    print(json.dumps({
        "mean": summary.mean,
        "second": summary.second_rising,
        "integrand_sum": acc,
        "sim_time": sim_time,
        "integrand_time": integrand_time,
    }))
    """
)


def run(backend, trials, types):
    env = dict(os.environ, DIXIE_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", WORKLOAD, str(trials), str(types)],
        capture_output=True, text=True, env=env, check=True,
    )
    return json.loads(out.stdout.splitlines()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=20_000)
    ap.add_argument("--types", type=int, default=20)
    args = ap.parse_args()

    print(f"workload: {args.trials} trials x {args.types} coupon types, "
          "plus 20000 integrand evaluations")
    results = {}
    for backend in ("numba", "numpy"):
        # warm once so numba's compile cache does not distort timings
        run(backend, 10, args.types)
        results[backend] = run(backend, args.trials, args.types)
        r = results[backend]
        print(f"  {backend:5s}: simulation {r['sim_time']:8.3f}s   "
              f"integrand sweep {r['integrand_time']:8.3f}s")

    nb, np_ = results["numba"], results["numpy"]
    for key in ("mean", "second", "integrand_sum"):
        if nb[key] != np_[key]:
            raise SystemExit(
                f"backend mismatch on {key}: {nb[key]!r} vs {np_[key]!r}"
            )
    print("numeric output bit-identical across backends")
    print(f"speedup: simulation x{np_['sim_time'] / nb['sim_time']:.0f}, "
          f"integrand x{np_['integrand_time'] / nb['integrand_time']:.0f}")


if __name__ == "__main__":
    main()
