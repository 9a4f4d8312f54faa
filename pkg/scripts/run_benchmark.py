import time
import sys
import os
import warnings

import numpy as np

# Add src to path
sys.path.append(os.path.join(os.path.dirname(__file__), '../src'))
from mixport import blockprops, figures, verify
from mixport.config import Config

# Limits the workloads are expected to stay under, in ms.
BUDGETS = {
    "meps_exactness": 1000,
    "oracle_equivalence": 10000,
    "block_properties": 30000,
}


def time_func(func, *args, **kwargs):
    start = time.perf_counter()
    result = func(*args, **kwargs)
    return (time.perf_counter() - start) * 1000, result  # ms


def report(name, elapsed, passed):
    budget = BUDGETS.get(name)
    limit = f"{budget}ms" if budget else "-"
    status = "ok" if passed and (budget is None or elapsed <= budget) else "SLOW" if passed else "FAILED"
    print(f"{name:<24} | {elapsed:9.1f}ms | limit: {limit:<8} | {status}")


def benchmark_suites():
    print("\n--- Verification Suites ---")
    elapsed, result = time_func(verify.check_meps_exactness, np.random.default_rng(Config.default_seed), 200)
    report("meps_exactness", elapsed, result.passed)
    elapsed, result = time_func(verify.check_oracle_equivalence)
    report("oracle_equivalence", elapsed, result.passed)
    elapsed, result = time_func(verify.check_peres_horodecki, np.random.default_rng(Config.default_seed))
    report("peres_horodecki", elapsed, result.passed)


def benchmark_properties():
    print("\n--- Block Properties ---")
    for workers in (1, 4):
        elapsed, reports = time_func(verify.property_reports, Config.default_samples, Config.default_seed, workers)
        passed = all(r.holds for r in reports if r.asserted)
        report("block_properties", elapsed, passed)
        print(f"  workers: {workers}")

    sizes = [100, 500, 1000, 5000]
    for n in sizes:
        elapsed, r = time_func(blockprops.run_suite, "P3_fischer", n, Config.default_seed)
        print(f"Samples: {n:<5} | P3_fischer: {elapsed:.2f}ms | violations: {r.violations}")


def benchmark_figures():
    print("\n--- Figures ---")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for name in figures.FIGURES:
            elapsed, rows = time_func(figures.figure_rows, name)
            print(f"{name}: {len(rows):<4} rows | {elapsed:.2f}ms")


if __name__ == "__main__":
    benchmark_suites()
    benchmark_properties()
    benchmark_figures()
