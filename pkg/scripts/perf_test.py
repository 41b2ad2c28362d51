#!/usr/bin/env -S uv run --with-editable . --script --quiet
# /// script
# requires-python = ">=3.12"
# ///
"""
Time the expensive twistlab workloads.

Usage:
    ./scripts/perf_test.py WORKLOAD
    ./scripts/perf_test.py WORKLOAD --benchmark [--runs N] [--warmup N]

Examples:
    ./scripts/perf_test.py oracle
    ./scripts/perf_test.py gamma --benchmark --runs 5
"""

import argparse
import sys
import time
from statistics import mean, stdev


def _oracle():
    from twistlab.zoo import brute_force_rmatrices, group_algebra, sweedler_presentation

    brute_force_rmatrices(group_algebra([2]))
    brute_force_rmatrices(sweedler_presentation())


def _gamma():
    from twistlab.twist import RMatrix
    from twistlab.zoo import gamma_cell, gamma_twist

    twist, _ = gamma_twist(3)
    gamma_cell(3, RMatrix.trivial(twist.carrier))


def _diagonal():
    from twistlab.twtr import diagonal
    from twistlab.zoo import sweedler_cell

    diagonal(sweedler_cell(2, 1, 1, 2), sweedler_cell(1, 0, 1, 1))


def _gauge():
    from twistlab.twtr import gauge_equivalent
    from twistlab.zoo import sweedler_cell

    gauge_equivalent(sweedler_cell(1, 0, 1, 1), sweedler_cell(-1, 0, 1, 1))


WORKLOADS = {"oracle": _oracle, "gamma": _gamma, "diagonal": _diagonal, "gauge": _gauge}


def run_workload(name: str) -> float:
    """Run one workload and return the time taken."""
    start = time.perf_counter()
    try:
        WORKLOADS[name]()
    except Exception as e:
        print(f"Error running {name}: {e}", file=sys.stderr)
        sys.exit(1)
    return time.perf_counter() - start


def benchmark_workload(name: str, runs: int = 10, warmup: int = 1) -> None:
    print(f"Benchmarking {name}")
    print(f"Warmup: {warmup} runs, Benchmark: {runs} runs\n")

    print("Warming up...", end="", flush=True)
    for _ in range(warmup):
        run_workload(name)
        print(".", end="", flush=True)
    print(" done")

    times = []
    print(f"Running {runs} iterations...", end="", flush=True)
    for _ in range(runs):
        times.append(run_workload(name))
        print(".", end="", flush=True)
    print(" done\n")

    avg = mean(times)
    std = stdev(times) if len(times) > 1 else 0.0
    print(f"Results for {name}:")
    print(f"  Average: {avg * 1000:.2f}ms ± {std * 1000:.2f}ms")
    print(f"  Min:     {min(times) * 1000:.2f}ms")
    print(f"  Max:     {max(times) * 1000:.2f}ms")
    print(f"  Total:   {sum(times) * 1000:.2f}ms for {runs} runs")


def main():
    parser = argparse.ArgumentParser(description="Time twistlab workloads")
    parser.add_argument("workload", choices=sorted(WORKLOADS))
    parser.add_argument(
        "--benchmark",
        "-b",
        action="store_true",
        help="Run benchmark mode with multiple iterations",
    )
    parser.add_argument("--runs", "-r", type=int, default=10, help="Number of benchmark runs (default: 10)")
    parser.add_argument("--warmup", "-w", type=int, default=1, help="Number of warmup runs (default: 1)")
    args = parser.parse_args()

    if args.benchmark:
        benchmark_workload(args.workload, args.runs, args.warmup)
    else:
        print(f"{args.workload}: {run_workload(args.workload) * 1000:.2f}ms")


if __name__ == "__main__":
    main()
