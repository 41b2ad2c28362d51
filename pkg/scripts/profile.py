#!/usr/bin/env -S uv run --with-editable . --script --quiet
# /// script
# requires-python = ">=3.12"
# dependencies = ["pyinstrument"]
# ///
"""Profile a twistlab workload to find the slow exact-arithmetic paths."""

import sys
import time

from perf_test import WORKLOADS
from pyinstrument import Profiler


def main():
    if len(sys.argv) < 2 or sys.argv[1] not in WORKLOADS:
        print(f"Usage: ./scripts/profile.py {{{','.join(sorted(WORKLOADS))}}}")
        sys.exit(1)

    name = sys.argv[1]
    profiler = Profiler(interval=0.001)
    profiler.start()

    start_import = time.perf_counter()
    import twistlab  # noqa: F401

    import_time = time.perf_counter() - start_import

    start_run = time.perf_counter()
    WORKLOADS[name]()
    run_time = time.perf_counter() - start_run

    profiler.stop()

    print("\nTiming breakdown:")
    print(f"  Import:   {import_time * 1000:.2f}ms")
    print(f"  Workload: {run_time * 1000:.2f}ms")
    print(f"  Total:    {(import_time + run_time) * 1000:.2f}ms")

    print("\nDetailed profile:")
    print(profiler.output_text(unicode=True, color=True, show_all=True))


if __name__ == "__main__":
    main()
