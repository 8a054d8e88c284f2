"""
Performance benchmarks for the centra package.

Most benchmarks build fresh group handles per iteration, since invariants
are memoized on the handle and a second call on the same handle is free.
"""

from __future__ import annotations

import time
from collections.abc import Callable
from typing import Any

from centra.cdim import cdim, centralizer_lattice, exact_subgroup_chain_length
from centra.corpus import (
    corpus_by_name,
    make_alternating,
    make_gl,
    make_psl,
    make_sl,
    make_symmetric,
)
from centra.harness import run_suites
from centra.layer import components
from centra.permcore import GroupHandle, conjugacy_class_reps
from centra.subgrp import centralizer_by_backtrack, centralizer_by_filter

GroupMaker = Callable[[], GroupHandle]


class BenchmarkRunner:
    """Utility class for running and measuring performance benchmarks."""

    def __init__(self) -> None:
        self.results: dict[str, dict[str, Any]] = {}

    def time_function(self, func: Callable[[], Any]) -> tuple[Any, float]:
        """Time a function execution and return (result, elapsed_time)."""
        start = time.perf_counter()
        result = func()
        end = time.perf_counter()
        return result, end - start

    def run_benchmark(self, name: str, func: Callable[[], Any], iterations: int = 1) -> dict[str, Any]:
        """Run a benchmark multiple times and collect statistics."""
        times = []
        for _ in range(iterations):
            _, elapsed = self.time_function(func)
            times.append(elapsed)

        stats = {
            "name": name,
            "iterations": iterations,
            "min_time": min(times),
            "max_time": max(times),
            "avg_time": sum(times) / len(times),
            "total_time": sum(times),
        }
        self.results[name] = stats
        return stats

    def print_results(self) -> None:
        """Print benchmark results in a formatted table."""
        print("\n" + "=" * 80)
        print("CENTRA PERFORMANCE BENCHMARKS")
        print("=" * 80)
        print(f"{'Benchmark':<40} {'Avg Time':<12} {'Min Time':<12} {'Max Time':<12}")
        print("-" * 80)
        for name, stats in self.results.items():
            avg = f"{stats['avg_time'] * 1000:.3f}ms"
            min_time = f"{stats['min_time'] * 1000:.3f}ms"
            max_time = f"{stats['max_time'] * 1000:.3f}ms"
            print(f"{name:<40} {avg:<12} {min_time:<12} {max_time:<12}")
        print("=" * 80)


GROUPS: list[tuple[str, GroupMaker]] = [
    ("S4", lambda: make_symmetric(4)),
    ("GL(2,3)", lambda: make_gl(2, 3)),
    ("SL(2,5)", lambda: make_sl(2, 5)),
    ("S5", lambda: make_symmetric(5)),
    ("PSL(2,7)", lambda: make_psl(2, 7)),
    ("A6", lambda: make_alternating(6)),
    ("S6", lambda: make_symmetric(6)),
]


def benchmark_element_tables() -> BenchmarkRunner:
    """Enumeration of element tables."""
    runner = BenchmarkRunner()
    for name, make in GROUPS:
        runner.run_benchmark(f"Element table {name}", lambda make=make: make().table(), iterations=3)
    return runner


def benchmark_centralizer_lattice() -> BenchmarkRunner:
    """Meet-closure of element centralizers."""
    runner = BenchmarkRunner()
    for name, make in GROUPS:
        runner.run_benchmark(
            f"Centralizer lattice {name}", lambda make=make: centralizer_lattice(make()), iterations=3
        )
    return runner


def benchmark_cdim() -> BenchmarkRunner:
    """Longest centralizer chain, lattice included."""
    runner = BenchmarkRunner()
    for name, make in GROUPS:
        runner.run_benchmark(f"cdim {name}", lambda make=make: cdim(make()), iterations=3)
    return runner


def benchmark_centralizers() -> BenchmarkRunner:
    """Filtering the element table against the stabilizer chain search."""
    runner = BenchmarkRunner()
    for name, make in [("S5", GROUPS[3][1]), ("A6", GROUPS[5][1])]:
        G = make()
        samples = [[x] for x in conjugacy_class_reps(G)[1:]]

        def by_filter(G: GroupHandle = G, samples: list[Any] = samples) -> None:
            for S in samples:
                centralizer_by_filter(G, S)

        def by_backtrack(G: GroupHandle = G, samples: list[Any] = samples) -> None:
            for S in samples:
                centralizer_by_backtrack(G, S)

        runner.run_benchmark(f"Centralizers by filter {name}", by_filter, iterations=5)
        runner.run_benchmark(f"Centralizers by backtrack {name}", by_backtrack, iterations=5)
    return runner


def benchmark_components() -> BenchmarkRunner:
    """Components through the soluble radical."""
    runner = BenchmarkRunner()
    for name, make in [("SL(2,5)", GROUPS[2][1]), ("S5", GROUPS[3][1]), ("A6", GROUPS[5][1])]:
        runner.run_benchmark(f"Components {name}", lambda make=make: components(make()), iterations=3)
    return runner


def benchmark_exact_chain_length() -> BenchmarkRunner:
    """Exact l(G) by subgroup enumeration on small groups."""
    runner = BenchmarkRunner()
    for name, make in GROUPS[:4]:
        runner.run_benchmark(
            f"Exact l(G) {name}", lambda make=make: exact_subgroup_chain_length(make()), iterations=1
        )
    return runner


def benchmark_suites() -> BenchmarkRunner:
    """Whole suites on a small slice of the corpus, serial and threaded.

    Corpus handles are shared, so the threaded run reuses memoized invariants
    from the serial one and mostly measures scheduling overhead.
    """
    runner = BenchmarkRunner()
    names = ["S4", "A5", "GL(2,3)", "SL(2,3)", "D12", "Q8"]
    for jobs in (1, 4):
        runner.run_benchmark(
            f"witnesses + structure, jobs={jobs}",
            lambda jobs=jobs: run_suites(
                ["witnesses", "structure"], [corpus_by_name(n) for n in names], jobs
            ),
            iterations=1,
        )
    return runner


def run_all_benchmarks() -> None:
    """Run all benchmark suites and print combined results."""
    print("Starting performance benchmarks...")
    print("This may take a few minutes to complete.\n")

    benchmark_suites_list = [
        ("Element Tables", benchmark_element_tables),
        ("Centralizer Lattice", benchmark_centralizer_lattice),
        ("C-Dimension", benchmark_cdim),
        ("Centralizers", benchmark_centralizers),
        ("Components", benchmark_components),
        ("Exact Chain Length", benchmark_exact_chain_length),
        ("Verification Suites", benchmark_suites),
    ]

    for suite_name, suite_func in benchmark_suites_list:
        print(f"Running {suite_name} benchmarks...")
        runner = suite_func()
        runner.print_results()
        print()


if __name__ == "__main__":
    run_all_benchmarks()
