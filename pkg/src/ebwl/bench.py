"""Wall-clock scaling of triangle preprocessing and EB-1WL rounds."""

from __future__ import annotations

import gc
import time
from dataclasses import asdict, dataclass

import numpy as np

from .graph import RANDOM_ALGORITHM, random_graph
from .refinement import run_eb1wl, step_eb1wl
from .triangles import degeneracy_order, enumerate_triangles


@dataclass
class BenchRecord:
    n: int
    m: int
    degeneracy: int
    triangles: int
    triangle_seconds: float
    round_seconds: float
    full_run_seconds: float
    rounds: int


def _timed(fn) -> tuple[float, object]:
    t0 = time.perf_counter()
    out = fn()
    return time.perf_counter() - t0, out


class _Case:
    """One benchmark graph with its phase closures and best times so far."""

    def __init__(self, target_edges: int, degree: float, seed: int):
        n = max(3, int(round(2 * target_edges / degree)))
        self.g = g = random_graph(n, degree / (n - 1), seed)
        self.d = degeneracy_order(g)
        self.ts = enumerate_triangles(g, self.d)
        # time a round with non-trivial input colors
        self.c1, _ = step_eb1wl(g, self.ts, np.zeros(g.num_directed, dtype=np.int64))
        self.tri_s = self.round_s = float("inf")

    def prep(self):
        d = degeneracy_order(self.g)
        return enumerate_triangles(self.g, d)

    def sample(self):
        self.tri_s = min(self.tri_s, _timed(self.prep)[0])
        self.round_s = min(self.round_s, _timed(lambda: step_eb1wl(self.g, self.ts, self.c1))[0])

    def record(self) -> BenchRecord:
        full_s, trace = _timed(lambda: run_eb1wl(self.g, self.ts))
        g = self.g
        return BenchRecord(g.n, g.m, self.d.degeneracy, self.ts.count, self.tri_s, self.round_s,
                           full_s, trace.num_rounds)


def bench_size(target_edges: int, degree: float, seed: int, repeats: int = 3) -> BenchRecord:
    return BenchRecord(**run_bench([target_edges], degree, seed, repeats)["records"][0])


def run_bench(sizes, degree: float = 8.0, seed: int = 0, repeats: int = 3) -> dict:
    """Best-of-``repeats`` phase times per size.

    Repeats are interleaved across sizes and the collector is paused while
    timing (as timeit does), so a slow spell on the host spreads over all
    sizes instead of inflating one of them.
    """
    sizes = list(sizes)
    if sizes != sorted(sizes):
        raise ValueError("sizes must be ascending")
    cases = [_Case(s, degree, seed) for s in sizes]
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(max(1, repeats)):
            for c in cases:
                c.sample()
        records = [c.record() for c in cases]
    finally:
        if was_enabled:
            gc.enable()
    return {
        "generator": RANDOM_ALGORITHM,
        "degree": degree,
        "seed": seed,
        "records": [asdict(r) for r in records],
    }
