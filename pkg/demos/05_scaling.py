"""
Near-linear preprocessing and refinement rounds
===============================================

Doubling the edge count of a sparse random graph roughly doubles both the
triangle listing time and the time of one edge-based refinement round.
"""

from ebwl.bench import run_bench

doc = run_bench([5_000, 10_000, 20_000, 40_000], degree=8.0, seed=0, repeats=3)
prev = None
for r in doc["records"]:
    line = f"m={r['m']:6d} tri={r['triangle_seconds']*1e3:7.1f}ms round={r['round_seconds']*1e3:7.1f}ms"
    if prev:
        line += (f"  x{r['triangle_seconds'] / prev['triangle_seconds']:.2f}"
                 f" x{r['round_seconds'] / prev['round_seconds']:.2f}")
    print(line)
    prev = r
