import sys
from itertools import combinations
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ebwl.graph import Graph, GraphError, circulant, random_graph, random_regular  # noqa: E402


def random_corpus(count, seed, n_range=(6, 40), degree_range=(2.0, 8.0)):
    """Seeded G(n, p) graphs with expected degree in ``degree_range``."""
    rng = np.random.default_rng(seed)
    out = []
    k = 0
    while len(out) < count:
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        deg = float(rng.uniform(*degree_range))
        p = min(deg / (n - 1), 0.95)
        try:
            out.append(random_graph(n, p, seed * 100003 + k))
        except GraphError:
            pass
        k += 1
    return out


def bipartite_corpus(count, seed, n_range=(6, 30), degree_range=(1.5, 4.0)):
    """Triangle-free graphs: random graphs with same-parity edges dropped."""
    out = []
    for g in random_corpus(3 * count, seed, n_range, degree_range):
        e = g.edges()
        e = e[(e[:, 0] + e[:, 1]) % 2 == 1]
        if len(e) == 0:
            continue
        used = np.unique(e)
        remap = np.full(g.n, -1)
        remap[used] = np.arange(len(used))
        out.append(Graph.from_edges(len(used), remap[e]))
        if len(out) == count:
            break
    return out


def hard_pairs(seed=0):
    """Pairs that share degree sequences, so node-level tests have work to do."""
    pairs = []
    for d in (3, 4):
        for s in range(12):
            n = 12 + 2 * (s % 5)
            pairs.append((random_regular(n, d, seed + 2 * s),
                          random_regular(n, d, seed + 2 * s + 1)))
    # equal-size circulants with two skips below n/2 are all 4-regular
    for n in (12, 13, 14, 16, 18, 20):
        sets = list(combinations(range(1, (n - 1) // 2 + 1), 2))
        for x, y in zip(sets, sets[1:]):
            pairs.append((circulant(n, x), circulant(n, y)))
    return pairs


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(120, seed=11)
