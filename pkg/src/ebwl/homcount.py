"""Homomorphism counts from small patterns into a target graph.

Two independent routes are provided.  :func:`brute_force_hom_count`
backtracks over vertex maps and works for any small pattern.
:func:`hom_count_peo` handles chordal patterns of treewidth at most two by
eliminating pattern vertices along a perfect elimination order: a vertex
with one remaining neighbor is summed out along target adjacency, a vertex
whose two remaining neighbors are adjacent is summed out along the
common-neighbor lists of the triangle store.

Counts are exact Python integers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .triangles import TriangleStore, enumerate_triangles

BRUTE_FORCE_LIMIT = 8


class PatternTooLarge(ValueError):
    pass


def _pattern_order(pattern: Graph) -> list[int]:
    # BFS per component so every later vertex has an earlier neighbor when possible
    adj = pattern.adjacency_lists()
    seen = [False] * pattern.n
    order = []
    for s in range(pattern.n):
        if seen[s]:
            continue
        seen[s] = True
        queue = [s]
        while queue:
            v = queue.pop(0)
            order.append(v)
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


def brute_force_hom_count(pattern: Graph, target: Graph, limit: int = BRUTE_FORCE_LIMIT) -> int:
    """Number of edge-preserving maps ``pattern -> target`` by backtracking."""
    if pattern.n > limit:
        raise PatternTooLarge(f"pattern has {pattern.n} vertices, brute force limit is {limit}")
    order = _pattern_order(pattern)
    where = {v: i for i, v in enumerate(order)}
    padj = pattern.adjacency_lists()
    back = [[where[w] for w in padj[v] if where[w] < i] for i, v in enumerate(order)]
    tadj = [set(nb) for nb in target.adjacency_lists()]
    tlist = target.adjacency_lists()
    image = [0] * len(order)

    def extend(i: int) -> int:
        if i == len(order):
            return 1
        earlier = back[i]
        if earlier:
            cands = tlist[image[earlier[0]]]
            rest = [tadj[image[j]] for j in earlier[1:]]
        else:
            cands = range(target.n)
            rest = []
        total = 0
        for x in cands:
            if all(x in s for s in rest):
                image[i] = x
                total += extend(i + 1)
        return total

    return extend(0)


@dataclass(frozen=True)
class PatternPEO:
    """A perfect elimination order ``v1..vk`` with at most two earlier neighbors each.

    ``cases[i]`` is ``"a"``, ``"b"`` or ``"c"`` for zero, one, or two
    (adjacent) earlier neighbors of ``order[i]``, listed in ``earlier[i]``.
    """

    pattern: Graph
    order: tuple[int, ...]
    cases: tuple[str, ...]
    earlier: tuple[tuple[int, ...], ...]


def find_peo_tw2(pattern: Graph) -> PatternPEO | None:
    """Greedy simplicial elimination restricted to remaining degree <= 2.

    Returns ``None`` when the pattern is not chordal of treewidth at most 2.
    """
    adj = [set(nb) for nb in pattern.adjacency_lists()]
    alive = set(range(pattern.n))
    removal = []
    remaining_nbrs = {}
    while alive:
        pick = None
        for v in sorted(alive):
            nb = adj[v] & alive
            if len(nb) <= 1:
                pick = v
                break
            if len(nb) == 2:
                a, b = sorted(nb)
                if b in adj[a]:
                    pick = v
                    break
        if pick is None:
            return None
        remaining_nbrs[pick] = tuple(sorted(adj[pick] & alive))
        alive.remove(pick)
        removal.append(pick)
    order = tuple(reversed(removal))
    earlier = tuple(remaining_nbrs[v] for v in order)
    cases = tuple("abc"[len(e)] for e in earlier)
    return PatternPEO(pattern, order, cases, earlier)


def _segment_sum(values: np.ndarray, seg: np.ndarray, nseg: int) -> np.ndarray:
    out = np.zeros(nseg, dtype=object)
    np.add.at(out, seg, values)
    return out


def hom_count_peo(p: PatternPEO, target: Graph, ts: TriangleStore | None = None) -> int:
    """Exact homomorphism count by summing out pattern vertices in elimination order.

    Factors live on target nodes (one per pattern vertex) and on target
    directed edges (one per ordered pattern edge ``(a, b)``, entry ``e``
    meaning ``a -> src(e), b -> dst(e)``).
    """
    if ts is None:
        ts = enumerate_triangles(target)
    g = target
    rev = g.reverse
    src, dst = g.edge_src, g.edge_dst
    one_node = np.ones(g.n, dtype=object)
    unary = {v: one_node.copy() for v in range(p.pattern.n)}
    binary: dict[tuple[int, int], np.ndarray] = {}
    for a, b in p.pattern.edges().tolist():
        binary[(a, b)] = np.ones(g.num_directed, dtype=object)

    def edge_factor(a: int, b: int) -> np.ndarray:
        if (a, b) in binary:
            return binary[(a, b)]
        return binary[(b, a)][rev]

    entry_edge = ts.entry_edge
    scalar = 1
    for x, nb in zip(reversed(p.order), reversed(p.earlier)):
        ux = unary.pop(x)
        if len(nb) == 0:
            scalar *= int(ux.sum())
        elif len(nb) == 1:
            (s,) = nb
            fx = edge_factor(s, x)
            # image of s at src(e), image of x at dst(e)
            msg = _segment_sum(fx * ux[dst], src, g.n)
            unary[s] = unary[s] * msg
        else:
            s, t = nb
            fs = edge_factor(s, x)
            ft = edge_factor(t, x)
            # entry (w, z | y): s -> w, t -> z, x -> y
            vals = fs[ts.e_uy] * ft[ts.e_vy] * ux[ts.y]
            msg = _segment_sum(vals, entry_edge, g.num_directed)
            key = (s, t) if (s, t) in binary else (t, s)
            binary[key] = binary[key] * (msg if key == (s, t) else msg[rev])
        for s in nb:
            binary.pop((s, x), None)
            binary.pop((x, s), None)
        if scalar == 0:
            return 0
    return int(scalar)


def edge_in_k_triangles(target: Graph, ts: TriangleStore, k: int) -> bool:
    """True when some undirected edge lies in at least ``k`` triangles."""
    counts = ts.directed_counts()
    return bool(len(counts) and counts.max() >= k)


def hom_count(pattern: Graph, target: Graph, method: str = "auto",
              ts: TriangleStore | None = None) -> dict:
    peo = find_peo_tw2(pattern)
    if method == "auto":
        method = "peo" if peo is not None else "brute"
    if method == "peo":
        if peo is None:
            raise ValueError("pattern is not chordal of treewidth <= 2; use --method brute")
        count = hom_count_peo(peo, target, ts)
    elif method == "brute":
        count = brute_force_hom_count(pattern, target)
    else:
        raise ValueError(f"unknown method {method!r}")
    return {"count": count, "method": method, "peo_found": peo is not None}
