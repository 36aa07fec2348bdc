"""Degeneracy ordering and triangle tables indexed by directed edge.

Triangles are listed once each by orienting every edge toward the endpoint
that comes later in the degeneracy order (out-degree is then at most the
degeneracy) and intersecting out-neighborhoods with a reusable mark array,
following Chiba and Nishizeki.  The result is expanded so that every
directed edge ``(u, v)`` owns a contiguous run of entries
``(y, id(u, y), id(v, y))``, one per common neighbor ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class DegeneracyInfo:
    order: np.ndarray
    degeneracy: int
    position: np.ndarray


def degeneracy_order(g: Graph) -> DegeneracyInfo:
    """Min-degree elimination with a bucket queue (Batagelj-Zaversnik), O(n + m).

    Nodes start sorted by (degree, id); a node whose degree drops is swapped
    to the front of its bucket, so ties are deterministic but not by id.
    """
    n = g.n
    deg = g.degrees.tolist()
    adj = g.adjacency_lists()
    vert = np.argsort(g.degrees, kind="stable").tolist()
    pos = [0] * n
    for i, v in enumerate(vert):
        pos[v] = i
    maxd = max(deg, default=0)
    start = [0] * (maxd + 2)
    for d in deg:
        start[d + 1] += 1
    for d in range(1, maxd + 2):
        start[d] += start[d - 1]
    k = 0
    for i in range(n):
        v = vert[i]
        dv = deg[v]
        k = max(k, dv)
        for w in adj[v]:
            dw = deg[w]
            if dw > dv:
                # swap w with the first node of its bucket, then shrink the bucket
                pw, f = pos[w], start[dw]
                x = vert[f]
                if x != w:
                    vert[pw], vert[f] = x, w
                    pos[x], pos[w] = pw, f
                start[dw] += 1
                deg[w] = dw - 1
    order = np.array(vert, dtype=np.int64)
    position = np.empty(n, dtype=np.int64)
    position[order] = np.arange(n)
    return DegeneracyInfo(order, k, position)


@dataclass(frozen=True, eq=False)
class TriangleStore:
    """Per-directed-edge common-neighbor lists.

    ``offsets`` has length ``2m + 1``; entries ``offsets[e]:offsets[e+1]``
    belong to directed edge ``e = (u, v)`` and hold the common neighbor
    ``y`` together with the ids of ``(u, y)`` and ``(v, y)``.
    """

    graph: Graph
    offsets: np.ndarray
    y: np.ndarray
    e_uy: np.ndarray
    e_vy: np.ndarray
    triangles: np.ndarray  # (t, 3), each triangle once, sorted by node id

    @property
    def count(self) -> int:
        return len(self.triangles)

    @property
    def entry_edge(self) -> np.ndarray:
        """Owning directed edge of every entry."""
        return np.repeat(np.arange(len(self.offsets) - 1), np.diff(self.offsets))

    def directed_counts(self) -> np.ndarray:
        return np.diff(self.offsets)

    def edge_counts(self) -> np.ndarray:
        """Triangle count per undirected edge, aligned with ``graph.edges()``."""
        g = self.graph
        return self.directed_counts()[g.edge_src < g.edge_dst]

    def node_counts(self) -> np.ndarray:
        return np.bincount(self.triangles.reshape(-1), minlength=self.graph.n)

    def common_neighbors(self, u: int, v: int) -> np.ndarray:
        e = self.graph.edge_id(u, v)
        return self.y[self.offsets[e]:self.offsets[e + 1]]


def _list_triangles(g: Graph, d: DegeneracyInfo) -> np.ndarray:
    pos = d.position.tolist()
    adj = g.adjacency_lists()
    out = [[w for w in nb if pos[w] > pos[v]] for v, nb in enumerate(adj)]
    mark = [-1] * g.n
    found = []
    for u in range(g.n):
        ou = out[u]
        if len(ou) < 2:
            continue
        for w in ou:
            mark[w] = u
        for v in ou:
            for w in out[v]:
                if mark[w] == u:
                    found.append((u, v, w))
    if not found:
        return np.zeros((0, 3), dtype=np.int64)
    return np.sort(np.array(found, dtype=np.int64), axis=1)


def _edge_ids(g: Graph, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    keys = g.edge_src * g.n + g.edge_dst
    return np.searchsorted(keys, u * g.n + v)


def enumerate_triangles(g: Graph, d: DegeneracyInfo | None = None) -> TriangleStore:
    if d is None:
        d = degeneracy_order(g)
    tri = _list_triangles(g, d)
    order = np.lexsort((tri[:, 2], tri[:, 1], tri[:, 0])) if len(tri) else np.zeros(0, int)
    tri = tri[order]
    a, b, c = tri[:, 0], tri[:, 1], tri[:, 2]
    # six directed-edge entries per triangle: (u, v | y)
    u = np.concatenate([a, b, a, c, b, c])
    v = np.concatenate([b, a, c, a, c, b])
    y = np.concatenate([c, c, b, b, a, a])
    e = _edge_ids(g, u, v)
    e_uy = _edge_ids(g, u, y)
    e_vy = _edge_ids(g, v, y)
    srt = np.lexsort((y, e))
    e, y, e_uy, e_vy = e[srt], y[srt], e_uy[srt], e_vy[srt]
    counts = np.bincount(e, minlength=g.num_directed)
    offsets = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    return TriangleStore(g, offsets, y, e_uy, e_vy, tri)


def edge_triangle_profile(ts: TriangleStore) -> dict[int, int]:
    """Histogram: triangles-per-undirected-edge -> number of edges."""
    vals, cnt = np.unique(ts.edge_counts(), return_counts=True)
    return {int(k): int(c) for k, c in zip(vals, cnt)}


def triangle_stats(g: Graph) -> dict:
    d = degeneracy_order(g)
    ts = enumerate_triangles(g, d)
    return {
        "n": g.n,
        "m": g.m,
        "triangles": ts.count,
        "degeneracy": d.degeneracy,
        "edge_triangle_histogram": {str(k): v for k, v in edge_triangle_profile(ts).items()},
    }
