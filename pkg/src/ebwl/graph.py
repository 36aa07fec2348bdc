"""Undirected simple graphs in sorted-adjacency (CSR) form.

Every graph carries a directed-edge index on top of its undirected storage:
the directed edge ``(u, v)`` has id ``offsets[u] + rank of v in N(u)``, i.e.
its position in the flat neighbor array.  Ids therefore range over
``[0, 2m)`` and are grouped by source node.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

RANDOM_ALGORITHM = "gnp-pcg64-v1"


class GraphError(ValueError):
    """Validation or parse failure, tagged with a stable diagnostic code."""

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


E_HEADER = "E_HEADER"
E_SYNTAX = "E_SYNTAX"
E_NODE_RANGE = "E_NODE_RANGE"
E_SELF_LOOP = "E_SELF_LOOP"
E_EDGE_COUNT = "E_EDGE_COUNT"
E_ISOLATED = "E_ISOLATED"
E_ASYMMETRIC = "E_ASYMMETRIC"
E_UNSORTED = "E_UNSORTED"
E_ARGS = "E_ARGS"
E_EMPTY = "E_EMPTY"


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected graph without self-loops, multi-edges or isolated nodes.

    Build instances with :meth:`from_edges`; the raw constructor validates
    the CSR arrays it is handed.
    """

    offsets: np.ndarray
    neighbors: np.ndarray
    _src: np.ndarray = field(init=False, repr=False)
    _rev: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        offsets = _readonly(self.offsets)
        neighbors = _readonly(self.neighbors)
        object.__setattr__(self, "offsets", offsets)
        object.__setattr__(self, "neighbors", neighbors)
        _validate_csr(offsets, neighbors)
        n = len(offsets) - 1
        src = np.repeat(np.arange(n, dtype=np.int64), np.diff(offsets))
        # (v, u) lives in v's segment; keys src*n+dst are globally sorted
        keys = src * n + neighbors
        rev = np.searchsorted(keys, neighbors * n + src)
        object.__setattr__(self, "_src", _readonly(src))
        object.__setattr__(self, "_rev", _readonly(rev))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] | np.ndarray) -> "Graph":
        """Build from an undirected edge list; duplicates collapse, validation is strict."""
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges,
                         dtype=np.int64).reshape(-1, 2)
        if n < 1:
            raise GraphError(E_EMPTY, "graph needs at least one node")
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise GraphError(E_NODE_RANGE, f"node id outside [0, {n})")
        if np.any(arr[:, 0] == arr[:, 1]):
            raise GraphError(E_SELF_LOOP, "self-loop in edge list")
        und = np.unique(np.sort(arr, axis=1), axis=0)
        both = np.concatenate([und, und[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        deg = np.bincount(both[:, 0], minlength=n)
        if np.any(deg == 0):
            iso = int(np.flatnonzero(deg == 0)[0])
            raise GraphError(E_ISOLATED, f"node {iso} is isolated")
        offsets = np.concatenate([[0], np.cumsum(deg)])
        return cls(offsets, both[:, 1])

    # ---- basic accessors -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.offsets) - 1

    @property
    def num_directed(self) -> int:
        return len(self.neighbors)

    @property
    def m(self) -> int:
        return len(self.neighbors) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighborhood(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    # ---- directed-edge index --------------------------------------------

    @property
    def edge_src(self) -> np.ndarray:
        """Source node of every directed edge id."""
        return self._src

    @property
    def edge_dst(self) -> np.ndarray:
        return self.neighbors

    @property
    def reverse(self) -> np.ndarray:
        """``reverse[id(u, v)] == id(v, u)``."""
        return self._rev

    def edge_id(self, u: int, v: int) -> int:
        """Directed edge id of ``(u, v)``; ``KeyError`` when ``{u, v}`` is not an edge."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise KeyError((u, v))
        lo, hi = self.offsets[u], self.offsets[u + 1]
        k = lo + int(np.searchsorted(self.neighbors[lo:hi], v))
        if k >= hi or self.neighbors[k] != v:
            raise KeyError((u, v))
        return int(k)

    def has_edge(self, u: int, v: int) -> bool:
        try:
            self.edge_id(u, v)
        except KeyError:
            return False
        return True

    def edges(self) -> np.ndarray:
        """Undirected edges as an ``(m, 2)`` array with ``u < v``, lexicographically sorted."""
        mask = self._src < self.neighbors
        return np.stack([self._src[mask], self.neighbors[mask]], axis=1)

    def adjacency_lists(self) -> list[list[int]]:
        nb = self.neighbors.tolist()
        off = self.offsets.tolist()
        return [nb[off[v]:off[v + 1]] for v in range(self.n)]

    def dense_adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=bool)
        a[self._src, self.neighbors] = True
        return a

    def relabel(self, perm: np.ndarray) -> "Graph":
        """Graph with node ``v`` renamed ``perm[v]``."""
        perm = np.asarray(perm, dtype=np.int64)
        return Graph.from_edges(self.n, perm[self.edges()])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.neighbors, other.neighbors))

    def __hash__(self):
        return hash((self.offsets.tobytes(), self.neighbors.tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _validate_csr(offsets: np.ndarray, neighbors: np.ndarray) -> None:
    n = len(offsets) - 1
    if n < 1 or offsets[0] != 0 or offsets[-1] != len(neighbors):
        raise GraphError(E_HEADER, "malformed offsets array")
    deg = np.diff(offsets)
    if np.any(deg < 0):
        raise GraphError(E_HEADER, "offsets must be non-decreasing")
    if np.any(deg == 0):
        raise GraphError(E_ISOLATED, f"node {int(np.flatnonzero(deg == 0)[0])} is isolated")
    if len(neighbors) and (neighbors.min() < 0 or neighbors.max() >= n):
        raise GraphError(E_NODE_RANGE, "neighbor id out of range")
    src = np.repeat(np.arange(n), deg)
    if np.any(src == neighbors):
        raise GraphError(E_SELF_LOOP, "self-loop in adjacency")
    if len(neighbors) > 1:
        same = src[1:] == src[:-1]
        if np.any(same & (neighbors[1:] <= neighbors[:-1])):
            raise GraphError(E_UNSORTED, "neighbor lists must be strictly ascending")
    keys = np.sort(src * n + neighbors)
    rkeys = np.sort(neighbors * n + src)
    if not np.array_equal(keys, rkeys):
        raise GraphError(E_ASYMMETRIC, "adjacency is not symmetric")


# ---- edge-list I/O --------------------------------------------------------

def parse_edge_list(data: bytes | str) -> Graph:
    """Parse the ``graph <n> <m>`` edge-list format.

    Comment lines start with ``#``.  The header must be followed by exactly
    ``m`` edge lines; duplicate edges collapse and therefore leave the
    declared ``m`` unmatched, which is reported as ``E_EDGE_COUNT``.
    """
    if isinstance(data, bytes):
        data = data.decode("ascii")
    lines = [ln.strip() for ln in data.split("\n")]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError(E_HEADER, "missing header")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "graph":
        raise GraphError(E_HEADER, f"bad header {lines[0]!r}")
    try:
        n, m = int(head[1]), int(head[2])
    except ValueError:
        raise GraphError(E_HEADER, f"bad header {lines[0]!r}") from None
    if n < 1 or m < 0:
        raise GraphError(E_HEADER, "header counts out of range")
    body = lines[1:]
    if len(body) != m:
        raise GraphError(E_EDGE_COUNT, f"header declares {m} edges, found {len(body)} lines")
    edges = []
    for i, ln in enumerate(body, start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(E_SYNTAX, f"line {i}: expected '<u> <v>'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(E_SYNTAX, f"line {i}: non-integer node id") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(E_NODE_RANGE, f"line {i}: node id outside [0, {n})")
        if u == v:
            raise GraphError(E_SELF_LOOP, f"line {i}: self-loop on {u}")
        edges.append((min(u, v), max(u, v)))
    if len(set(edges)) != m:
        raise GraphError(E_EDGE_COUNT,
                         f"duplicate edges: {len(set(edges))} distinct, header declares {m}")
    return Graph.from_edges(n, np.array(edges, dtype=np.int64).reshape(-1, 2))


def format_edge_list(g: Graph) -> str:
    buf = io.StringIO()
    buf.write(f"graph {g.n} {g.m}\n")
    for u, v in g.edges().tolist():
        buf.write(f"{u} {v}\n")
    return buf.getvalue()


def read_edge_list(path) -> Graph:
    with open(path, "rb") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_edge_list(g))


# ---- generators -----------------------------------------------------------

def circulant(n: int, skips: Iterable[int]) -> Graph:
    """Circulant graph on ``0..n-1`` joining ``i`` and ``i + s mod n`` for each skip ``s``."""
    skips = list(skips)
    if n < 3:
        raise GraphError(E_ARGS, "circulant needs n >= 3")
    if not skips:
        raise GraphError(E_ARGS, "circulant needs at least one skip")
    if len(set(skips)) != len(skips):
        raise GraphError(E_ARGS, "skips must be distinct")
    for s in skips:
        if not 1 <= s <= n // 2:
            raise GraphError(E_ARGS, f"skip {s} outside [1, {n // 2}]")
    i = np.arange(n)
    edges = np.concatenate([np.stack([i, (i + s) % n], axis=1) for s in skips])
    return Graph.from_edges(n, edges)


def cycle(n: int) -> Graph:
    return circulant(n, [1])


def complete(n: int) -> Graph:
    if n < 2:
        raise GraphError(E_ARGS, "complete graph needs n >= 2")
    iu = np.triu_indices(n, 1)
    return Graph.from_edges(n, np.stack(iu, axis=1))


def path(n: int) -> Graph:
    if n < 2:
        raise GraphError(E_ARGS, "path needs n >= 2")
    i = np.arange(n - 1)
    return Graph.from_edges(n, np.stack([i, i + 1], axis=1))


def star(leaves: int) -> Graph:
    if leaves < 1:
        raise GraphError(E_ARGS, "star needs at least one leaf")
    return Graph.from_edges(leaves + 1, [(0, k) for k in range(1, leaves + 1)])


def figure2_pair() -> tuple[Graph, Graph]:
    """The 16-node, 6-regular pair separated by edge colors but not by node-level tests."""
    return circulant(16, [1, 2, 4]), circulant(16, [1, 3, 4])


# node names a..h of the left drawing, in id order
_FIG3_NAMES = "abcdefgh"


def figure3_pair() -> tuple[Graph, Graph]:
    """An 8-cycle and two disjoint 4-cycles; only pair-based refinement separates them."""
    ix = {c: i for i, c in enumerate(_FIG3_NAMES)}
    g1 = [("a", "b"), ("b", "c"), ("c", "g"), ("g", "h"),
          ("h", "f"), ("f", "e"), ("e", "d"), ("d", "a")]
    g2 = [("a", "b"), ("b", "g"), ("c", "a"), ("c", "g"),
          ("d", "f"), ("d", "h"), ("e", "f"), ("h", "e")]
    return (Graph.from_edges(8, [(ix[u], ix[v]) for u, v in g1]),
            Graph.from_edges(8, [(ix[u], ix[v]) for u, v in g2]))


def two_triangles() -> Graph:
    """Two triangles glued along the edge ``{1, 2}``."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def disjoint_union(g1: Graph, g2: Graph) -> tuple[Graph, int]:
    """Union with ``g2``'s nodes shifted by ``g1.n``; returns the graph and that offset."""
    off = g1.n
    offsets = np.concatenate([g1.offsets, g2.offsets[1:] + g1.num_directed])
    neighbors = np.concatenate([g1.neighbors, g2.neighbors + off])
    return Graph(offsets, neighbors), off


def _pair_from_index(k: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    # pairs i < j enumerated row-major; row i starts at i*(2n-i-1)/2
    rows = np.arange(n, dtype=np.int64)
    starts = rows * (2 * n - rows - 1) // 2
    i = np.searchsorted(starts, k, side="right") - 1
    j = k - starts[i] + i + 1
    return i, j


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded Erdős–Rényi ``G(n, p)`` with isolated nodes removed and the rest renumbered.

    The edge count is drawn from ``Binomial(n(n-1)/2, p)`` and that many
    distinct node pairs are picked uniformly, both through
    ``numpy.random.Generator(PCG64(seed))``; the procedure is recorded as
    ``RANDOM_ALGORITHM`` so fixtures can be regenerated bit-for-bit.
    """
    if not 0.0 < p < 1.0:
        raise GraphError(E_ARGS, "p must lie strictly between 0 and 1")
    if n < 2:
        raise GraphError(E_ARGS, "random graph needs n >= 2")
    rng = np.random.Generator(np.random.PCG64(seed))
    pairs = n * (n - 1) // 2
    k = int(rng.binomial(pairs, p))
    if k == 0:
        raise GraphError(E_EMPTY, f"G({n}, {p}) with seed {seed} has no edges")
    idx = np.sort(rng.choice(pairs, size=k, replace=False))
    i, j = _pair_from_index(idx.astype(np.int64), n)
    used = np.zeros(n, dtype=bool)
    used[i] = used[j] = True
    remap = np.cumsum(used) - 1
    return Graph.from_edges(int(used.sum()), np.stack([remap[i], remap[j]], axis=1))


def random_regular(n: int, d: int, seed: int, max_tries: int = 1000) -> Graph:
    """Seeded random ``d``-regular simple graph by rejection-sampled pairing."""
    if n * d % 2 or d >= n or d < 1:
        raise GraphError(E_ARGS, "need 1 <= d < n and n*d even")
    rng = np.random.Generator(np.random.PCG64(seed))
    stubs = np.repeat(np.arange(n), d)
    for _ in range(max_tries):
        e = rng.permutation(stubs).reshape(-1, 2)
        if np.any(e[:, 0] == e[:, 1]):
            continue
        if len(np.unique(np.sort(e, axis=1), axis=0)) != len(e):
            continue
        return Graph.from_edges(n, e)
    raise GraphError(E_EMPTY, "pairing model did not yield a simple graph")


def connected_components(g: Graph) -> np.ndarray:
    """Component label per node, labels numbered by smallest member."""
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components as cc

    a = csr_matrix((np.ones(g.num_directed), g.neighbors, g.offsets), shape=(g.n, g.n))
    _, labels = cc(a, directed=False)
    return labels
