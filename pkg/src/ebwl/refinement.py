"""Color refinement: 1WL, NC-1WL, the edge-based EB-1WL, and 2WL.

All four engines share one substrate.  A round builds, for every colored
object, a fixed-width integer signature row (multisets are first interned
to ids by :func:`~ebwl._intern.intern_segments`), and the rows are interned
exactly into dense ids ordered by signature.  Because ids are canonical
ranks, two graphs refined separately end up with comparable per-round
tables, and the fingerprint is a hash of those tables.

Distinguishability is decided the normative way: refine the disjoint union
so both graphs share one palette, and compare per-graph histograms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from ._intern import intern_rows, intern_segments, new_hasher, pair_codes
from .graph import Graph, disjoint_union
from .triangles import TriangleStore, enumerate_triangles

TESTS = ("1wl", "nc1wl", "eb1wl", "2wl")
DENSE_LIMIT = 512


class DenseLimitError(ValueError):
    pass


@dataclass
class RefinementTrace:
    test: str
    colors: list[np.ndarray]
    histograms: list[np.ndarray]
    stable_round: int | None
    stabilized: bool
    fingerprint: str
    object_count: int
    digests: list[str] = field(default_factory=list, repr=False)

    @property
    def num_rounds(self) -> int:
        return len(self.colors) - 1

    @property
    def final_colors(self) -> np.ndarray:
        return self.colors[-1]

    def class_counts(self) -> list[int]:
        return [len(h) for h in self.histograms]

    def to_json(self) -> dict:
        return {
            "test": self.test,
            "rounds": [{"histogram": {str(c): int(k) for c, k in enumerate(h)}}
                       for h in self.histograms],
            "stable_round": self.stable_round,
            "stabilized": self.stabilized,
            "fingerprint": self.fingerprint,
        }


@dataclass(frozen=True)
class Verdict:
    distinguished: bool
    separating_round: int | None
    test: str

    def to_json(self) -> dict:
        return {"test": self.test, "distinguished": self.distinguished,
                "separating_round": self.separating_round}


# ---- single-round steps -----------------------------------------------------
#
# Each step maps current colors to (new colors, hash feeder).  The feeder
# writes every interning table of the round into a hasher.

def _feed_rows(h, uniq, counts):
    h.update(np.int64(uniq.shape[0]).tobytes())
    h.update(np.int64(uniq.shape[1] if uniq.ndim == 2 else 0).tobytes())
    h.update(np.ascontiguousarray(uniq, dtype=np.int64).tobytes())
    h.update(np.ascontiguousarray(counts, dtype=np.int64).tobytes())


def step_1wl(g: Graph, c: np.ndarray):
    nb, table = intern_segments(g.offsets, c[g.neighbors])
    ids, uniq, counts = intern_rows(np.stack([c, nb], axis=1))

    def feed(h):
        table.feed(h)
        _feed_rows(h, uniq, counts)
    return ids, feed


def step_nc1wl(g: Graph, ts: TriangleStore, c: np.ndarray):
    nb, t1 = intern_segments(g.offsets, c[g.neighbors])
    # entries of the directed edges leaving v are contiguous in ts
    node_off = ts.offsets[g.offsets]
    k = int(c.max()) + 1
    partner = g.edge_dst[ts.entry_edge]
    pairs, t2 = intern_segments(node_off, pair_codes(c[partner], c[ts.y], k))
    ids, uniq, counts = intern_rows(np.stack([c, nb, pairs], axis=1))

    def feed(h):
        t1.feed(h)
        t2.feed(h)
        _feed_rows(h, uniq, counts)
    return ids, feed


def step_eb1wl(g: Graph, ts: TriangleStore, c: np.ndarray):
    """One EB-1WL round over directed edges.

    Signature of ``(u, v)``: its color, the multiset of colors on edges
    leaving ``u``, the multiset of pairs ``(c(u, y), c(v, y))`` over common
    neighbors ``y``, and the multiset of colors on edges leaving ``v``.
    """
    around, t1 = intern_segments(g.offsets, c)
    k = int(c.max()) + 1 if len(c) else 1
    tri, t2 = intern_segments(ts.offsets, pair_codes(c[ts.e_uy], c[ts.e_vy], k))
    rows = np.stack([c, around[g.edge_src], tri, around[g.edge_dst]], axis=1)
    ids, uniq, counts = intern_rows(rows)

    def feed(h):
        t1.feed(h)
        t2.feed(h)
        _feed_rows(h, uniq, counts)
    return ids, feed


def initial_2wl(g: Graph) -> np.ndarray:
    a = g.dense_adjacency()
    atomic = np.where(a, 1, 2)
    np.fill_diagonal(atomic, 0)
    ids, _, _ = intern_rows(atomic.reshape(-1, 1))
    return ids.reshape(g.n, g.n)


def step_2wl(c: np.ndarray, chunk: int = 64):
    """One round of pair refinement on an ``n x n`` color matrix.

    ``(u, v)`` collects the multiset over all ``w`` of ``(c(u, w), c(w, v))``.
    """
    n = c.shape[0]
    k = int(c.max()) + 1
    dtype = np.int32 if k * k < 2**31 else np.int64
    rows = np.empty((n, n, n + 1), dtype=dtype)
    rows[:, :, 0] = c
    cw = c.astype(dtype)
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        # codes[u, v, w] = c[u, w] * k + c[w, v]
        codes = cw[lo:hi, None, :] * k + cw.T[None, :, :]
        codes.sort(axis=2)
        rows[lo:hi, :, 1:] = codes
    ids, uniq, counts = intern_rows(rows.reshape(n * n, n + 1))

    def feed(h):
        _feed_rows(h, uniq, counts)
    return ids.reshape(n, n), feed


# ---- round driver -------------------------------------------------------------

def _iter_rounds(c0: np.ndarray, step: Callable, max_rounds: int) -> Iterator[tuple[int, np.ndarray, Callable | None, bool]]:
    """Yield ``(round, colors, feeder, changed)``; stops after the first unchanged round."""
    c = c0
    yield 0, c, None, True
    ncls = int(c.max()) + 1 if c.size else 0
    for r in range(1, max_rounds + 1):
        c, feed = step(c)
        nnew = int(c.max()) + 1 if c.size else 0
        changed = nnew != ncls
        yield r, c, feed, changed
        if not changed:
            return
        ncls = nnew


def _engine(g: Graph, test: str, ts: TriangleStore | None, dense_limit: int):
    if test == "1wl":
        return np.zeros(g.n, dtype=np.int64), lambda c: step_1wl(g, c), g.n
    if test == "nc1wl":
        ts = ts if ts is not None else enumerate_triangles(g)
        return np.zeros(g.n, dtype=np.int64), lambda c: step_nc1wl(g, ts, c), g.n
    if test == "eb1wl":
        ts = ts if ts is not None else enumerate_triangles(g)
        return (np.zeros(g.num_directed, dtype=np.int64),
                lambda c: step_eb1wl(g, ts, c), g.num_directed)
    if test == "2wl":
        if g.n > dense_limit:
            raise DenseLimitError(f"2WL is dense: n={g.n} exceeds limit {dense_limit}")
        return initial_2wl(g), step_2wl, g.n * g.n
    raise ValueError(f"unknown test {test!r}; expected one of {TESTS}")


def refine(g: Graph, test: str, ts: TriangleStore | None = None,
           max_rounds: int | None = None, dense_limit: int = DENSE_LIMIT) -> RefinementTrace:
    """Run one refinement engine to stability (or ``max_rounds``) and record the trace.

    ``stable_round`` is the first round ``l >= 1`` whose partition is final,
    certified by one extra round; it is ``None`` when the round cap stopped
    the run first.
    """
    c0, step, nobj = _engine(g, test, ts, dense_limit)
    if max_rounds is None:
        max_rounds = max(nobj, 1)
    h = new_hasher()
    h.update(f"{test}:{nobj}".encode())
    colors, hists, digests = [], [], []
    stabilized = False
    last = 0
    for r, c, feed, changed in _iter_rounds(c0, step, max_rounds):
        flat = c.reshape(-1)
        colors.append(c)
        hists.append(np.bincount(flat, minlength=int(flat.max()) + 1 if flat.size else 0))
        h.update(np.int64(r).tobytes())
        if feed is None:
            h.update(np.ascontiguousarray(hists[-1], dtype=np.int64).tobytes())
        else:
            feed(h)
        digests.append(h.copy().hexdigest())
        last = r
        if r > 0 and not changed:
            stabilized = True
    stable_round = max(1, last - 1) if stabilized else None
    return RefinementTrace(test, colors, hists, stable_round, stabilized,
                           h.hexdigest(), nobj, digests)


def run_1wl(g: Graph, max_rounds: int | None = None) -> RefinementTrace:
    return refine(g, "1wl", max_rounds=max_rounds)


def run_nc1wl(g: Graph, ts: TriangleStore | None = None, max_rounds: int | None = None) -> RefinementTrace:
    return refine(g, "nc1wl", ts=ts, max_rounds=max_rounds)


def run_eb1wl(g: Graph, ts: TriangleStore | None = None, max_rounds: int | None = None) -> RefinementTrace:
    return refine(g, "eb1wl", ts=ts, max_rounds=max_rounds)


def run_2wl(g: Graph, max_rounds: int | None = None, dense_limit: int = DENSE_LIMIT) -> RefinementTrace:
    return refine(g, "2wl", max_rounds=max_rounds, dense_limit=dense_limit)


def fingerprint(trace: RefinementTrace) -> str:
    """SHA-256 over every round's canonical interning tables (hex)."""
    return trace.fingerprint


# ---- distinguishability ---------------------------------------------------------

def _split_masks(test: str, g1: Graph, u: Graph, off: int):
    if test in ("1wl", "nc1wl"):
        first = np.arange(u.n) < off
        return first, ~first
    if test == "eb1wl":
        first = np.arange(u.num_directed) < g1.num_directed
        return first, ~first
    side = np.arange(u.n) < off
    return (side[:, None] & side[None, :]), (~side[:, None] & ~side[None, :])


def distinguish(g1: Graph, g2: Graph, test: str, max_rounds: int | None = None,
                dense_limit: int = DENSE_LIMIT) -> Verdict:
    """Refine ``g1 + g2`` with a shared palette and compare per-graph histograms each round.

    For EB-1WL differing node counts separate the graphs outright
    (reported as round 0).
    """
    if test not in TESTS:
        raise ValueError(f"unknown test {test!r}; expected one of {TESTS}")
    if test == "eb1wl" and g1.n != g2.n:
        return Verdict(True, 0, test)
    u, off = disjoint_union(g1, g2)
    c0, step, nobj = _engine(u, test, None, dense_limit)
    if max_rounds is None:
        max_rounds = max(nobj, 1)
    m1, m2 = _split_masks(test, g1, u, off)
    for r, c, _, _ in _iter_rounds(c0, step, max_rounds):
        k = int(c.max()) + 1
        h1 = np.bincount(c[m1], minlength=k)
        h2 = np.bincount(c[m2], minlength=k)
        if not np.array_equal(h1, h2):
            return Verdict(True, r, test)
    return Verdict(False, None, test)


def node_partition_from_edges(g: Graph, edge_colors: np.ndarray) -> np.ndarray:
    """Node ids keyed by the multiset of colors on their outgoing directed edges."""
    ids, _ = intern_segments(g.offsets, edge_colors)
    return ids


def partition_refines(fine: np.ndarray, coarse: np.ndarray) -> bool:
    """True when equal ``fine`` labels always imply equal ``coarse`` labels."""
    fine = np.asarray(fine).reshape(-1)
    coarse = np.asarray(coarse).reshape(-1)
    pairs = np.unique(np.stack([fine, coarse], axis=1), axis=0)
    return len(np.unique(pairs[:, 0])) == len(pairs)
