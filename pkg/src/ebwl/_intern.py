"""Exact, canonical interning of tuples and multisets of color ids.

New ids are the ranks of the distinct signatures in lexicographic order,
so they depend only on the *set* of signatures present and never on node
numbering.  That makes round-by-round color ids isomorphism invariant.
"""

from __future__ import annotations

import hashlib

import numpy as np


def intern_rows(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Dense ids for the rows of a 2-D integer array.

    Returns ``(ids, unique_rows, counts)`` with ``unique_rows`` sorted
    lexicographically and ``ids[i]`` the rank of ``rows[i]``.
    """
    rows = np.ascontiguousarray(rows)
    if rows.shape[0] == 0:
        return (np.zeros(0, dtype=np.int64), rows[:0], np.zeros(0, dtype=np.int64))
    if rows.shape[1] == 0:
        n = rows.shape[0]
        return np.zeros(n, dtype=np.int64), rows[:1], np.array([n], dtype=np.int64)
    uniq, inv, counts = np.unique(rows, axis=0, return_inverse=True, return_counts=True)
    return inv.reshape(-1).astype(np.int64), uniq, counts.astype(np.int64)


class SegmentTable:
    """Distinct multisets found by :func:`intern_segments`, grouped by size."""

    __slots__ = ("lengths", "blocks")

    def __init__(self, lengths: list[int], blocks: list[np.ndarray]):
        self.lengths = lengths
        self.blocks = blocks

    def feed(self, h) -> None:
        h.update(np.asarray(self.lengths, dtype=np.int64).tobytes())
        for L, blk in zip(self.lengths, self.blocks):
            h.update(np.int64(blk.shape[0]).tobytes())
            h.update(np.ascontiguousarray(blk, dtype=np.int64).tobytes())


def intern_segments(offsets: np.ndarray, values: np.ndarray) -> tuple[np.ndarray, SegmentTable]:
    """Dense id per segment ``values[offsets[i]:offsets[i+1]]`` viewed as a multiset.

    Each segment is sorted, segments are bucketed by length, and each bucket
    is interned as a dense 2-D block.  Ids are ordered by (length, sorted
    content), so equal multisets receive equal ids and the numbering is
    canonical.
    """
    offsets = np.asarray(offsets, dtype=np.int64)
    values = np.asarray(values, dtype=np.int64)
    nseg = len(offsets) - 1
    lens = np.diff(offsets)
    seg = np.repeat(np.arange(nseg, dtype=np.int64), lens)
    # sorted within segment, segments stay in order
    order = np.lexsort((values, seg))
    svals = values[order]

    ids = np.empty(nseg, dtype=np.int64)
    lengths: list[int] = []
    blocks: list[np.ndarray] = []
    base = 0
    for L in np.unique(lens).tolist():
        members = np.flatnonzero(lens == L)
        if L == 0:
            ids[members] = base
            lengths.append(0)
            blocks.append(np.zeros((1, 0), dtype=np.int64))
            base += 1
            continue
        take = offsets[members][:, None] + np.arange(L)[None, :]
        block = svals[take]
        sub, uniq, _ = intern_rows(block)
        ids[members] = base + sub
        lengths.append(L)
        blocks.append(uniq)
        base += uniq.shape[0]
    return ids, SegmentTable(lengths, blocks)


def pair_codes(a: np.ndarray, b: np.ndarray, radix: int) -> np.ndarray:
    """Encode ordered color pairs as single integers, order-preserving."""
    return np.asarray(a, dtype=np.int64) * radix + np.asarray(b, dtype=np.int64)


def new_hasher():
    return hashlib.sha256()
