"""Numeric forward pass of the edge-based GNN with random weights.

Every directed edge carries a ``d``-dimensional feature, initialised to the
first basis vector.  Layer ``i`` computes, for ``(u, v)``::

    alpha(u)   = sum_{x in N(u)}      relu(A f(u, x) + a)
    beta(u, v) = sum_{y in N(u)&N(v)} relu(B [f(u, y); f(v, y)] + b)
    gamma(v)   = sum_{z in N(v)}      relu(C f(v, z) + c)
    g(u, v)    = f(u, v) + alpha(u) + beta(u, v) + gamma(v)
    f'(u, v)   = g + V relu(U g + u) + v

All arithmetic is float64.  Summation order is fixed by directed edge ids.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .triangles import TriangleStore, enumerate_triangles

POOLINGS = ("sum", "mean", "nodesum")
_MATRICES = ("A", "B", "C", "U", "V")
_BIASES = ("a", "b", "c", "u", "v")


class NonFiniteError(FloatingPointError):
    pass


@dataclass(frozen=True)
class Layer:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    U: np.ndarray
    V: np.ndarray
    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    u: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class EbgnnParams:
    dim: int
    layers: tuple[Layer, ...]
    seed: int

    @property
    def num_layers(self) -> int:
        return len(self.layers)

    def digest(self) -> str:
        h = hashlib.sha256()
        for layer in self.layers:
            for name in _MATRICES + _BIASES:
                h.update(getattr(layer, name).tobytes())
        return h.hexdigest()


def _shape(name: str, d: int) -> tuple[int, ...]:
    if name == "B":
        return (d, 2 * d)
    if name in _MATRICES:
        return (d, d)
    return (d,)


def init_params(d: int, t: int, seed: int) -> EbgnnParams:
    """Uniform ``[-1/sqrt(d), 1/sqrt(d)]`` weights from ``PCG64(seed)``.

    Draw order: layer by layer; within a layer A, B, C, U, V then a, b, c,
    u, v; each array row-major.  ``t = 0`` gives a network with no layers.
    """
    if d < 1 or t < 0:
        raise ValueError("need d >= 1 and t >= 0")
    rng = np.random.Generator(np.random.PCG64(seed))
    bound = 1.0 / np.sqrt(d)
    layers = []
    for _ in range(t):
        arrs = {}
        for name in _MATRICES + _BIASES:
            x = rng.uniform(-bound, bound, size=_shape(name, d))
            x.setflags(write=False)
            arrs[name] = x
        layers.append(Layer(**arrs))
    return EbgnnParams(d, tuple(layers), seed)


def _relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def _node_sum(g: Graph, per_edge: np.ndarray) -> np.ndarray:
    # every node has a neighbor, so all reduceat segments are non-empty
    return np.add.reduceat(per_edge, g.offsets[:-1], axis=0)


def _check(x: np.ndarray, layer: int, what: str) -> None:
    if not np.all(np.isfinite(x)):
        raise NonFiniteError(f"non-finite values in {what} at layer {layer}")


def edge_features(g: Graph, ts: TriangleStore, p: EbgnnParams) -> list[np.ndarray]:
    """Features ``f^(0..t)`` as ``(2m, d)`` arrays indexed by directed edge id."""
    d = p.dim
    f = np.zeros((g.num_directed, d))
    f[:, 0] = 1.0
    out = [f]
    src, dst = g.edge_src, g.edge_dst
    entry_edge = ts.entry_edge
    for i, L in enumerate(p.layers, start=1):
        alpha = _node_sum(g, _relu(f @ L.A.T + L.a))
        gamma = _node_sum(g, _relu(f @ L.C.T + L.c))
        pair = np.concatenate([f[ts.e_uy], f[ts.e_vy]], axis=1)
        beta = np.zeros_like(f)
        np.add.at(beta, entry_edge, _relu(pair @ L.B.T + L.b))
        gv = f + alpha[src] + beta + gamma[dst]
        _check(gv, i, "g")
        f = gv + (_relu(gv @ L.U.T + L.u) @ L.V.T + L.v)
        _check(f, i, "f")
        out.append(f)
    return out


def pool(g: Graph, f: np.ndarray, pooling: str = "sum") -> np.ndarray:
    """Graph readout over the final edge features.

    ``sum`` adds all ``2m`` directed features and halves, standing in for a
    sum over undirected edges without choosing an orientation.
    """
    total = f.sum(axis=0) / 2.0
    if pooling == "sum":
        return total
    if pooling == "mean":
        return total / g.m
    if pooling == "nodesum":
        return total * (g.n / g.m)
    raise ValueError(f"unknown pooling {pooling!r}; expected one of {POOLINGS}")


def forward(g: Graph, ts: TriangleStore | None, p: EbgnnParams,
            pooling: str = "sum") -> np.ndarray:
    if ts is None:
        ts = enumerate_triangles(g)
    return pool(g, edge_features(g, ts, p)[-1], pooling)


def relative_difference(x: np.ndarray, y: np.ndarray) -> float:
    scale = max(np.abs(x).max(initial=0.0), np.abs(y).max(initial=0.0))
    diff = np.abs(x - y).max(initial=0.0)
    if scale == 0.0:
        return 0.0 if diff == 0.0 else float("inf")
    return float(diff / scale)


def gnn_distinguish(g1: Graph, g2: Graph, d: int, t: int, seeds, tol: float = 1e-9,
                    ts1: TriangleStore | None = None,
                    ts2: TriangleStore | None = None) -> list[bool]:
    """Per seed: do sum-pooled outputs differ by more than ``tol`` (relative, max-norm)?"""
    ts1 = ts1 if ts1 is not None else enumerate_triangles(g1)
    ts2 = ts2 if ts2 is not None else enumerate_triangles(g2)
    res = []
    for s in seeds:
        p = init_params(d, t, s)
        o1 = forward(g1, ts1, p, "sum")
        o2 = forward(g2, ts2, p, "sum")
        res.append(relative_difference(o1, o2) > tol)
    return res
