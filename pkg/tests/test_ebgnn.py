import numpy as np
import pytest
from conftest import random_corpus
from reference import ref_ebgnn_forward

from ebwl import graph as gr
from ebwl.ebgnn import (NonFiniteError, edge_features, forward, gnn_distinguish, init_params,
                        pool, relative_difference)
from ebwl.refinement import refine
from ebwl.triangles import enumerate_triangles

G, H = gr.figure2_pair()
C8, C44 = gr.figure3_pair()


def test_init_params_shapes_and_range():
    p = init_params(5, 3, 1)
    assert p.num_layers == 3
    for L in p.layers:
        assert L.A.shape == L.C.shape == L.U.shape == L.V.shape == (5, 5)
        assert L.B.shape == (5, 10)
        assert L.a.shape == L.b.shape == L.c.shape == L.u.shape == L.v.shape == (5,)
        for x in (L.A, L.B, L.a, L.v):
            assert np.all(np.abs(x) <= 1 / np.sqrt(5))
        with pytest.raises(ValueError):
            L.A[0, 0] = 1.0


def test_init_params_deterministic():
    a, b = init_params(4, 2, 7), init_params(4, 2, 7)
    assert a.digest() == b.digest()
    assert a.digest() != init_params(4, 2, 8).digest()


def test_init_params_pinned():
    assert init_params(4, 2, 7).digest() == (
        "1eec08056b7ecfba064db3bd3371fc7fb466499f2ab2f0816633f0690c3f4337")


def test_draw_order():
    # layer-major, matrices A,B,C,U,V then biases a,b,c,u,v, row-major
    p = init_params(3, 2, 11)
    rng = np.random.Generator(np.random.PCG64(11))
    b = 1 / np.sqrt(3)
    for L in p.layers:
        for name, shape in (("A", (3, 3)), ("B", (3, 6)), ("C", (3, 3)), ("U", (3, 3)),
                            ("V", (3, 3)), ("a", 3), ("b", 3), ("c", 3), ("u", 3), ("v", 3)):
            assert np.array_equal(getattr(L, name), rng.uniform(-b, b, size=shape))


def test_scalar_width():
    out = forward(G, None, init_params(1, 2, 0))
    assert out.shape == (1,) and np.isfinite(out).all()


def test_zero_layers_basis_output():
    p = init_params(4, 0, 0)
    assert forward(G, None, p, "sum").tolist() == [48.0, 0.0, 0.0, 0.0]
    assert forward(G, None, p, "mean").tolist() == [1.0, 0.0, 0.0, 0.0]
    assert forward(G, None, p, "nodesum").tolist() == [16.0, 0.0, 0.0, 0.0]


def test_pooling_variants_relation():
    g = gr.random_graph(20, 0.3, 4)
    p = init_params(6, 2, 3)
    s = forward(g, None, p, "sum")
    assert np.allclose(forward(g, None, p, "mean"), s / g.m, rtol=1e-15)
    assert np.allclose(forward(g, None, p, "nodesum"), s * g.n / g.m, rtol=1e-15)
    with pytest.raises(ValueError):
        pool(g, np.zeros((g.num_directed, 6)), "max")


def test_matches_loop_reference():
    for g in random_corpus(6, seed=14, n_range=(4, 14)) + [gr.complete(4)]:
        p = init_params(5, 2, 9)
        out = forward(g, None, p)
        ref, feats = ref_ebgnn_forward(g, p)
        assert np.allclose(out, ref, rtol=1e-12, atol=1e-12)
        fin = edge_features(g, enumerate_triangles(g), p)[-1]
        for e in range(g.num_directed):
            key = (int(g.edge_src[e]), int(g.edge_dst[e]))
            assert np.allclose(fin[e], feats[key], rtol=1e-12, atol=1e-12)


def test_permutation_invariance():
    rng = np.random.default_rng(1)
    for g in random_corpus(10, seed=15, n_range=(5, 30)) + [G]:
        p = init_params(8, 3, int(rng.integers(1000)))
        h = g.relabel(rng.permutation(g.n))
        assert relative_difference(forward(g, None, p), forward(h, None, p)) <= 1e-12


def test_isomorphic_same_params_identical():
    p = init_params(8, 2, 5)
    assert np.array_equal(forward(G, None, p), forward(gr.circulant(16, [1, 2, 4]), None, p))


def test_color_respecting_features(corpus):
    p = init_params(8, 3, 21)
    for g in corpus[:40]:
        ts = enumerate_triangles(g)
        feats = edge_features(g, ts, p)
        trace = refine(g, "eb1wl", ts=ts, max_rounds=3)
        for i in range(min(3, trace.num_rounds) + 1):
            col = trace.colors[i]
            f = feats[i]
            for c in np.unique(col):
                block = f[col == c]
                scale = max(np.abs(block).max(), 1.0)
                assert np.abs(block - block[0]).max() <= 1e-9 * scale


def test_gnn_distinguish_examples():
    assert any(gnn_distinguish(G, H, 16, 3, range(10), tol=1e-6))
    assert not any(gnn_distinguish(C8, C44, 16, 3, range(10), tol=1e-9))
    assert not any(gnn_distinguish(G, G, 16, 3, range(5), tol=1e-9))


def test_non_finite_detected():
    p = init_params(2, 1, 0)
    L = p.layers[0]
    big = type(L)(**{**L.__dict__, "a": np.array([np.inf, 0.0])})
    bad = type(p)(p.dim, (big,), p.seed)
    with pytest.raises(NonFiniteError, match="layer 1"):
        forward(G, None, bad)


def test_relative_difference():
    assert relative_difference(np.zeros(3), np.zeros(3)) == 0.0
    assert relative_difference(np.array([1.0, 2.0]), np.array([1.0, 2.2])) == pytest.approx(0.2 / 2.2)
