import numpy as np
import pytest
from conftest import bipartite_corpus, hard_pairs, random_corpus
from reference import ref_distinguish, ref_refine, same_partition

from ebwl import graph as gr
from ebwl.refinement import (TESTS, DenseLimitError, distinguish, fingerprint,
                             node_partition_from_edges, partition_refines, refine, run_1wl,
                             run_2wl, run_eb1wl, run_nc1wl)
from ebwl.triangles import enumerate_triangles

G, H = gr.figure2_pair()
C8, C44 = gr.figure3_pair()


def test_regular_graph_one_class():
    for g in (G, H, gr.cycle(9), gr.complete(5)):
        t = run_1wl(g)
        assert t.class_counts()[-1] == 1
        assert t.stabilized and t.stable_round == 1


def test_star_and_path():
    t = run_1wl(gr.star(3))
    assert t.class_counts() == [1, 2, 2]
    assert t.stable_round == 1
    t = run_1wl(gr.path(3))
    assert t.class_counts()[-1] == 2
    assert t.final_colors[0] == t.final_colors[2] != t.final_colors[1]


def test_max_rounds_zero_is_constant():
    t = run_1wl(gr.path(5), max_rounds=0)
    assert t.num_rounds == 0
    assert t.final_colors.tolist() == [0] * 5
    assert not t.stabilized and t.stable_round is None


def test_round_cap_recorded():
    t = run_1wl(gr.path(9), max_rounds=2)
    assert t.num_rounds == 2 and not t.stabilized
    full = run_1wl(gr.path(9))
    assert full.stabilized and full.stable_round == 4


def test_nc1wl_figure2_single_class():
    for g in (G, H):
        t = run_nc1wl(g, enumerate_triangles(g))
        assert t.class_counts()[-1] == 1
    assert not distinguish(G, H, "nc1wl").distinguished


def test_nc1wl_k3():
    assert run_nc1wl(gr.complete(3)).class_counts()[-1] == 1


def test_nc_equals_1wl_when_triangle_free():
    for g in bipartite_corpus(30, seed=3):
        a, b = run_1wl(g), run_nc1wl(g)
        assert a.num_rounds == b.num_rounds
        for x, y in zip(a.colors, b.colors):
            assert same_partition(x, y)


def test_eb1wl_round_one_classes():
    t = run_eb1wl(G, enumerate_triangles(G))
    assert t.histograms[1].tolist() == [32, 32, 32]
    ts = enumerate_triangles(G)
    # the three classes are exactly the triangle-count classes
    assert same_partition(t.colors[1], ts.directed_counts())
    t = run_eb1wl(H)
    assert t.histograms[1].tolist() == [96]


def test_eb1wl_single_edge():
    t = run_eb1wl(gr.path(2))
    assert t.object_count == 2
    assert t.class_counts()[-1] == 1
    assert t.stable_round == 1


def test_2wl_dense_limit():
    with pytest.raises(DenseLimitError):
        run_2wl(gr.cycle(20), dense_limit=10)
    with pytest.raises(DenseLimitError):
        distinguish(gr.cycle(8), gr.cycle(8), "2wl", dense_limit=10)


@pytest.mark.parametrize("test", TESTS)
def test_identity_never_distinguished(test):
    for g in (gr.complete(3), G, C8, gr.random_graph(15, 0.3, 2)):
        assert not distinguish(g, g, test).distinguished


def test_fixture_pair_verdicts():
    assert distinguish(G, H, "eb1wl").separating_round == 1
    assert not distinguish(G, H, "1wl").distinguished
    assert distinguish(G, H, "2wl").distinguished
    for test in ("1wl", "nc1wl", "eb1wl"):
        assert not distinguish(C8, C44, test).distinguished
    assert distinguish(C8, C44, "2wl").distinguished


def test_eb1wl_node_count_rule():
    v = distinguish(gr.complete(3), gr.complete(4), "eb1wl")
    assert v.distinguished and v.separating_round == 0


def _objects_partition_equal(trace, ref_rounds):
    assert trace.num_rounds <= len(ref_rounds) - 1
    for r, c in enumerate(trace.colors):
        flat = c.reshape(-1).tolist()
        assert same_partition(flat, ref_rounds[r]), r


@pytest.mark.parametrize("test", TESTS)
def test_partitions_match_reference(test):
    gs = random_corpus(15, seed=21, n_range=(5, 14)) + [G, C8, gr.star(4)]
    for g in gs:
        t = refine(g, test)
        _objects_partition_equal(t, ref_refine(g, test, t.num_rounds))


@pytest.mark.parametrize("test", TESTS)
def test_verdicts_match_reference(test):
    small = [(a, b) for a, b in hard_pairs() if a.n <= 14][:25]
    rand = random_corpus(20, seed=8, n_range=(5, 12))
    pairs = small + list(zip(rand[::2], rand[1::2]))
    for a, b in pairs:
        assert distinguish(a, b, test).distinguished == ref_distinguish(a, b, test)


@pytest.mark.parametrize("test", TESTS)
def test_monotone_and_fixed_point(test):
    for g in random_corpus(20, seed=4, n_range=(5, 25)):
        t = refine(g, test)
        counts = t.class_counts()
        assert counts == sorted(counts)
        for a, b in zip(t.colors, t.colors[1:]):
            assert partition_refines(b, a)
        assert t.stabilized
        assert t.stable_round <= t.object_count
        assert all(x < y for x, y in zip(counts[:t.stable_round], counts[1:t.stable_round]))
        # one further round leaves the partition alone
        more = refine(g, test, max_rounds=t.num_rounds + 3)
        assert same_partition(more.final_colors.reshape(-1), t.final_colors.reshape(-1))


@pytest.mark.parametrize("test", TESTS)
def test_fingerprint_deterministic_and_invariant(test):
    rng = np.random.default_rng(17)
    for g in random_corpus(8, seed=9, n_range=(6, 18)) + [G]:
        a, b = refine(g, test), refine(g, test)
        assert fingerprint(a) == fingerprint(b)
        assert len(bytes.fromhex(fingerprint(a))) >= 16
        h = g.relabel(rng.permutation(g.n))
        assert fingerprint(refine(h, test)) == fingerprint(a)


def test_fingerprint_separates_figure2_under_eb():
    assert fingerprint(run_eb1wl(G)) != fingerprint(run_eb1wl(H))
    assert fingerprint(run_nc1wl(G)) == fingerprint(run_nc1wl(H))


@pytest.mark.parametrize("test", ("1wl", "nc1wl", "eb1wl"))
def test_fingerprint_agrees_with_shared_palette(test):
    for a, b in hard_pairs()[::4]:
        same = fingerprint(refine(a, test)) == fingerprint(refine(b, test))
        assert same == (not distinguish(a, b, test).distinguished)


def test_reverse_edge_consistency_and_node_recovery(corpus):
    for g in corpus + [G, H]:
        ts = enumerate_triangles(g)
        eb = run_eb1wl(g, ts).final_colors
        rev = g.reverse
        pairs = np.unique(np.stack([eb, eb[rev]], axis=1), axis=0)
        assert len(np.unique(pairs[:, 0])) == len(pairs)
        nodes = node_partition_from_edges(g, eb)
        assert partition_refines(nodes, run_nc1wl(g, ts).final_colors)


def test_triangle_free_eb_matches_1wl():
    gs = bipartite_corpus(60, seed=12)
    assert all(enumerate_triangles(g).count == 0 for g in gs)
    pairs = list(zip(gs[::2], gs[1::2]))
    # degree-matched triangle-free pairs
    pairs += [(gr.circulant(12, [1, 3]), gr.circulant(12, [3, 5]))]
    pairs += [(gr.cycle(12), gr.disjoint_union(gr.cycle(6), gr.cycle(6))[0])]
    for a, b in pairs:
        assert distinguish(a, b, "eb1wl").distinguished == distinguish(a, b, "1wl").distinguished
    for a, b in [(C8, C44), (gr.cycle(6), gr.path(6))]:
        assert distinguish(a, b, "eb1wl").distinguished == distinguish(a, b, "1wl").distinguished


def test_trace_json_shape():
    j = run_1wl(gr.star(3)).to_json()
    assert j["test"] == "1wl" and j["stable_round"] == 1
    # ids rank signatures; leaves carry the shorter neighbor multiset
    assert j["rounds"][1]["histogram"] == {"0": 3, "1": 1}
