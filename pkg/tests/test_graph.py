import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commkit.errors import ArgumentError
from commkit.graph import (Graph, assortativity, betweenness_all,
                           bridges_and_cutpoints, centralization,
                           connected_components, density, distance_matrix,
                           edge_betweenness, graph_summary, load_edge_list,
                           local_clustering, mean_distance, save_edge_list,
                           shortest_distances, transitivity)
from commkit.rng import RngStream

from .conftest import random_connected_graph
from .oracles import bridges_by_deletion, pair_betweenness


def test_from_edges_rejects_self_loops_and_duplicates():
    with pytest.raises(ArgumentError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(ArgumentError):
        Graph.from_edges(3, [(0, 1), (1, 0)])


def test_degrees_and_neighbors(g6):
    assert g6.degrees().tolist() == [2, 2, 3, 3, 2, 2]
    assert sorted(g6.neighbors(2).tolist()) == [0, 1, 3]
    assert g6.has_edge(2, 3) and g6.has_edge(3, 2)
    assert not g6.has_edge(0, 5)


def test_edge_list_roundtrip(tmp_path, g6):
    path = tmp_path / "g.edges"
    save_edge_list(g6, path)
    h = load_edge_list(path)
    assert h.n == g6.n and h.m == g6.m
    assert np.array_equal(h.edges(), g6.edges())


def test_edge_list_loader_reports_line_numbers(tmp_path):
    path = tmp_path / "bad.edges"
    path.write_text("# comment\n0 1\n2 2\n")
    with pytest.raises(ArgumentError, match="3"):
        load_edge_list(path)
    path.write_text("0 1\n1 0\n")
    with pytest.raises(ArgumentError, match="2"):
        load_edge_list(path)


def test_local_clustering_and_transitivity(g6):
    assert local_clustering(g6, 0) == 1.0
    assert local_clustering(g6, 2) == pytest.approx(1 / 3)
    # mean of local coefficients: (1 + 1 + 1/3 + 1/3 + 1 + 1) / 6
    assert transitivity(g6) == pytest.approx((4 + 2 / 3) / 6)
    tri = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    assert transitivity(tri) == 1.0
    ring = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert transitivity(ring) == 0.0


def test_shortest_distances(g6):
    d = shortest_distances(g6, 0)
    assert d.tolist() == [0, 1, 1, 2, 3, 3]
    dm = distance_matrix(g6)
    assert dm[0, 4] == 3 and dm[4, 0] == 3
    assert mean_distance(g6) == pytest.approx(dm[np.triu_indices(6, 1)].mean())


def test_edge_betweenness_matches_path_enumeration(g6, rng):
    got = edge_betweenness(g6)
    want = pair_betweenness(g6)
    assert set(got) == set(want)
    for e in want:
        assert got[e] == pytest.approx(want[e])
    assert got[(2, 3)] == pytest.approx(9.0)  # bridge carries all 3x3 pairs
    gen = rng.generator()
    for _ in range(10):
        g = random_connected_graph(7, gen)
        got = edge_betweenness(g)
        want = pair_betweenness(g)
        for e in want:
            assert got[e] == pytest.approx(want[e])


def test_node_betweenness_star():
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    b = betweenness_all(star)
    assert b[0] == pytest.approx(6.0)  # C(4,2) pairs routed via hub
    assert b[1:].tolist() == [0.0] * 4


def test_centralization_star_is_one():
    star = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    assert centralization(star, "degree") == pytest.approx(1.0)
    ring = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert centralization(ring, "degree") == pytest.approx(0.0)


def test_assortativity_cases():
    # star: perfectly disassortative
    star = Graph.from_edges(5, [(0, i) for i in range(1, 5)])
    assert assortativity(star) == pytest.approx(-1.0)
    # regular ring: zero variance -> undefined
    ring = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert assortativity(ring) is None


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_assortativity_invariant_under_relabeling(seed):
    gen = np.random.default_rng(seed)
    g = random_connected_graph(8, gen, p=0.4)
    perm = gen.permutation(8)
    relabeled = Graph.from_edges(8, [(perm[u], perm[v]) for u, v in g.edges()])
    a, b = assortativity(g), assortativity(relabeled)
    if a is None:
        assert b is None
    else:
        assert a == pytest.approx(b)


def test_connected_components(g6):
    assert connected_components(g6).community_count == 1
    two = Graph.from_edges(5, [(0, 1), (2, 3)])
    p = connected_components(two)
    assert p.community_count == 3  # two pairs plus isolated node 4
    assert p.membership[0] == p.membership[1]
    assert p.membership[2] == p.membership[3]


def test_bridges_match_deletion_oracle(g6, rng):
    bridges, _ = bridges_and_cutpoints(g6)
    assert set(map(tuple, bridges)) == {(2, 3)}
    gen = rng.generator()
    for _ in range(15):
        g = random_connected_graph(8, gen, p=0.3)
        bridges, _ = bridges_and_cutpoints(g)
        assert set(map(tuple, bridges)) == bridges_by_deletion(g)


def test_graph_summary_fields(g6):
    s = graph_summary(g6)
    assert 0.0 <= s.density <= 1.0
    assert s.density == pytest.approx(density(g6))
    assert s.component_count == 1
    assert s.transitivity == pytest.approx(transitivity(g6))
    assert s.mean_distance >= 1.0
    for kind, val in s.centralization.items():
        assert 0.0 <= val <= 1.0
