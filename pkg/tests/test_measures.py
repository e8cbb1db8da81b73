import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from commkit.errors import ArgumentError
from commkit.evaluate import (adjusted_rand_index, confusion, jaccard_index,
                              modularity, mutual_information_stats,
                              pair_counts, purity, quality_functions,
                              rand_index, surprise, van_dongen,
                              variation_of_information)
from commkit.graph import Graph
from commkit.partition import Partition
from commkit.rng import RngStream

from .oracles import modularity_loop, pair_loop_counts

memberships = st.integers(2, 30).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(0, 5), min_size=n, max_size=n),
        st.lists(st.integers(0, 5), min_size=n, max_size=n)))


def test_confusion_counts_intersections():
    p1 = Partition(np.array([0, 0, 1, 1, 1]))
    p2 = Partition(np.array([0, 1, 1, 1, 1]))
    cm = confusion(p1, p2)
    assert cm.tolist() == [[1, 1], [0, 3]]


def test_pair_counts_match_pair_loop_random():
    gen = RngStream(5).generator()
    for _ in range(100):
        p1 = Partition(gen.integers(4, size=12))
        p2 = Partition(gen.integers(4, size=12))
        pc = pair_counts(p1, p2)
        assert (pc.n11, pc.n00, pc.n10, pc.n01) == pair_loop_counts(p1, p2)


@settings(max_examples=60)
@given(memberships)
def test_pair_counting_identities(ms):
    p1, p2 = Partition(np.array(ms[0])), Partition(np.array(ms[1]))
    pc = pair_counts(p1, p2)
    n = p1.n
    assert pc.n11 + pc.n00 + pc.n10 + pc.n01 == n * (n - 1) // 2
    assert 0.0 <= rand_index(p1, p2) <= 1.0
    assert 0.0 <= jaccard_index(p1, p2) <= 1.0
    assert rand_index(p1, p1) == 1.0
    assert jaccard_index(p1, p1) == 1.0


@settings(max_examples=60)
@given(memberships)
def test_symmetric_measures(ms):
    p1, p2 = Partition(np.array(ms[0])), Partition(np.array(ms[1]))
    assert rand_index(p1, p2) == rand_index(p2, p1)
    assert jaccard_index(p1, p2) == jaccard_index(p2, p1)
    assert van_dongen(p1, p2) == van_dongen(p2, p1)
    s12 = mutual_information_stats(p1, p2)
    s21 = mutual_information_stats(p2, p1)
    assert s12.mi == pytest.approx(s21.mi)
    assert s12.vi == pytest.approx(s21.vi)


def test_ari_identical_is_one():
    p = Partition(np.array([0, 1, 0, 1, 2, 2]))
    assert adjusted_rand_index(p, p) == pytest.approx(1.0)


def test_ari_mean_near_zero_for_independent_partitions():
    gen = RngStream(9).generator()
    vals = [adjusted_rand_index(Partition(gen.integers(5, size=100)),
                                Partition(gen.integers(5, size=100)))
            for _ in range(100)]
    assert abs(np.mean(vals)) < 0.05


def test_ari_degenerate_cases():
    one = Partition(np.zeros(4, dtype=int))
    singles = Partition(np.arange(4))
    assert adjusted_rand_index(one, one) == 1.0
    assert adjusted_rand_index(singles, singles) == 1.0
    # not degenerate: index and expected are both 0, maximum is positive
    assert adjusted_rand_index(one, singles) == 0.0


def test_purity_and_van_dongen_hand_values():
    found = Partition(np.array([0, 0, 0, 1, 1, 1]))
    truth = Partition(np.array([0, 0, 1, 1, 1, 1]))
    assert purity(found, truth) == pytest.approx(5 / 6)
    # 2n - sum(max rows) - sum(max cols) = 12 - 5 - 5
    assert van_dongen(found, truth) == 2


def test_rand_and_ari_spec_fixture():
    a = Partition(np.array([0, 0, 1]))
    b = Partition(np.array([0, 1, 1]))
    assert confusion(a, b).tolist() == [[1, 1], [0, 1]]
    assert rand_index(a, b) == pytest.approx(1 / 3)
    assert adjusted_rand_index(a, b) == pytest.approx(-0.5)


def test_mi_vi_nmi_fixture():
    """A = {{a,b},{c}} vs B = {{a},{b,c}}: hand-computed entropy sums."""
    a = Partition(np.array([0, 0, 1]))
    b = Partition(np.array([0, 1, 1]))
    s = mutual_information_stats(a, b)
    assert s.mi == pytest.approx(0.2516, abs=1e-4)
    assert s.vi == pytest.approx(1.3333, abs=1e-4)
    assert s.nmi == pytest.approx(0.2740, abs=1e-4)


def test_vi_metric_axioms_random_triples():
    gen = RngStream(11).generator()
    for _ in range(100):
        ps = [Partition(gen.integers(5, size=30)) for _ in range(3)]
        d01 = variation_of_information(ps[0], ps[1])
        d12 = variation_of_information(ps[1], ps[2])
        d02 = variation_of_information(ps[0], ps[2])
        assert d01 >= 0.0
        assert variation_of_information(ps[0], ps[0]) == pytest.approx(0.0)
        assert d02 <= d01 + d12 + 1e-9
        assert d01 == pytest.approx(variation_of_information(ps[1], ps[0]))


def test_nmi_identical_and_independent():
    p = Partition(np.array([0, 0, 1, 1, 2, 2]))
    assert mutual_information_stats(p, p).nmi == pytest.approx(1.0)
    one = Partition(np.zeros(6, dtype=int))
    assert mutual_information_stats(one, one).nmi == 1.0  # degenerate 0/0


def test_modularity_matches_pair_loop(g6, g6_ref, rng):
    from .conftest import random_connected_graph, random_partition
    assert modularity(g6, g6_ref) == pytest.approx(modularity_loop(g6, g6_ref))
    gen = rng.generator()
    for _ in range(20):
        g = random_connected_graph(7, gen)
        p = random_partition(7, 3, gen)
        assert modularity(g, p) == pytest.approx(modularity_loop(g, p))


def test_modularity_g6_exact(g6, g6_ref):
    assert modularity(g6, g6_ref) == pytest.approx(5 / 14, abs=1e-15)


def test_modularity_one_block_is_zero(g6):
    assert modularity(g6, Partition(np.zeros(6, dtype=int))) == pytest.approx(0.0)


def test_quality_functions_on_g6(g6, g6_ref):
    rep = quality_functions(g6, g6_ref)
    assert rep.internal_density.tolist() == [1.0, 1.0]
    assert rep.conductance[0] == pytest.approx(1 / 7)
    assert rep.aggregate_cut_ratio == pytest.approx(1 / 9)


def test_surprise_one_block_zero(g6):
    assert surprise(g6, Partition(np.zeros(6, dtype=int))) == 0.0


def test_surprise_planted_beats_random(g6, g6_ref, rng):
    gen = rng.generator()
    rnd = g6_ref.relabelled(gen.permutation(6))
    assert surprise(g6, g6_ref) > 0.0


def test_mismatched_sizes_rejected():
    with pytest.raises(ArgumentError):
        rand_index(Partition(np.zeros(3, dtype=int)),
                   Partition(np.zeros(4, dtype=int)))
