import numpy as np
import pytest

from controversy_lab.errors import ParseError, PartitionError
from controversy_lab.graph import from_edges, load_edge_list
from controversy_lab.partition import (
    Partition,
    detect_two_communities,
    load_partition,
    partition_to_text,
)
from controversy_lab.synthetic import clique_pair, two_block_sbm


def test_two_cliques_split_on_the_bridge():
    g, side = clique_pair(10, bridges=1)
    p = detect_two_communities(g, seed=3)
    agree = max((p.side == side).mean(), (p.side != side).mean())
    assert agree == 1.0


def test_sbm_recovery_beats_95_percent():
    # oracle: the generator's planted block labels
    g, block = two_block_sbm(200, p_in=0.3, p_out=0.01, seed=4)
    p = detect_two_communities(g, seed=4)
    agree = max((p.side == block).mean(), (p.side != block).mean())
    assert agree >= 0.95


def test_same_seed_same_partition():
    g, _ = two_block_sbm(100, 0.2, 0.02, seed=5)
    p1 = detect_two_communities(g, seed=9)
    p2 = detect_two_communities(g, seed=9)
    assert np.array_equal(p1.side, p2.side)


def test_both_sides_nonempty_everywhere():
    for seed in range(5):
        g, _ = two_block_sbm(60, 0.25, 0.05, seed=seed)
        p = detect_two_communities(g, seed=seed)
        assert 1 <= p.members(0).size <= g.n - 1
        assert p.side[0] == 0  # canonical: node 0 on side X


def test_disconnected_graph_rejected():
    g = load_edge_list("a\tb\nx\ty\n")
    with pytest.raises(PartitionError, match="largest_weakly_connected_component"):
        detect_two_communities(g, seed=1)


def test_relabeling_preserves_cut_edges():
    g, _ = two_block_sbm(80, 0.3, 0.02, seed=6)
    rng = np.random.default_rng(6)
    perm = rng.permutation(g.n)
    inv = np.argsort(perm)
    labels = tuple(g.labels[int(inv[i])] for i in range(g.n))
    edges = [(int(perm[u]), int(perm[v])) for u, v in g.edges()]
    g_perm = from_edges(labels, edges)

    p = detect_two_communities(g, seed=2)
    p_perm = detect_two_communities(g_perm, seed=2)
    cut = {
        tuple(sorted((u, v))) for u, v in g.edges() if p.side[u] != p.side[v]
    }
    cut_perm_mapped = {
        tuple(sorted((int(inv[u]), int(inv[v]))))
        for u, v in g_perm.edges()
        if p_perm.side[u] != p_perm.side[v]
    }
    assert cut == cut_perm_mapped


def test_load_partition_valid():
    g = load_edge_list("a\tb\nb\tc\n")
    p = load_partition("a\t0\nb\t0\nc\t1\n", g)
    assert list(p.side) == [0, 0, 1]


def test_load_partition_relabels_side_of_node_zero():
    g = load_edge_list("a\tb\nb\tc\n")
    p = load_partition("a\t1\nb\t1\nc\t0\n", g)
    # node 'a' (dense id 0) must land on side X
    assert list(p.side) == [0, 0, 1]


def test_load_partition_single_side_errors():
    g = load_edge_list("a\tb\n")
    with pytest.raises(PartitionError, match="empty"):
        load_partition("a\t0\nb\t0\n", g)


def test_load_partition_unknown_label_errors():
    g = load_edge_list("a\tb\n")
    with pytest.raises(PartitionError, match="zz"):
        load_partition("a\t0\nb\t1\nzz\t0\n", g)


def test_load_partition_uncovered_node_errors():
    g = load_edge_list("a\tb\nb\tc\n")
    with pytest.raises(PartitionError, match="uncovered"):
        load_partition("a\t0\nb\t1\n", g)


def test_load_partition_bad_side_token():
    g = load_edge_list("a\tb\n")
    with pytest.raises(ParseError):
        load_partition("a\t0\nb\t2\n", g)


def test_partition_roundtrip_through_text():
    g, _ = two_block_sbm(40, 0.3, 0.03, seed=7)
    p = detect_two_communities(g, seed=7)
    p2 = load_partition(partition_to_text(p, g), g)
    assert np.array_equal(p.side, p2.side)


def test_partition_validates_sides():
    with pytest.raises(PartitionError):
        Partition(np.zeros(4, dtype=np.int8))
