import numpy as np
import pytest

from controversy_lab.errors import GraphError, ParseError
from controversy_lab.graph import (
    AttributeTable,
    graph_digest,
    induced_subgraph,
    largest_weakly_connected_component,
    load_attribute_table,
    load_edge_list,
    to_edge_list_text,
)
from controversy_lab.rng import stream_rng
from controversy_lab.synthetic import random_directed


class UnionFind:
    """Oracle for component structure, independent of the BFS in graph.py."""

    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def random_edge_lines(rng, n_lines, n_tokens=8):
    tokens = [f"t{i}" for i in range(n_tokens)]
    lines = []
    for _ in range(n_lines):
        a, b = rng.choice(tokens), rng.choice(tokens)
        lines.append(f"{a}\t{b}")
    return lines


def test_two_edge_chain():
    g = load_edge_list("a\tb\nb\tc\n")
    assert g.n == 3
    assert g.m == 2
    assert g.labels == ("a", "b", "c")


def test_self_loop_and_duplicate_dropped():
    g = load_edge_list("a\ta\na\tb\na\tb\n")
    assert g.n == 2
    assert g.m == 1
    assert list(g.edges()) == [(0, 1)]


def test_comments_and_blanks_skipped():
    g = load_edge_list("# header\n\na\tb\n")
    assert (g.n, g.m) == (2, 1)


def test_malformed_line_reports_number():
    with pytest.raises(ParseError, match="line 2"):
        load_edge_list("a\tb\na b c\n")


def test_node_count_matches_token_set_oracle():
    rng = stream_rng(11, "test-graph")
    for trial in range(20):
        lines = random_edge_lines(rng, 10)
        tokens = set()
        for line in lines:
            a, b = line.split("\t")
            tokens.add(a)
            tokens.add(b)
        g = load_edge_list("\n".join(lines))
        assert g.n == len(tokens)


def test_degree_sums_equal_m():
    for seed in range(5):
        g = random_directed(40, 150, seed)
        assert sum(len(a) for a in g.out_adj) == g.m
        assert sum(len(a) for a in g.in_adj) == g.m


def test_adjacency_views_consistent():
    g = random_directed(30, 120, 3)
    for u, v in g.edges():
        assert u in g.in_adj[v]


def test_roundtrip_serialization():
    for seed in range(5):
        g = random_directed(25, 120, seed)
        g2 = load_edge_list(to_edge_list_text(g))
        # labels identify nodes; isolated nodes cannot appear in an edge list
        non_isolated = [g.labels[u] for u in range(g.n) if len(g.und_adj[u])]
        assert sorted(g2.labels) == sorted(non_isolated)
        edges1 = {(g.labels[u], g.labels[v]) for u, v in g.edges()}
        edges2 = {(g2.labels[u], g2.labels[v]) for u, v in g2.edges()}
        assert edges1 == edges2


def test_lwcc_triangle_plus_isolated_edge():
    g = load_edge_list("a\tb\nb\tc\nc\ta\nx\ty\n")
    comp = largest_weakly_connected_component(g)
    assert sorted(comp.labels) == ["a", "b", "c"]
    assert comp.m == 3


def test_lwcc_connected_graph_identity():
    g = load_edge_list("a\tb\nb\tc\n")
    comp = largest_weakly_connected_component(g)
    assert comp.labels == g.labels
    assert list(comp.edges()) == list(g.edges())


def test_lwcc_empty_graph_errors():
    g = load_edge_list("")
    with pytest.raises(GraphError):
        largest_weakly_connected_component(g)


def test_lwcc_matches_union_find_oracle():
    for seed in range(10):
        g = random_directed(50, 60, seed)
        uf = UnionFind(g.n)
        for u, v in g.edges():
            uf.union(u, v)
        classes = {}
        for u in range(g.n):
            classes.setdefault(uf.find(u), []).append(u)
        best = max(classes.values(), key=lambda c: (len(c), -min(c)))
        comp = largest_weakly_connected_component(g)
        assert sorted(comp.labels) == sorted(g.labels[u] for u in best)


def test_induced_full_node_set_is_identity():
    g = random_directed(30, 100, 1)
    sub = induced_subgraph(g, range(g.n))
    assert sub.labels == g.labels
    assert list(sub.edges()) == list(g.edges())


def test_induced_single_node():
    g = load_edge_list("a\tb\n")
    sub = induced_subgraph(g, [0])
    assert sub.n == 1
    assert sub.m == 0


def test_induced_unknown_node_errors():
    g = load_edge_list("a\tb\n")
    with pytest.raises(GraphError):
        induced_subgraph(g, [0, 7])


def test_induced_matches_edge_filter_oracle():
    rng = stream_rng(5, "test-induced")
    g = random_directed(100, 500, 9)
    keep = np.sort(rng.choice(g.n, size=g.n // 2, replace=False))
    keep_set = set(int(x) for x in keep)
    expected = {
        (g.labels[u], g.labels[v])
        for u, v in g.edges()
        if u in keep_set and v in keep_set
    }
    sub = induced_subgraph(g, keep)
    got = {(sub.labels[u], sub.labels[v]) for u, v in sub.edges()}
    assert got == expected


def test_attribute_table_full_cover():
    g = load_edge_list("a\tb\nb\tc\n")
    t = load_attribute_table("node,h1,h2\na,1,2\nb,3,4\nc,5,6\n", g)
    assert t.n == g.n
    assert t.columns == ("h1", "h2")
    assert np.array_equal(t.values, [[1, 2], [3, 4], [5, 6]])


def test_attribute_table_missing_node_gets_zeros():
    g = load_edge_list("a\tb\nb\tc\n")
    t = load_attribute_table("node,h1\na,1\nc,2\n", g)
    assert np.array_equal(t.values[:, 0], [1, 0, 2])


def test_attribute_table_row_order_irrelevant():
    g = load_edge_list("a\tb\nb\tc\n")
    sorted_rows = "node,h1,h2\na,1,2\nb,3,4\nc,5,6\n"
    shuffled = "node,h1,h2\nc,5,6\na,1,2\nb,3,4\n"
    t1 = load_attribute_table(sorted_rows, g)
    t2 = load_attribute_table(shuffled, g)
    assert np.array_equal(t1.values, t2.values)
    assert t1.columns == t2.columns


def test_attribute_table_unknown_label_warns_and_skips(caplog):
    g = load_edge_list("a\tb\n")
    with caplog.at_level("WARNING"):
        t = load_attribute_table("node,h1\na,1\nzz,9\n", g)
    assert "zz" in caplog.text
    assert np.array_equal(t.values[:, 0], [1, 0])


def test_attribute_table_non_numeric_cell_errors():
    g = load_edge_list("a\tb\n")
    with pytest.raises(ParseError, match="line 2"):
        load_attribute_table("node,h1\na,oops\n", g)


def test_reversed_edges():
    g = load_edge_list("a\tb\nb\tc\n")
    r = g.reversed_edges()
    assert {(r.labels[u], r.labels[v]) for u, v in r.edges()} == {("b", "a"), ("c", "b")}


def test_graph_digest_stable_and_sensitive():
    g1 = load_edge_list("a\tb\nb\tc\n")
    g2 = load_edge_list("a\tb\nb\tc\n")
    g3 = load_edge_list("a\tb\nc\tb\n")
    assert graph_digest(g1) == graph_digest(g2)
    assert graph_digest(g1) != graph_digest(g3)


def test_attribute_table_shape_validation():
    with pytest.raises(GraphError):
        AttributeTable(("a", "b"), np.zeros((3, 3)))
