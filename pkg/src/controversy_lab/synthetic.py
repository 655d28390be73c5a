"""Synthetic graph generators: planted two-block graphs, ER graphs, clique pairs.

Edges are sampled on unordered pairs and materialized in both directions
(reciprocal), which keeps out-walks well-defined everywhere; pass
`reciprocal=False` to orient each sampled pair uniformly at random instead.
"""

from __future__ import annotations

import numpy as np

from .graph import AttributedGraph, from_edges
from .rng import stream_rng


def _labels(n: int) -> list[str]:
    return [str(i) for i in range(n)]


def _materialize(pairs: np.ndarray, reciprocal: bool, rng) -> list[tuple[int, int]]:
    edges = []
    for a, b in pairs:
        a, b = int(a), int(b)
        if reciprocal:
            edges.append((a, b))
            edges.append((b, a))
        elif rng.random() < 0.5:
            edges.append((a, b))
        else:
            edges.append((b, a))
    return edges


def two_block_sbm(
    n: int, p_in: float, p_out: float, seed: int, reciprocal: bool = True
) -> tuple[AttributedGraph, np.ndarray]:
    """Two planted blocks (first half vs. second half); returns (graph, block flags)."""
    rng = stream_rng(seed, "synth-sbm")
    iu, ju = np.triu_indices(n, k=1)
    block = (np.arange(n) >= n // 2).astype(np.int8)
    same = block[iu] == block[ju]
    prob = np.where(same, p_in, p_out)
    keep = rng.random(len(iu)) < prob
    pairs = np.stack([iu[keep], ju[keep]], axis=1)
    g = from_edges(_labels(n), _materialize(pairs, reciprocal, rng))
    return g, block


def erdos_renyi(n: int, p: float, seed: int, reciprocal: bool = True) -> AttributedGraph:
    rng = stream_rng(seed, "synth-er")
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(len(iu)) < p
    pairs = np.stack([iu[keep], ju[keep]], axis=1)
    return from_edges(_labels(n), _materialize(pairs, reciprocal, rng))


def clique_pair(
    clique_size: int, bridges: int = 1
) -> tuple[AttributedGraph, np.ndarray]:
    """Two reciprocal cliques joined by `bridges` disjoint bridge edges."""
    if bridges > clique_size:
        raise ValueError("more bridges than clique nodes")
    n = 2 * clique_size
    edges = []
    for base in (0, clique_size):
        for i in range(clique_size):
            for j in range(i + 1, clique_size):
                edges.append((base + i, base + j))
                edges.append((base + j, base + i))
    for b in range(bridges):
        edges.append((b, clique_size + b))
        edges.append((clique_size + b, b))
    side = (np.arange(n) >= clique_size).astype(np.int8)
    return from_edges(_labels(n), edges), side


def complete_graph(n: int) -> AttributedGraph:
    edges = [(i, j) for i in range(n) for j in range(n) if i != j]
    return from_edges(_labels(n), edges)


def random_directed(n: int, m: int, seed: int) -> AttributedGraph:
    """Simple directed graph with up to m edges drawn uniformly (duplicates dropped)."""
    rng = stream_rng(seed, "synth-directed")
    src = rng.integers(0, n, size=m)
    dst = rng.integers(0, n, size=m)
    return from_edges(_labels(n), zip(src.tolist(), dst.tolist()))
