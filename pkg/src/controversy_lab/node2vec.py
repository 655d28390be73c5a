"""Structural node embeddings: second-order biased walks + skip-gram training.

Walks run over the undirected view with the usual return (p) / in-out (q)
bias. Each start node draws from its own derived RNG stream, so the corpus is
identical no matter how walk generation is scheduled. Training is skip-gram
with negative sampling, minibatched SGD (each batch reads the pre-batch
parameters), which makes the whole embedding bit-reproducible for a fixed
seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import AttributedGraph
from .rng import stream_rng

LR_INITIAL = 0.025
LR_FLOOR = 1e-4
BATCH_PAIRS = 8192
NEGATIVE_POWER = 0.75


@dataclass
class EmbeddingResult:
    vectors: np.ndarray  # (n, dim) float64
    isolated: tuple[int, ...]  # nodes with no undirected neighbors (random init, no updates)


def _walk_from(
    start: int,
    length: int,
    nbrs: list[list[int]],
    nbr_sets: list[set[int]],
    p: float,
    q: float,
    uniforms: np.ndarray,
) -> list[int]:
    walk = [start]
    cur = start
    prev = -1
    for step in range(length - 1):
        cand = nbrs[cur]
        deg = len(cand)
        if deg == 0:
            break
        u = uniforms[step]
        if prev < 0 or (p == 1.0 and q == 1.0):
            nxt = cand[int(u * deg) % deg]
        else:
            prev_set = nbr_sets[prev]
            weights = np.empty(deg)
            for i, x in enumerate(cand):
                if x == prev:
                    weights[i] = 1.0 / p
                elif x in prev_set:
                    weights[i] = 1.0
                else:
                    weights[i] = 1.0 / q
            cum = np.cumsum(weights)
            nxt = cand[int(np.searchsorted(cum, u * cum[-1], side="right")) % deg]
        walk.append(nxt)
        prev, cur = cur, nxt
    return walk


def generate_walks(
    g: AttributedGraph,
    walks_per_node: int,
    walk_length: int,
    p: float,
    q: float,
    seed: int,
) -> list[list[int]]:
    """Biased walk corpus, `walks_per_node` starts from every node, in node order."""
    if p <= 0 or q <= 0:
        raise ValueError("p and q must be positive")
    nbrs = [a.tolist() for a in g.und_adj]
    nbr_sets = [set(a) for a in nbrs]
    walks: list[list[int]] = []
    for node in range(g.n):
        rng = stream_rng(seed, "n2v-walks", node)
        for _ in range(walks_per_node):
            uniforms = rng.random(max(walk_length - 1, 1))
            walks.append(_walk_from(node, walk_length, nbrs, nbr_sets, p, q, uniforms))
    return walks


def _skipgram_pairs(walks: list[list[int]], window: int) -> tuple[np.ndarray, np.ndarray]:
    """All (center, context) pairs within a fixed window, both directions."""
    tok = np.concatenate([np.asarray(w, dtype=np.int32) for w in walks])
    wid_parts = [np.full(len(w), i, dtype=np.int32) for i, w in enumerate(walks)]
    wid = np.concatenate(wid_parts)
    centers, contexts = [], []
    for d in range(1, window + 1):
        if d >= len(tok):
            break
        same = wid[:-d] == wid[d:]
        a, b = tok[:-d][same], tok[d:][same]
        centers.append(a)
        contexts.append(b)
        centers.append(b)
        contexts.append(a)
    if not centers:
        e = np.empty(0, dtype=np.int32)
        return e, e.copy()
    return np.concatenate(centers), np.concatenate(contexts)


def _sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -30.0, 30.0)))


def node2vec_embed(
    g: AttributedGraph,
    dim: int = 20,
    walks_per_node: int = 10,
    walk_length: int = 80,
    window: int = 10,
    p: float = 1.0,
    q: float = 1.0,
    epochs: int = 5,
    negatives: int = 5,
    seed: int = 0,
) -> EmbeddingResult:
    """Train node vectors on the biased-walk corpus; bit-identical per seed.

    Isolated nodes (no undirected neighbors) keep their random initialization
    and are reported in the result.
    """
    if g.n == 0:
        raise ValueError("cannot embed an empty graph")
    if dim < 2:
        raise ValueError("embedding dimension must be >= 2")
    walks = generate_walks(g, walks_per_node, walk_length, p, q, seed)
    centers, contexts = _skipgram_pairs(walks, window)

    init_rng = stream_rng(seed, "n2v-init")
    U = (init_rng.random((g.n, dim)) - 0.5) / dim
    V = np.zeros((g.n, dim))

    counts = np.zeros(g.n, dtype=np.float64)
    np.add.at(counts, np.concatenate([np.asarray(w, dtype=np.int64) for w in walks]), 1.0)
    noise = counts**NEGATIVE_POWER
    total_noise = noise.sum()
    if total_noise == 0:
        noise_cum = np.linspace(1.0 / g.n, 1.0, g.n)
    else:
        noise_cum = np.cumsum(noise / total_noise)
    noise_cum[-1] = 1.0

    train_rng = stream_rng(seed, "n2v-train")
    n_pairs = len(centers)
    total_updates = max(1, n_pairs * epochs)
    done = 0
    for _ in range(epochs):
        order = train_rng.permutation(n_pairs)
        for lo in range(0, n_pairs, BATCH_PAIRS):
            idx = order[lo : lo + BATCH_PAIRS]
            c = centers[idx].astype(np.int64)
            o = contexts[idx].astype(np.int64)
            b = len(c)
            negs = np.searchsorted(noise_cum, train_rng.random((b, negatives)), side="left")

            lr = max(LR_FLOOR, LR_INITIAL * (1.0 - done / total_updates))
            u = U[c]
            v_pos = V[o]
            v_neg = V[negs]

            g_pos = _sigmoid(np.einsum("bd,bd->b", u, v_pos)) - 1.0
            g_neg = _sigmoid(np.einsum("bkd,bd->bk", v_neg, u))

            d_u = g_pos[:, None] * v_pos + np.einsum("bk,bkd->bd", g_neg, v_neg)
            np.add.at(U, c, -lr * d_u)
            np.add.at(V, o, -lr * (g_pos[:, None] * u))
            np.add.at(
                V,
                negs.ravel(),
                (-lr * (g_neg[:, :, None] * u[:, None, :])).reshape(b * negatives, dim),
            )
            done += b

    isolated = tuple(int(i) for i in range(g.n) if len(g.und_adj[i]) == 0)
    return EmbeddingResult(U, isolated)
