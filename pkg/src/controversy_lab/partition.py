"""Two-way community split: built-in spectral bisection plus external-file ingestion.

Side X always contains dense id 0 (splits are canonicalized), so a partition
is reproducible as a labeled object and not just as a cut.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParseError, PartitionError
from .graph import AttributedGraph, _iter_lines, is_weakly_connected
from .rng import stream_rng

X, Y = 0, 1
SIDE_NAMES = ("X", "Y")

POWER_TOL = 1e-8
POWER_MAX_ITER = 10_000


@dataclass
class Partition:
    """Per-node side flags (0 = X, 1 = Y); both sides always non-empty."""

    side: np.ndarray  # int8, shape (n,)

    def __post_init__(self) -> None:
        self.side = np.asarray(self.side, dtype=np.int8)
        counts = np.bincount(self.side, minlength=2)
        if self.side.min(initial=0) < 0 or self.side.max(initial=0) > 1:
            raise PartitionError("side flags must be 0 or 1")
        if counts[0] == 0 or counts[1] == 0:
            raise PartitionError("one side of the partition is empty")

    @property
    def n(self) -> int:
        return len(self.side)

    def members(self, side: int) -> np.ndarray:
        return np.flatnonzero(self.side == side)

    def canonicalized(self) -> "Partition":
        """Relabel so that side X contains the node with the smallest dense id."""
        if self.side[0] == X:
            return self
        return Partition(np.asarray(1 - self.side, dtype=np.int8))


def _undirected_edge_arrays(g: AttributedGraph) -> tuple[np.ndarray, np.ndarray]:
    # Both orientations of every undirected edge, for bincount-style matvecs.
    srcs, dsts = [], []
    for u in range(g.n):
        a = g.und_adj[u]
        if len(a):
            srcs.append(np.full(len(a), u, dtype=np.int64))
            dsts.append(a)
    if not srcs:
        e = np.empty(0, dtype=np.int64)
        return e, e.copy()
    return np.concatenate(srcs), np.concatenate(dsts)


def fiedler_vector(g: AttributedGraph, seed: int) -> np.ndarray:
    """Fiedler vector of the symmetric normalized Laplacian of the undirected view.

    Power iteration on 2I - L_sym with the known null eigenvector deflated;
    deterministic for a fixed seed. Tolerance and iteration cap are module
    constants (1e-8 / 10,000).
    """
    n = g.n
    deg = np.array([len(g.und_adj[u]) for u in range(n)], dtype=np.float64)
    if np.any(deg == 0):
        raise PartitionError("graph has isolated nodes; take the largest component first")
    dinv_sqrt = 1.0 / np.sqrt(deg)
    src, dst = _undirected_edge_arrays(g)

    def matvec(x: np.ndarray) -> np.ndarray:
        # (2I - L_sym) x = x + D^{-1/2} A D^{-1/2} x
        w = x * dinv_sqrt
        ax = np.bincount(src, weights=w[dst], minlength=n)
        return x + dinv_sqrt * ax

    v1 = np.sqrt(deg)
    v1 /= np.linalg.norm(v1)

    rng = stream_rng(seed, "partition")
    x = rng.standard_normal(n)
    x -= v1 @ x * v1
    x /= np.linalg.norm(x)
    for _ in range(POWER_MAX_ITER):
        y = matvec(x)
        y -= v1 @ y * v1
        norm = np.linalg.norm(y)
        if norm == 0.0:
            # x is (numerically) in the null space of 2I - L_sym; restart.
            y = rng.standard_normal(n)
            y -= v1 @ y * v1
            norm = np.linalg.norm(y)
        y /= norm
        if y @ x < 0:
            y = -y
        if np.linalg.norm(y - x) < POWER_TOL:
            x = y
            break
        x = y
    return x


def detect_two_communities(g: AttributedGraph, seed: int) -> Partition:
    """Deterministic two-way split: sign of the Fiedler vector, X = node 0's side."""
    if g.n < 2:
        raise PartitionError("need at least 2 nodes to bisect")
    if not is_weakly_connected(g):
        raise PartitionError(
            "graph is not weakly connected; apply largest_weakly_connected_component first"
        )
    vec = fiedler_vector(g, seed)
    side = (vec < 0).astype(np.int8)
    if side.min() == side.max():
        # Defensive: a converged Fiedler vector is orthogonal to an all-positive
        # vector, so both signs occur; if rounding collapsed one side, peel off
        # the most extreme node.
        side[int(np.argmax(np.abs(vec)))] ^= 1
    return Partition(side).canonicalized()


def load_partition(text, g: AttributedGraph) -> Partition:
    """Parse `label<TAB>{0|1}` lines covering every node of g."""
    ids = g.label_to_id()
    side = np.full(g.n, -1, dtype=np.int8)
    for lineno, raw in enumerate(_iter_lines(text), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        tokens = line.split("\t")
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected `label<TAB>{{0|1}}`")
        node = ids.get(tokens[0])
        if node is None:
            raise PartitionError(f"line {lineno}: unknown node label {tokens[0]!r}")
        if tokens[1] not in ("0", "1"):
            raise ParseError(f"line {lineno}: side must be 0 or 1, got {tokens[1]!r}")
        if side[node] != -1:
            raise ParseError(f"line {lineno}: duplicate assignment for {tokens[0]!r}")
        side[node] = int(tokens[1])
    missing = np.flatnonzero(side == -1)
    if len(missing):
        raise PartitionError(
            f"{len(missing)} nodes uncovered by partition file (first: {g.labels[int(missing[0])]!r})"
        )
    return Partition(side).canonicalized()


def partition_to_text(p: Partition, g: AttributedGraph) -> str:
    lines = [f"{g.labels[u]}\t{int(p.side[u])}" for u in range(g.n)]
    return "\n".join(lines) + "\n"
