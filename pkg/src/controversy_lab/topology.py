"""Boundary sets, layer depths, and per-node conductance for a partitioned graph.

All structure here is computed on the undirected view: a node is boundary if
any edge (either direction) joins it to the other side, and a node's level is
its hop distance, inside its own community, to the nearest boundary node of
that community.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .graph import AttributedGraph
from .partition import Partition, X, Y


@dataclass
class LevelMap:
    """Per-node depth from the community boundary.

    Boundary nodes sit at level 0. Nodes in a community pocket that cannot
    reach its boundary carry that community's maximum reachable level + 1.
    A community with no boundary at all has every node at level 0 and its
    `isolated` flag set (surfaced in reports, not fatal).
    """

    level: np.ndarray  # int64, shape (n,)
    max_level_by_side: tuple[int, int]
    isolated_by_side: tuple[bool, bool]

    def max_level(self, side: int) -> int:
        return self.max_level_by_side[side]

    def isolated(self, side: int) -> bool:
        return self.isolated_by_side[side]


def boundary_nodes(g: AttributedGraph, p: Partition) -> tuple[np.ndarray, np.ndarray]:
    """Per-side sorted arrays of nodes with >=1 undirected edge to the other side."""
    flags = np.zeros(g.n, dtype=bool)
    for u in range(g.n):
        nbrs = g.und_adj[u]
        if len(nbrs) and np.any(p.side[nbrs] != p.side[u]):
            flags[u] = True
    return (
        np.flatnonzero(flags & (p.side == X)),
        np.flatnonzero(flags & (p.side == Y)),
    )


def assign_levels(g: AttributedGraph, p: Partition) -> LevelMap:
    """Multi-source BFS per community from its boundary nodes (undirected view)."""
    level = np.full(g.n, -1, dtype=np.int64)
    bx, by = boundary_nodes(g, p)
    max_by_side = [0, 0]
    isolated = [False, False]
    for side, sources in ((X, bx), (Y, by)):
        members = p.members(side)
        if len(sources) == 0:
            level[members] = 0
            isolated[side] = True
            continue
        q = deque(int(s) for s in sources)
        level[sources] = 0
        while q:
            u = q.popleft()
            lu = level[u]
            for v in g.und_adj[u]:
                v = int(v)
                if p.side[v] == side and level[v] == -1:
                    level[v] = lu + 1
                    q.append(v)
        reached = members[level[members] >= 0]
        max_reach = int(level[reached].max()) if len(reached) else 0
        unreachable = members[level[members] == -1]
        if len(unreachable):
            level[unreachable] = max_reach + 1
        max_by_side[side] = int(level[members].max())
    return LevelMap(level, (max_by_side[X], max_by_side[Y]), (isolated[X], isolated[Y]))


def node_conductance(g: AttributedGraph, p: Partition, u: int) -> float:
    """Cross-community vs. intra-community undirected edge ratio for node u.

    A boundary node with no intra edges would divide by zero, so the
    denominator is floored at 1; internal nodes score exactly 0.
    """
    nbrs = g.und_adj[u]
    if len(nbrs) == 0:
        return 0.0
    cross = int(np.count_nonzero(p.side[nbrs] != p.side[u]))
    intra = len(nbrs) - cross
    return cross / max(1, intra)


def all_conductances(g: AttributedGraph, p: Partition) -> np.ndarray:
    return np.array([node_conductance(g, p, u) for u in range(g.n)], dtype=np.float64)


def max_level(lm: LevelMap, side: int) -> int:
    """Maximum assigned level on a side (0 for an all-boundary community)."""
    return lm.max_level(side)
