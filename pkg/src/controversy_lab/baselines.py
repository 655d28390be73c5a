"""Reference controversy measures: absorbing-walk RWC and boundary polarity.

RWC launches plain random walks from every non-influential node and measures
how often they are absorbed by the influential users (top in-degree) of each
side: RWC = P_XX*P_YY - P_YX*P_XY, in [-1, 1], higher = more controversial.
Boundary polarity looks only at boundary nodes and compares their internal
vs. cross-community degree, in [-0.5, 0.5].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ControversyLabError
from .graph import AttributedGraph
from .partition import Partition, X, Y
from .rng import stream_rng
from .topology import boundary_nodes

RWC_STEP_CAP = 10_000


@dataclass
class RwcConfig:
    k: int = 10
    repeats: int = 100
    seed: int = 0

    def __post_init__(self) -> None:
        if self.k < 1 or self.repeats < 1:
            raise ValueError("k and repeats must be >= 1")


def top_in_degree(g: AttributedGraph, p: Partition, side: int, k: int) -> np.ndarray:
    """The side's k highest in-degree nodes; ties break toward smaller dense id."""
    members = p.members(side)
    if len(members) < k:
        raise ControversyLabError(f"side {side} has {len(members)} nodes, fewer than k={k}")
    in_deg = np.array([len(g.in_adj[int(u)]) for u in members])
    order = np.lexsort((members, -in_deg))  # primary: degree desc, secondary: id asc
    return np.sort(members[order[:k]])


def rwc(g: AttributedGraph, p: Partition, cfg: RwcConfig) -> float:
    """Monte-Carlo absorbing-walk controversy score.

    From each non-absorbing node, `repeats` walks follow out-edges (one uniform
    per round per live walk, from the start node's derived stream); a dead end
    restarts the walk at its start node. Walks not absorbed within the step cap
    are discarded from the conditional absorption frequencies.
    """
    absorb = np.full(g.n, -1, dtype=np.int8)
    absorb[top_in_degree(g, p, X, cfg.k)] = X
    absorb[top_in_degree(g, p, Y, cfg.k)] = Y

    indptr = np.zeros(g.n + 1, dtype=np.int64)
    for u in range(g.n):
        indptr[u + 1] = indptr[u] + len(g.out_adj[u])
    indices = (
        np.concatenate([a for a in g.out_adj if len(a)])
        if indptr[-1]
        else np.empty(0, dtype=np.int64)
    )
    out_deg = np.diff(indptr)

    # absorbed[start_side][absorbed_side]
    counts = np.zeros((2, 2), dtype=np.int64)
    for start in range(g.n):
        if absorb[start] >= 0:
            continue
        rng = stream_rng(cfg.seed, "rwc", start)
        cur = np.full(cfg.repeats, start, dtype=np.int64)
        active = np.arange(cfg.repeats)
        start_side = int(p.side[start])
        for _ in range(RWC_STEP_CAP):
            if len(active) == 0:
                break
            u = rng.random(len(active))
            c = cur[active]
            d = out_deg[c]
            nxt = np.full(len(active), start, dtype=np.int64)  # dead ends restart
            has = d > 0
            pick = indptr[c[has]] + (u[has] * d[has]).astype(np.int64)
            nxt[has] = indices[pick]
            cur[active] = nxt
            landed = absorb[nxt]
            hit = landed >= 0
            if np.any(hit):
                for side_hit in (X, Y):
                    counts[start_side, side_hit] += int(np.sum(landed == side_hit))
                active = active[~hit]

    for side in (X, Y):
        if counts[side].sum() == 0:
            raise ControversyLabError(
                f"no walk starting on side {side} reached an influencer within the step cap"
            )
    p_xx = counts[X, X] / counts[X].sum()
    p_xy = counts[X, Y] / counts[X].sum()
    p_yy = counts[Y, Y] / counts[Y].sum()
    p_yx = counts[Y, X] / counts[Y].sum()
    return float(p_xx * p_yy - p_yx * p_xy)


def guerra_polarity(g: AttributedGraph, p: Partition) -> float:
    """Mean over boundary nodes of d_i/(d_b+d_i) - 0.5.

    d_b counts a boundary node's undirected cross-community edges; d_i its
    undirected edges to *non-boundary* same-community nodes (edges between two
    boundary mates count as neither).
    """
    bx, by = boundary_nodes(g, p)
    boundary = np.concatenate([bx, by])
    if len(boundary) == 0:
        raise ControversyLabError("no cross edges: boundary set is empty")
    is_boundary = np.zeros(g.n, dtype=bool)
    is_boundary[boundary] = True
    total = 0.0
    for v in boundary:
        v = int(v)
        nbrs = g.und_adj[v]
        cross = p.side[nbrs] != p.side[v]
        d_b = int(np.count_nonzero(cross))
        d_i = int(np.count_nonzero(~cross & ~is_boundary[nbrs]))
        total += d_i / (d_b + d_i) - 0.5
    return total / len(boundary)
