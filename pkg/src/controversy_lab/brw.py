"""Energy-bounded biased random walks and the penetration measures built on them.

A walk starts at a node with that node's initial energy, follows out-edges
uniformly (jumping to a same-side same-level node when stuck at a sink), and
pays the destination node's energy loss on every move. How deep it gets into
the opposite community, normalized by that community's depth, is its
penetration; RWPR averages penetration over all walks (confined walks count
as 0), BCRPR over boundary-crossing walks only.

RNG protocol (frozen; tests replay it): every move that has at least one
candidate consumes exactly one uniform from the walk's stream via
`rng.random()`; index = int(u * len(candidates)). Out-neighbor picks use the
sorted out-adjacency; dead-end jumps use the sorted same-(side, level) group
minus the current node. A dead end with no jump candidates terminates without
drawing.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .energy import EnergyAssignment
from .graph import AttributedGraph
from .partition import Partition
from .rng import stream_rng
from .topology import LevelMap

STEP_CAP = 10_000

ENERGY_EXHAUSTED = "energy_exhausted"
DEAD_END = "dead_end"
STEP_CAP_HIT = "step_cap"


@dataclass
class WalkRecord:
    """Outcome of one walk; `path` is debug-only (kept when requested)."""

    start: int
    crossed: bool
    deepest_opposite_level: int  # -1 when the walk never crossed
    steps: int
    terminated_by: str
    path: Optional[tuple[int, ...]] = None


@dataclass
class ControversyReport:
    """Aggregate penetration measures plus the configuration that produced them."""

    rwpr: float
    bcrpr: Optional[float]
    average: Optional[float]
    total_walks: int
    crossed_walks: int
    config: dict

    def to_dict(self) -> dict:
        d = {
            "rwpr": self.rwpr,
            "total_walks": self.total_walks,
            "crossed_walks": self.crossed_walks,
            "config": self.config,
        }
        if self.bcrpr is not None:
            d["bcrpr"] = self.bcrpr
            d["average"] = self.average
        return d


def level_groups(p: Partition, lm: LevelMap) -> dict[tuple[int, int], np.ndarray]:
    """Sorted node arrays per (side, level); dead-end jump pools."""
    groups: dict[tuple[int, int], list[int]] = {}
    for u in range(p.n):
        groups.setdefault((int(p.side[u]), int(lm.level[u])), []).append(u)
    return {k: np.array(v, dtype=np.int64) for k, v in groups.items()}


def run_walk(
    g: AttributedGraph,
    p: Partition,
    lm: LevelMap,
    ea: EnergyAssignment,
    start: int,
    rng: np.random.Generator,
    groups: Optional[dict] = None,
    keep_path: bool = False,
) -> WalkRecord:
    """One energy-bounded walk from `start` following the frozen RNG protocol."""
    if groups is None:
        groups = level_groups(p, lm)
    start_side = int(p.side[start])
    energy = float(ea.initial[start])
    current = start
    deepest = -1
    steps = 0
    path = [start] if keep_path else None
    terminated = None
    while energy > 0.0 and steps < STEP_CAP:
        outs = g.out_adj[current]
        if len(outs):
            nxt = int(outs[int(rng.random() * len(outs))])
        else:
            pool = groups[(int(p.side[current]), int(lm.level[current]))]
            pool = pool[pool != current]
            if len(pool) == 0:
                terminated = DEAD_END
                break
            nxt = int(pool[int(rng.random() * len(pool))])
        energy -= float(ea.loss[nxt])
        steps += 1
        if p.side[nxt] != start_side:
            lvl = int(lm.level[nxt])
            if lvl > deepest:
                deepest = lvl
        current = nxt
        if path is not None:
            path.append(nxt)
    if terminated is None:
        terminated = ENERGY_EXHAUSTED if energy <= 0.0 else STEP_CAP_HIT
    return WalkRecord(
        start=start,
        crossed=deepest >= 0,
        deepest_opposite_level=deepest,
        steps=steps,
        terminated_by=terminated,
        path=tuple(path) if path is not None else None,
    )


def _simulate_range(
    g: AttributedGraph,
    p: Partition,
    lm: LevelMap,
    ea: EnergyAssignment,
    w: int,
    seed: int,
    lo: int,
    hi: int,
) -> list[WalkRecord]:
    groups = level_groups(p, lm)
    records = []
    for node in range(lo, hi):
        for rep in range(w):
            rng = stream_rng(seed, "walks", node, rep)
            records.append(run_walk(g, p, lm, ea, node, rng, groups))
    return records


def simulate(
    g: AttributedGraph,
    p: Partition,
    lm: LevelMap,
    ea: EnergyAssignment,
    w: int,
    seed: int,
    threads: int = 1,
) -> list[WalkRecord]:
    """n*w walk records in (node, repetition) order.

    Each (node, repetition) pair owns a derived RNG stream, so the result is
    identical for any `threads` value and any scheduling order.
    """
    if w < 1:
        raise ValueError("walks per node must be >= 1")
    if threads <= 1 or g.n < 2 * threads:
        return _simulate_range(g, p, lm, ea, w, seed, 0, g.n)
    bounds = np.linspace(0, g.n, threads + 1).astype(int)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(_simulate_range, g, p, lm, ea, w, seed, int(lo), int(hi))
            for lo, hi in zip(bounds[:-1], bounds[1:])
            if lo < hi
        ]
        chunks = [f.result() for f in futures]
    return [rec for chunk in chunks for rec in chunk]


def score(
    records: list[WalkRecord],
    lm: LevelMap,
    p: Partition,
    config: Optional[dict] = None,
) -> ControversyReport:
    """Aggregate walk records into RWPR / BCRPR / their average.

    Penetration of a crossing walk is (1 + deepest opposite level) /
    (1 + opposite community's max level); confined walks score 0.
    """
    if not records:
        raise ValueError("no walk records to score")
    pens = np.empty(len(records))
    crossed = 0
    for i, rec in enumerate(records):
        if rec.crossed:
            opposite = 1 - int(p.side[rec.start])
            pens[i] = (1 + rec.deepest_opposite_level) / (1 + lm.max_level(opposite))
            crossed += 1
        else:
            pens[i] = 0.0
    rwpr = float(pens.mean())
    if crossed:
        bcrpr = float(pens.sum() / crossed)
        average = (rwpr + bcrpr) / 2.0
    else:
        bcrpr = None
        average = None
    return ControversyReport(
        rwpr=rwpr,
        bcrpr=bcrpr,
        average=average,
        total_walks=len(records),
        crossed_walks=crossed,
        config=dict(config or {}),
    )
