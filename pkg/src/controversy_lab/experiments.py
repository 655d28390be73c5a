"""Noise injection and sweep orchestration for robustness studies.

Structural noise adds one random out-edge per selected node; attribute noise
replaces a selected node's attribute row with another node's pre-noise row.
`noise_sweep` re-runs the full pipeline at each noise level (re-training the
embedding on the noised graph) and tabulates the penetration measures plus
the energy and boundary statistics that explain them.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import AttributedGraph, AttributeTable, from_edges
from .partition import Partition, detect_two_communities
from .pipeline import RunSettings, run_pipeline
from .report import report_document, write_report  # noqa: F401  (write_report re-export)
from .rng import float_key, stream_seed, stream_rng

logger = logging.getLogger(__name__)

REDRAW_LIMIT = 10

DEFAULT_LEVELS = tuple(round(0.1 * i, 1) for i in range(11))

AXES = ("structural", "attribute", "both")


@dataclass
class NoiseConfig:
    structural_p: float = 0.0
    attribute_p: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("structural_p", "attribute_p"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name}={v} outside [0, 1]")


def inject_structural_noise(
    g: AttributedGraph, prob: float, rng: np.random.Generator
) -> AttributedGraph:
    """With probability `prob` per node, add one out-edge to a random other node.

    Original edges are untouched. If the drawn target edge already exists the
    draw is retried (up to 10 times), then that node is skipped. Draw order:
    nodes ascending, one bernoulli then up to 10 target draws each.
    """
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"probability {prob} outside [0, 1]")
    if g.n < 2:
        raise ValueError("need at least 2 nodes to add noise edges")
    edges = set()
    for u in range(g.n):
        for v in g.out_adj[u]:
            edges.add((u, int(v)))
    for u in range(g.n):
        if rng.random() >= prob:
            continue
        for _ in range(REDRAW_LIMIT):
            v = int(rng.integers(0, g.n - 1))
            if v >= u:
                v += 1
            if (u, v) not in edges:
                edges.add((u, v))
                break
    return from_edges(g.labels, edges, g.attributes)


def inject_attribute_noise(
    t: AttributeTable, prob: float, rng: np.random.Generator
) -> AttributeTable:
    """With probability `prob` per node, copy another node's pre-noise row over it."""
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"probability {prob} outside [0, 1]")
    n = t.n
    if n < 2:
        raise ValueError("need at least 2 rows to swap attributes")
    values = t.values.copy()
    for i in range(n):
        if rng.random() >= prob:
            continue
        j = int(rng.integers(0, n - 1))
        if j >= i:
            j += 1
        values[i] = t.values[j]  # donor row read from the pre-noise table
    return AttributeTable(t.columns, values)


def _level_seed(master: int, axis: str, level: float) -> int:
    ss = stream_seed(master, f"sweep-{axis}", float_key(level))
    return int(ss.generate_state(1, np.uint64)[0] & np.uint64(0x7FFF_FFFF_FFFF_FFFF))


def sweep_level_row(
    g: AttributedGraph,
    settings: RunSettings,
    axis: str,
    level: float,
    base_partition: Optional[Partition],
) -> dict:
    """One sweep row; reproducible alone given the same master seed and level."""
    seed = _level_seed(settings.seed, axis, level)
    noised = g
    if axis in ("structural", "both") and level > 0:
        noised = inject_structural_noise(g, level, stream_rng(seed, "noise", 0))
    if axis in ("attribute", "both") and level > 0:
        if g.attributes is None:
            raise ValueError("attribute noise requested but the graph has no attribute table")
        table = inject_attribute_noise(g.attributes, level, stream_rng(seed, "noise", 1))
        noised = dataclasses.replace(noised, attributes=table)
    partition = base_partition
    if partition is None:
        partition = detect_two_communities(noised, seed)
    result = run_pipeline(noised, dataclasses.replace(settings, seed=seed), partition)
    row = {
        "level": level,
        "rwpr": result.report.rwpr,
        "mean_initial": result.mean_initial,
        "mean_loss": result.mean_loss,
        "boundary_nodes": result.boundary_count,
        "total_walks": result.report.total_walks,
        "crossed_walks": result.report.crossed_walks,
    }
    if result.report.bcrpr is not None:
        row["bcrpr"] = result.report.bcrpr
        row["average"] = result.report.average
    return row


def noise_sweep(
    g: AttributedGraph,
    settings: RunSettings,
    levels=DEFAULT_LEVELS,
    axis: str = "structural",
    repartition: bool = False,
    base_partition: Optional[Partition] = None,
) -> dict:
    """Sweep document over ascending noise levels.

    The partition is detected once on the clean graph (or taken from
    `base_partition`) and reused across levels unless `repartition` is set;
    re-partitioning would confound how noise degrades a fixed polarized
    structure.
    """
    if axis not in AXES:
        raise ValueError(f"axis must be one of {AXES}")
    levels = [float(v) for v in levels]
    if levels != sorted(levels):
        raise ValueError("noise levels must be sorted ascending")
    if repartition:
        base_partition = None
    elif base_partition is None:
        base_partition = detect_two_communities(g, settings.seed)
    rows = [sweep_level_row(g, settings, axis, level, base_partition) for level in levels]
    config = settings.config_echo()
    config.update({"axis": axis, "levels": levels, "repartition": repartition})
    return report_document("sweep", config, rows=rows)
