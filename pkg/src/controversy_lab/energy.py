"""Walk budgets: per-node initial energy and per-node energy loss.

Initial energy rewards nodes close to either community's centroid (they are
"heard" more); loss charges a walk for entering nodes far from the opposite
community's centroid. The full loss variant adds the node's layer depth and
its conductance deficit. A distance floor EPS keeps every value finite and
strictly positive even at exact centroid coincidence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import FeatureSpace, community_centroid, distance
from .graph import AttributedGraph
from .partition import Partition, X, Y
from .topology import LevelMap, all_conductances

EPS = 1e-9

ENERGY_MODES = ("simple", "full")


@dataclass
class EnergyAssignment:
    """Per-node walk budget (`initial`) and per-node toll (`loss`), both > 0."""

    initial: np.ndarray
    loss: np.ndarray
    mode: str
    multiplier: float
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        if not (np.all(np.isfinite(self.initial)) and np.all(self.initial > 0)):
            raise ValueError("initial energies must be finite and > 0")
        if not (np.all(np.isfinite(self.loss)) and np.all(self.loss > 0)):
            raise ValueError("energy losses must be finite and > 0")

    @property
    def mean_initial(self) -> float:
        return float(self.initial.mean())

    @property
    def mean_loss(self) -> float:
        return float(self.loss.mean())


def _dists(u: int, fs: FeatureSpace, p: Partition, centroids) -> tuple[float, float]:
    own = centroids[int(p.side[u])]
    other = centroids[1 - int(p.side[u])]
    vec = fs.vectors[u]
    return distance(vec, own), distance(vec, other)


def initial_energy(
    u: int, fs: FeatureSpace, p: Partition, centroids, multiplier: float = 1.0
) -> float:
    """multiplier * (1/dist-to-own-centroid + 1/dist-to-opposite-centroid), EPS-floored."""
    d_in, d_out = _dists(u, fs, p, centroids)
    return multiplier * (1.0 / max(EPS, d_in) + 1.0 / max(EPS, d_out))


def simple_loss(u: int, fs: FeatureSpace, p: Partition, centroids) -> float:
    """Distance to the opposite community's centroid, EPS-floored."""
    _, d_out = _dists(u, fs, p, centroids)
    return max(EPS, d_out)


def full_loss(
    u: int,
    fs: FeatureSpace,
    p: Partition,
    centroids,
    lm: LevelMap,
    conductances: np.ndarray,
    alpha: float = 1.0,
    beta: float = 1.0,
    gamma: float = 1.0,
) -> float:
    """Depth + distance + conductance-deficit loss.

    alpha * level/max(1, own-side max level)
    + beta * dist-to-opposite-centroid
    + gamma * (max_cond - cond_u)/max_cond   (the whole term is 1 if max_cond = 0)
    """
    _, d_out = _dists(u, fs, p, centroids)
    max_close = lm.max_level(int(p.side[u]))
    closeness = lm.level[u] / max(1, max_close)
    max_cond = float(conductances.max())
    if max_cond > 0:
        deficit = (max_cond - conductances[u]) / max_cond
    else:
        deficit = 1.0
    return max(EPS, alpha * closeness + beta * d_out + gamma * deficit)


def assign_energies(
    g: AttributedGraph,
    fs: FeatureSpace,
    p: Partition,
    lm: LevelMap,
    mode: str = "simple",
    multiplier: float = 1.0,
    alpha: float = 1.0,
    beta: float = 1.0,
    gamma: float = 1.0,
) -> EnergyAssignment:
    """Element-wise initial/loss vectors over all nodes for the chosen loss mode."""
    if mode not in ENERGY_MODES:
        raise ValueError(f"unknown energy mode {mode!r}")
    if multiplier <= 0:
        raise ValueError("multiplier must be positive")
    if fs.n != g.n:
        raise ValueError("feature space does not cover the graph")
    centroids = (community_centroid(fs, p, X), community_centroid(fs, p, Y))
    initial = np.array(
        [initial_energy(u, fs, p, centroids, multiplier) for u in range(g.n)]
    )
    if mode == "simple":
        loss = np.array([simple_loss(u, fs, p, centroids) for u in range(g.n)])
    else:
        conds = all_conductances(g, p)
        loss = np.array(
            [full_loss(u, fs, p, centroids, lm, conds, alpha, beta, gamma) for u in range(g.n)]
        )
    return EnergyAssignment(initial, loss, mode, multiplier, alpha, beta, gamma)
