"""End-to-end wiring: features -> topology -> energies -> walks -> report.

One RunSettings bundle carries every knob; a single master seed feeds the
named RNG streams, so each stage is reproducible alone or inside a larger
run.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

from .brw import ControversyReport, score, simulate
from .energy import assign_energies
from .errors import FeatureError
from .features import FeatureSpace, assemble_features, cached_node2vec, pca_reduce
from .graph import AttributedGraph
from .partition import Partition, X, Y, detect_two_communities
from .topology import LevelMap, assign_levels, boundary_nodes


@dataclass
class RunSettings:
    """All pipeline knobs; defaults follow the library's standard configuration."""

    mode: str = "node2vec"  # feature mode: node2vec | attributes | both
    dims: int = 20
    n2v_walks: int = 10
    n2v_length: int = 80
    n2v_window: int = 10
    n2v_p: float = 1.0
    n2v_q: float = 1.0
    n2v_epochs: int = 5
    n2v_negatives: int = 5
    energy: str = "simple"  # simple | full
    multiplier: float = 1.0
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    walks: int = 50  # BRW repetitions per node
    seed: int = 0
    threads: int = 1
    cache_dir: Optional[str] = None

    def config_echo(self) -> dict:
        d = asdict(self)
        d.pop("cache_dir")
        d.pop("threads")
        return d


@dataclass
class PipelineResult:
    report: ControversyReport
    features: FeatureSpace
    levels: LevelMap
    boundary_count: int
    mean_initial: float
    mean_loss: float
    partition: Partition = field(repr=False)
    records: list = field(default_factory=list, repr=False)


def split_dims(settings: RunSettings) -> tuple[int, int]:
    """(structural, attribute) dims for mode `both`: struct first, equal halves."""
    half = settings.dims // 2
    return half, settings.dims - half


def build_feature_space(g: AttributedGraph, settings: RunSettings) -> FeatureSpace:
    """Feature vectors per the configured mode; node2vec trains (or loads) here."""
    mode = settings.mode
    need_struct = mode in ("node2vec", "both")
    need_attr = mode in ("attributes", "both")
    struct_vecs = attr_vecs = None
    if need_attr and g.attributes is None:
        raise FeatureError(f"feature mode {mode!r} needs an attribute table")
    if mode == "both":
        d_struct, d_attr = split_dims(settings)
    else:
        d_struct = d_attr = settings.dims
    if need_struct:
        struct_vecs = cached_node2vec(
            g,
            seed=settings.seed,
            cache_dir=settings.cache_dir,
            dim=d_struct,
            walks_per_node=settings.n2v_walks,
            walk_length=settings.n2v_length,
            window=settings.n2v_window,
            p=settings.n2v_p,
            q=settings.n2v_q,
            epochs=settings.n2v_epochs,
            negatives=settings.n2v_negatives,
        )
    if need_attr:
        attr_vecs = pca_reduce(g.attributes, d_attr, seed=settings.seed)
    return assemble_features(mode, struct_vecs, attr_vecs)


def run_pipeline(
    g: AttributedGraph,
    settings: RunSettings,
    partition: Optional[Partition] = None,
) -> PipelineResult:
    """Full BRW run on one graph; detects the partition when none is supplied."""
    if partition is None:
        partition = detect_two_communities(g, settings.seed)
    fs = build_feature_space(g, settings)
    lm = assign_levels(g, partition)
    ea = assign_energies(
        g,
        fs,
        partition,
        lm,
        mode=settings.energy,
        multiplier=settings.multiplier,
        alpha=settings.alpha,
        beta=settings.beta,
        gamma=settings.gamma,
    )
    records = simulate(g, partition, lm, ea, settings.walks, settings.seed, settings.threads)
    config = settings.config_echo()
    config["isolated_community_x"] = lm.isolated(X)
    config["isolated_community_y"] = lm.isolated(Y)
    report = score(records, lm, partition, config)
    bx, by = boundary_nodes(g, partition)
    return PipelineResult(
        report=report,
        features=fs,
        levels=lm,
        boundary_count=len(bx) + len(by),
        mean_initial=ea.mean_initial,
        mean_loss=ea.mean_loss,
        partition=partition,
        records=records,
    )
