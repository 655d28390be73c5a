"""Controversy quantification for two-sided topic networks.

Builds an attributed view of a directed interaction graph (structural
embeddings and/or content attributes), assigns every node a walk budget and
a toll from its position relative to the two communities, and measures how
deeply energy-bounded random walks penetrate the opposite side. Ships the
absorbing-walk and boundary-polarity baselines plus noise-sweep experiments.
"""

from .baselines import RwcConfig, guerra_polarity, rwc
from .brw import ControversyReport, WalkRecord, run_walk, score, simulate
from .energy import EnergyAssignment, assign_energies, full_loss, initial_energy, simple_loss
from .errors import (
    ControversyLabError,
    FeatureError,
    GraphError,
    ParseError,
    PartitionError,
    ReportError,
)
from .experiments import (
    NoiseConfig,
    inject_attribute_noise,
    inject_structural_noise,
    noise_sweep,
)
from .features import (
    FeatureSpace,
    assemble_features,
    community_centroid,
    distance,
    node2vec_embed,
    pca_reduce,
)
from .graph import (
    AttributedGraph,
    AttributeTable,
    graph_digest,
    induced_subgraph,
    largest_weakly_connected_component,
    load_attribute_table,
    load_edge_list,
    to_edge_list_text,
)
from .partition import Partition, detect_two_communities, load_partition
from .pipeline import PipelineResult, RunSettings, build_feature_space, run_pipeline
from .report import load_report, write_report
from .topology import LevelMap, assign_levels, boundary_nodes, max_level, node_conductance

__version__ = "0.1.0"

__all__ = [
    "AttributedGraph",
    "AttributeTable",
    "ControversyLabError",
    "ControversyReport",
    "EnergyAssignment",
    "FeatureError",
    "FeatureSpace",
    "GraphError",
    "LevelMap",
    "NoiseConfig",
    "ParseError",
    "Partition",
    "PartitionError",
    "PipelineResult",
    "ReportError",
    "RunSettings",
    "RwcConfig",
    "WalkRecord",
    "assemble_features",
    "assign_energies",
    "assign_levels",
    "boundary_nodes",
    "build_feature_space",
    "community_centroid",
    "detect_two_communities",
    "distance",
    "full_loss",
    "graph_digest",
    "guerra_polarity",
    "induced_subgraph",
    "initial_energy",
    "inject_attribute_noise",
    "inject_structural_noise",
    "largest_weakly_connected_component",
    "load_attribute_table",
    "load_edge_list",
    "load_partition",
    "load_report",
    "max_level",
    "node2vec_embed",
    "node_conductance",
    "noise_sweep",
    "pca_reduce",
    "run_pipeline",
    "run_walk",
    "rwc",
    "score",
    "simple_loss",
    "simulate",
    "to_edge_list_text",
    "write_report",
]
