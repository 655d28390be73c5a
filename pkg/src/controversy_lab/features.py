"""Per-node vector spaces: structural embeddings, reduced attributes, or both.

Also owns community centroids, the distance function used everywhere, and the
embedding cache (binary sidecar files keyed by graph digest + parameters +
seed, plus a plain-text export).
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import FeatureError
from .graph import AttributedGraph, AttributeTable, graph_digest
from .node2vec import EmbeddingResult, node2vec_embed  # noqa: F401  (re-export)
from .partition import Partition
from .rng import stream_rng

logger = logging.getLogger(__name__)

MODES = ("node2vec", "attributes", "both")

PCA_TOL = 1e-10
PCA_MAX_ITER = 10_000


@dataclass
class FeatureSpace:
    """Finite per-node vectors of one shared length, tagged with their mode."""

    mode: str
    vectors: np.ndarray  # (n, dim) float64

    def __post_init__(self) -> None:
        self.vectors = np.asarray(self.vectors, dtype=np.float64)
        if self.mode not in MODES:
            raise FeatureError(f"unknown feature mode {self.mode!r}")
        if not np.all(np.isfinite(self.vectors)):
            raise FeatureError("feature vectors must be finite")

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


def pca_reduce(t: AttributeTable, dim: int, seed: int = 0) -> np.ndarray:
    """Project centered attribute rows onto the top-`dim` covariance eigenvectors.

    The eigendecomposition is a seeded orthogonal iteration (tolerance 1e-10),
    so results are deterministic. Component signs are fixed by making each
    component's largest-magnitude loading positive. A zero-variance table
    yields an all-zero projection with a warning.
    """
    n, k = t.values.shape
    if dim > min(n, k):
        raise FeatureError(f"dim={dim} exceeds min(n={n}, columns={k})")
    centered = t.values - t.values.mean(axis=0)
    if not np.any(centered):
        logger.warning("attribute table has zero variance; projection is all zeros")
        return np.zeros((n, dim))
    cov = centered.T @ centered / max(1, n - 1)

    rng = stream_rng(seed, "pca-init")
    Q, _ = np.linalg.qr(rng.standard_normal((k, dim)))
    eigs = np.zeros(dim)
    for _ in range(PCA_MAX_ITER):
        Z = cov @ Q
        Q, R = np.linalg.qr(Z)
        # Covariance is PSD: keep the iteration sign-stable.
        flip = np.diag(R) < 0
        Q[:, flip] = -Q[:, flip]
        new_eigs = np.einsum("kd,kd->d", Q, cov @ Q)
        if np.max(np.abs(new_eigs - eigs)) < PCA_TOL * max(1.0, np.max(np.abs(new_eigs))):
            eigs = new_eigs
            break
        eigs = new_eigs

    order = np.argsort(-eigs, kind="stable")
    Q = Q[:, order]
    for j in range(dim):
        lead = int(np.argmax(np.abs(Q[:, j])))
        if Q[lead, j] < 0:
            Q[:, j] = -Q[:, j]
    return centered @ Q


def assemble_features(
    mode: str,
    struct_vecs: Optional[np.ndarray] = None,
    attr_vecs: Optional[np.ndarray] = None,
) -> FeatureSpace:
    """Combine the available vector blocks per mode (`both` = struct first)."""
    if mode == "node2vec":
        if struct_vecs is None:
            raise FeatureError("mode 'node2vec' needs structural vectors")
        return FeatureSpace(mode, struct_vecs)
    if mode == "attributes":
        if attr_vecs is None:
            raise FeatureError("mode 'attributes' needs attribute vectors")
        return FeatureSpace(mode, attr_vecs)
    if mode == "both":
        if struct_vecs is None or attr_vecs is None:
            raise FeatureError("mode 'both' needs both vector blocks")
        if len(struct_vecs) != len(attr_vecs):
            raise FeatureError("vector blocks disagree on node count")
        return FeatureSpace(mode, np.hstack([struct_vecs, attr_vecs]))
    raise FeatureError(f"unknown feature mode {mode!r}")


def community_centroid(fs: FeatureSpace, p: Partition, side: int) -> np.ndarray:
    """Arithmetic mean vector of the side's members."""
    members = p.members(side)
    if len(members) == 0:
        raise FeatureError("cannot take the centroid of an empty side")
    return fs.vectors[members].mean(axis=0)


def distance(u_vec: np.ndarray, v_vec: np.ndarray, metric: str = "euclidean") -> float:
    """Euclidean (default) or cosine distance (1 - cosine similarity, in [0, 2])."""
    u_vec = np.asarray(u_vec, dtype=np.float64)
    v_vec = np.asarray(v_vec, dtype=np.float64)
    if u_vec.shape != v_vec.shape:
        raise FeatureError(f"vector length mismatch: {u_vec.shape} vs {v_vec.shape}")
    if metric == "euclidean":
        return float(np.linalg.norm(u_vec - v_vec))
    if metric == "cosine":
        nu, nv = np.linalg.norm(u_vec), np.linalg.norm(v_vec)
        if nu == 0.0 or nv == 0.0:
            return 1.0
        sim = float(u_vec @ v_vec / (nu * nv))
        return float(min(2.0, max(0.0, 1.0 - sim)))
    raise FeatureError(f"unknown metric {metric!r}")


# --- embedding cache -------------------------------------------------------

_MAGIC = b"CTRLABF1"
_HEADER = struct.Struct("<8sQQq16s")  # magic, n, dim, seed, mode (padded)


def save_embedding(path, vectors: np.ndarray, mode: str, seed: int) -> None:
    """Binary layout: header (n, dim, mode, seed) + row-major little-endian f64."""
    vectors = np.ascontiguousarray(vectors, dtype="<f8")
    n, dim = vectors.shape
    mode_b = mode.encode("ascii")[:16].ljust(16, b"\x00")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, n, dim, seed, mode_b))
        fh.write(vectors.tobytes())


def load_embedding(path) -> tuple[np.ndarray, str, int]:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise FeatureError(f"truncated embedding file {path}")
        magic, n, dim, seed, mode_b = _HEADER.unpack(head)
        if magic != _MAGIC:
            raise FeatureError(f"{path} is not an embedding cache file")
        data = np.frombuffer(fh.read(n * dim * 8), dtype="<f8")
        if data.size != n * dim:
            raise FeatureError(f"truncated embedding payload in {path}")
    return data.reshape(n, dim).astype(np.float64), mode_b.rstrip(b"\x00").decode("ascii"), seed


def export_embedding_text(path, g: AttributedGraph, vectors: np.ndarray) -> None:
    """`label v1 ... vd` rows, full float precision."""
    with open(path, "w", encoding="utf-8") as fh:
        for u in range(g.n):
            fh.write(g.labels[u] + " " + " ".join(repr(x) for x in vectors[u]) + "\n")


def cache_path(cache_dir, g: AttributedGraph, params: dict, seed: int) -> Path:
    import hashlib

    key = ",".join(f"{k}={params[k]!r}" for k in sorted(params))
    ph = hashlib.sha256(key.encode()).hexdigest()[:12]
    return Path(cache_dir) / f"{graph_digest(g)[:16]}-{ph}-{seed}.emb"


def cached_node2vec(
    g: AttributedGraph,
    seed: int,
    cache_dir=None,
    **params,
) -> np.ndarray:
    """node2vec vectors, loaded from `cache_dir` when an exact-key file exists."""
    if cache_dir is not None:
        path = cache_path(cache_dir, g, params, seed)
        if path.exists():
            vectors, _, _ = load_embedding(path)
            return vectors
    vectors = node2vec_embed(g, seed=seed, **params).vectors
    if cache_dir is not None:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        save_embedding(path, vectors, "node2vec", seed)
    return vectors
