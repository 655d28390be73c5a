"""Directed attributed graph: construction, file ingestion, structural preprocessing.

Nodes carry dense integer ids 0..n-1 plus their original string labels.
Graphs are simple (no self-loops, no duplicate directed edges) and immutable
after construction; every mutator-looking operation returns a new graph.
"""

from __future__ import annotations

import hashlib
import logging
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import GraphError, ParseError

logger = logging.getLogger(__name__)


@dataclass
class AttributeTable:
    """Per-node attribute vectors, column-named, aligned to dense node ids.

    One row per graph node; a node absent from the source file gets an all-zero
    row. Values are stored as float64 for downstream PCA / distance math.
    """

    columns: tuple[str, ...]
    values: np.ndarray  # shape (n, len(columns)), float64

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim != 2 or self.values.shape[1] != len(self.columns):
            raise GraphError(
                f"attribute table shape {self.values.shape} does not match "
                f"{len(self.columns)} columns"
            )

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def restricted(self, nodes: np.ndarray) -> "AttributeTable":
        return AttributeTable(self.columns, self.values[nodes].copy())


@dataclass
class AttributedGraph:
    """Immutable simple directed graph with optional node attributes.

    `out_adj[u]` / `in_adj[u]` are sorted int arrays of neighbors; `und_adj[u]`
    is the sorted union of both (the undirected view used by boundary, level,
    conductance and embedding computations).
    """

    labels: tuple[str, ...]
    out_adj: tuple[np.ndarray, ...]
    in_adj: tuple[np.ndarray, ...]
    und_adj: tuple[np.ndarray, ...] = field(repr=False)
    m: int
    attributes: Optional[AttributeTable] = None

    @property
    def n(self) -> int:
        return len(self.labels)

    def label_to_id(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def out_degree(self, u: int) -> int:
        return len(self.out_adj[u])

    def edges(self) -> Iterable[tuple[int, int]]:
        """Directed edges in (source-sorted, target-sorted) order."""
        for u in range(self.n):
            for v in self.out_adj[u]:
                yield u, int(v)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """All directed edges as (src, dst) arrays; empty int arrays if m=0."""
        if self.m == 0:
            e = np.empty(0, dtype=np.int64)
            return e, e.copy()
        src = np.concatenate([np.full(len(a), u, dtype=np.int64) for u, a in enumerate(self.out_adj)])
        dst = np.concatenate([a for a in self.out_adj])
        return src, dst.astype(np.int64)

    def has_edge(self, u: int, v: int) -> bool:
        a = self.out_adj[u]
        i = np.searchsorted(a, v)
        return i < len(a) and a[i] == v

    def reversed_edges(self) -> "AttributedGraph":
        """Same nodes and attributes, every directed edge flipped."""
        src, dst = self.edge_arrays()
        return from_edges(self.labels, zip(dst.tolist(), src.tolist()), self.attributes)


def _build_adjacency(n: int, edge_set: set[tuple[int, int]]) -> tuple[tuple, tuple, tuple, int]:
    outs: list[list[int]] = [[] for _ in range(n)]
    ins: list[list[int]] = [[] for _ in range(n)]
    for u, v in edge_set:
        outs[u].append(v)
        ins[v].append(u)
    out_adj = tuple(np.array(sorted(a), dtype=np.int64) for a in outs)
    in_adj = tuple(np.array(sorted(a), dtype=np.int64) for a in ins)
    und_adj = tuple(
        np.unique(np.concatenate([out_adj[u], in_adj[u]])) if len(outs[u]) or len(ins[u])
        else np.empty(0, dtype=np.int64)
        for u in range(n)
    )
    return out_adj, in_adj, und_adj, len(edge_set)


def from_edges(
    labels: Sequence[str],
    edges: Iterable[tuple[int, int]],
    attributes: Optional[AttributeTable] = None,
) -> AttributedGraph:
    """Graph from dense-id edge pairs; self-loops and duplicates are dropped."""
    n = len(labels)
    edge_set: set[tuple[int, int]] = set()
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            continue
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u},{v}) outside node range 0..{n - 1}")
        edge_set.add((u, v))
    out_adj, in_adj, und_adj, m = _build_adjacency(n, edge_set)
    if attributes is not None and attributes.n != n:
        raise GraphError(f"attribute table has {attributes.n} rows for {n} nodes")
    return AttributedGraph(tuple(labels), out_adj, in_adj, und_adj, m, attributes)


def _iter_lines(text) -> Iterable[str]:
    if isinstance(text, str):
        return text.splitlines()
    return text


def load_edge_list(text) -> AttributedGraph:
    """Parse a `src<TAB>dst` edge list into a graph.

    Accepts a string or any iterable of lines. Lines that are blank or start
    with `#` are skipped. Dense ids are assigned in first-seen order; self
    loops and duplicate directed edges are dropped.
    """
    label_ids: dict[str, int] = {}
    edge_set: set[tuple[int, int]] = set()

    def intern(label: str) -> int:
        i = label_ids.get(label)
        if i is None:
            i = len(label_ids)
            label_ids[label] = i
        return i

    for lineno, raw in enumerate(_iter_lines(text), start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        tokens = line.split("\t")
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected 2 tab-separated tokens, got {len(tokens)}")
        u, v = intern(tokens[0]), intern(tokens[1])
        if u != v:
            edge_set.add((u, v))

    labels = tuple(label_ids)  # insertion order = first seen
    out_adj, in_adj, und_adj, m = _build_adjacency(len(labels), edge_set)
    return AttributedGraph(labels, out_adj, in_adj, und_adj, m, None)


def to_edge_list_text(g: AttributedGraph) -> str:
    """Serialize as `src<TAB>dst` lines (dense-id order); inverse of load_edge_list."""
    lines = [f"{g.labels[u]}\t{g.labels[v]}" for u, v in g.edges()]
    return "\n".join(lines) + ("\n" if lines else "")


def load_attribute_table(text, g: AttributedGraph) -> AttributeTable:
    """Parse a `node,<key1>,<key2>,...` CSV into a table aligned to g.

    Nodes missing from the file get all-zero rows. Rows whose label is not in
    the graph are skipped with a warning; a non-numeric cell is a parse error.
    """
    import csv

    lines = list(_iter_lines(text))
    reader = csv.reader(lines)
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("attribute table is empty")
    if len(header) < 2 or header[0] != "node":
        raise ParseError("attribute header must be 'node,<key1>,<key2>,...'")
    columns = tuple(header[1:])
    ids = g.label_to_id()
    values = np.zeros((g.n, len(columns)), dtype=np.float64)
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise ParseError(f"line {lineno}: expected {len(header)} cells, got {len(row)}")
        node = ids.get(row[0])
        if node is None:
            logger.warning("attribute row for unknown node %r skipped (line %d)", row[0], lineno)
            continue
        try:
            values[node] = [float(c) for c in row[1:]]
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-numeric cell ({exc})") from None
    return AttributeTable(columns, values)


def attribute_table_to_text(t: AttributeTable, g: AttributedGraph) -> str:
    rows = ["node," + ",".join(t.columns)]
    for u in range(g.n):
        rows.append(g.labels[u] + "," + ",".join(repr(x) for x in t.values[u]))
    return "\n".join(rows) + "\n"


def weakly_connected_components(g: AttributedGraph) -> list[np.ndarray]:
    """Connected components of the undirected view, each a sorted id array."""
    seen = np.zeros(g.n, dtype=bool)
    comps: list[np.ndarray] = []
    for start in range(g.n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = [start]
        while stack:
            u = stack.pop()
            for v in g.und_adj[u]:
                v = int(v)
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        comps.append(np.array(sorted(comp), dtype=np.int64))
    return comps


def is_weakly_connected(g: AttributedGraph) -> bool:
    return g.n > 0 and len(weakly_connected_components(g)) == 1


def largest_weakly_connected_component(g: AttributedGraph) -> AttributedGraph:
    """Induced subgraph on the largest weakly connected node set.

    Size ties break toward the component containing the smallest dense id.
    """
    if g.n == 0:
        raise GraphError("empty graph has no components")
    comps = weakly_connected_components(g)
    best = max(comps, key=lambda c: (len(c), -int(c[0])))
    return induced_subgraph(g, best)


def induced_subgraph(g: AttributedGraph, nodes) -> AttributedGraph:
    """Subgraph on `nodes` keeping exactly the edges with both endpoints inside."""
    nodes = np.unique(np.asarray(list(nodes), dtype=np.int64))
    if len(nodes) and (nodes[0] < 0 or nodes[-1] >= g.n):
        raise GraphError(f"node id outside 0..{g.n - 1}")
    remap = {int(u): i for i, u in enumerate(nodes)}
    labels = tuple(g.labels[int(u)] for u in nodes)
    edges = []
    for u in nodes:
        ru = remap[int(u)]
        for v in g.out_adj[int(u)]:
            rv = remap.get(int(v))
            if rv is not None:
                edges.append((ru, rv))
    attrs = g.attributes.restricted(nodes) if g.attributes is not None else None
    return from_edges(labels, edges, attrs)


def graph_digest(g: AttributedGraph) -> str:
    """Stable hex digest of the labeled structure (keys embedding caches)."""
    h = hashlib.sha256()
    h.update(str(g.n).encode())
    for lab in g.labels:
        h.update(b"\x00" + lab.encode("utf-8"))
    for u, v in g.edges():
        h.update(f"\x01{u},{v}".encode())
    return h.hexdigest()
