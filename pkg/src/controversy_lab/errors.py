"""Exception types shared across the package."""


class ControversyLabError(Exception):
    """Base class for all package errors."""


class ParseError(ControversyLabError):
    """Malformed input text (edge list, attribute table, partition file, config)."""


class GraphError(ControversyLabError):
    """Structurally invalid graph or graph operation (empty graph, unknown node)."""


class PartitionError(ControversyLabError):
    """Invalid two-way split: uncovered nodes, empty side, disconnected input."""


class FeatureError(ControversyLabError):
    """Inconsistent feature-space request (missing part for mode, length mismatch)."""


class ReportError(ControversyLabError):
    """Unreadable or schema-incompatible report document."""
