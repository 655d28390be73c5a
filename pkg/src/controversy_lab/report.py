"""Structured-text report documents: deterministic to the byte, re-loadable.

Every CLI-facing result is a JSON document with a schema version, a kind tag,
the configuration echo, and either a `results` object or a `rows` array.
Serialization is canonical (sorted keys, fixed indentation, trailing newline)
so equal runs produce byte-identical files.
"""

from __future__ import annotations

import json

from .brw import ControversyReport
from .errors import ReportError

SCHEMA_VERSION = 1

KINDS = ("brw", "rwc", "guerra", "sweep")


def report_document(kind: str, config: dict, results: dict | None = None, rows: list | None = None) -> dict:
    if kind not in KINDS:
        raise ReportError(f"unknown report kind {kind!r}")
    doc: dict = {"schema_version": SCHEMA_VERSION, "kind": kind, "config": config}
    if results is not None:
        doc["results"] = results
    if rows is not None:
        doc["rows"] = rows
    return doc


def brw_report_document(report: ControversyReport) -> dict:
    d = report.to_dict()
    config = d.pop("config")
    return report_document("brw", config, results=d)


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_report(doc, path) -> None:
    """Persist a report document (or a ControversyReport) as canonical JSON."""
    if isinstance(doc, ControversyReport):
        doc = brw_report_document(doc)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


def load_report(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ReportError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(doc, dict) or "schema_version" not in doc or "kind" not in doc:
        raise ReportError(f"{path}: missing schema_version/kind")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise ReportError(f"{path}: unsupported schema version {doc['schema_version']!r}")
    if doc["kind"] not in KINDS:
        raise ReportError(f"{path}: unknown report kind {doc['kind']!r}")
    return doc
