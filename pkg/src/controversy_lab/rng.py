"""Deterministic named RNG streams derived from one master seed.

Every random choice in the package flows through a stream obtained here, so
any component can be re-run in isolation (or in parallel) and reproduce the
exact draws it made inside a larger run. Stream identity is
(master seed, stream name, *integer indices); the name is hashed with a fixed
algorithm so derivation is stable across processes and platforms.
"""

from __future__ import annotations

import hashlib

import numpy as np

# Streams used by the pipeline. Free-form names are allowed; these are the
# conventional ones so runs stay component-reproducible.
STREAMS = ("partition", "embed", "walks", "noise", "rwc")


def _name_key(name: str) -> int:
    digest = hashlib.sha256(name.encode("utf-8")).digest()
    return int.from_bytes(digest[:4], "little")


def stream_seed(master: int, name: str, *indices: int) -> np.random.SeedSequence:
    """SeedSequence for stream `name` (optionally sub-indexed) under `master`."""
    return np.random.SeedSequence(master, spawn_key=(_name_key(name), *indices))


def stream_rng(master: int, name: str, *indices: int) -> np.random.Generator:
    """Fresh Generator for the given stream; independent of call order."""
    return np.random.default_rng(stream_seed(master, name, *indices))


def float_key(value: float) -> int:
    """Stable integer key for a float (its IEEE-754 bits), for stream indices."""
    return int(np.float64(value).view(np.uint64))
