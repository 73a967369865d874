"""Kummerian / 1-smooth verdicts for oriented pro-p presentations.

The heavy lifting lives in the compiled extension; this wrapper adds
dictionary-returning conveniences on top of the JSON-string interfaces.
"""

import json as _json

from ._core import (  # noqa: F401
    CocycleWitness,
    Error,
    Outcome,
    Pair,
    SubgroupWitness,
    Verdict,
    catalog,
    catalog_ids,
)
from ._core import sweep as _sweep_raw

__all__ = [
    "CocycleWitness",
    "Error",
    "Outcome",
    "Pair",
    "SubgroupWitness",
    "Verdict",
    "catalog",
    "catalog_ids",
    "load",
    "loads",
    "module_invariants",
    "survey",
    "sweep",
]


def loads(text, precision=3):
    """Build a :class:`Pair` from pair-file JSON text or a dictionary."""
    if isinstance(text, dict):
        text = _json.dumps(text)
    return Pair.from_json(text, precision)


def load(path, precision=3):
    """Build a :class:`Pair` from a pair file on disk."""
    with open(path, "r", encoding="utf-8") as handle:
        return Pair.from_json(handle.read(), precision)


def survey(pair, k=1, n=3):
    """Per-subgroup verdict rows for every open subgroup of index <= p**k."""
    return _json.loads(pair.survey(k, n))


def module_invariants(pair, n=3):
    """Relation matrix and diagonal invariants of the twisted abelianization."""
    return _json.loads(pair.module_invariants(n))


def sweep(pair, n=2, predicate="kummerian", index_bound=1, cap=1_000_000):
    """Verdicts for every admissible orientation at precision ``n``."""
    return _json.loads(_sweep_raw(pair, n, predicate, index_bound, cap))
