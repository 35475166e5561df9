"""On-disk cache for computed irreducible-model tables.

The model search is deterministic, so caching only saves time; results are
identical with or without it.  Set UHECKE_CACHE_DIR to relocate, or
UHECKE_NO_CACHE=1 to disable.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

CACHE_VERSION = 1


def _cache_dir():
    if os.environ.get("UHECKE_NO_CACHE"):
        return None
    root = os.environ.get("UHECKE_CACHE_DIR")
    path = Path(root) if root else Path.home() / ".cache" / "uhecke"
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError:
        return None
    return path


def _key(root_system):
    coords = ";".join(",".join(str(x) for x in a) for a in root_system.simple_roots)
    return f"irr-v{CACHE_VERSION}-{root_system.cartan_type}-{coords}".replace("/", "_")


def load_irreducibles(root_system):
    d = _cache_dir()
    if d is None:
        return None
    f = d / (_key(root_system) + ".json")
    if not f.exists():
        return None
    try:
        data = json.loads(f.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    out = []
    for item in data:
        out.append(
            {
                "values": tuple(Fraction(v) for v in item["values"]),
                "dim": item["dim"],
                "b": item["b"],
                "model": tuple(
                    tuple(tuple(Fraction(x) for x in row) for row in m)
                    for m in item["model"]
                ),
                "form_diag": tuple(Fraction(x) for x in item["form_diag"]),
            }
        )
    return out


def store_irreducibles(root_system, irr):
    d = _cache_dir()
    if d is None:
        return
    f = d / (_key(root_system) + ".json")
    data = []
    for c in irr:
        data.append(
            {
                "values": [str(v) for v in c.values],
                "dim": c.dim,
                "b": c.b_invariant,
                "model": [[[str(x) for x in row] for row in m] for m in c.model],
                "form_diag": [str(x) for x in c.form_diag],
            }
        )
    try:
        f.write_text(json.dumps(data))
    except OSError:
        pass
