"""Deterministic output writers.

Every artifact is plain CSV or JSON with stable key order and
shortest-round-trip float formatting, plus a ``.meta.json`` sidecar
carrying the config hash, stage seed and software version.  Nothing
embeds a timestamp, so identical runs produce identical bytes.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

import lexecon


def format_value(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def write_csv(path: str | Path, header, rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_value(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n",
                          encoding="utf-8")


def config_hash(resolved: dict) -> str:
    blob = json.dumps(resolved, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def word_list_digest(words) -> str:
    blob = "\n".join(words).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def write_sidecar(path: str | Path, stage: str, seed: int,
                  cfg_hash: str, extra: dict | None = None) -> None:
    """Write ``<path>.meta.json`` describing how ``path`` was produced."""
    meta = {"stage": stage, "seed": seed, "config_hash": cfg_hash,
            "version": lexecon.__version__}
    if extra:
        meta.update(extra)
    write_json(str(path) + ".meta.json", meta)
