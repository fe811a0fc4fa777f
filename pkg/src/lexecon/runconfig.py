"""Declarative run configuration for the CLI.

A single JSON file names every input and all stage parameters; CLI flags
override file values.  Stage seeds are derived from the global seed and
the stage label, so one stage's stream never perturbs another's.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from lexecon._rng import derive_seed
from lexecon.errors import ConfigError
from lexecon.output import config_hash

_COUNT_FIELDS = {
    "n_resamples", "n_repeats", "n_buckets", "hidden_units", "max_epochs",
    "patience", "k_folds", "min_overlap", "n_restarts", "n_components",
    "horizon", "max_lag", "lag", "rank",
}
_NONNEG_FIELDS = {"replications"}  # zero disables bootstrap bands
_FRACTION_FIELDS = {"validation_fraction", "level"}
_STAGES = ("lexstat", "features", "split", "index", "econ")


def _set_path(cfg: dict, dotted: str, raw_value: str) -> None:
    try:
        value = json.loads(raw_value)
    except json.JSONDecodeError:
        value = raw_value
    parts = dotted.split(".")
    node = cfg
    for part in parts[:-1]:
        node = node.setdefault(part, {})
        if not isinstance(node, dict):
            raise ConfigError(f"--set {dotted}: {part!r} is not a section")
    node[parts[-1]] = value


@dataclass
class RunConfig:
    seed: int
    out_dir: Path
    base_dir: Path
    word_lists: dict[str, Path] = field(default_factory=dict)
    rating_tables: dict[str, tuple[Path, tuple[float, float]]] = field(
        default_factory=dict)
    embeddings: Path | None = None
    corpus: Path | None = None
    tags: tuple[str, ...] = ()
    stages: dict[str, dict] = field(default_factory=dict)
    resolved: dict = field(default_factory=dict)

    def stage(self, name: str) -> dict:
        return self.stages.get(name, {})

    def stage_seed(self, name: str) -> int:
        return derive_seed(self.seed, name)

    @property
    def hash(self) -> str:
        # identifies the analytical configuration; where outputs land
        # must not change it
        resolved = {k: v for k, v in self.resolved.items() if k != "out_dir"}
        return config_hash(resolved)

    def word_list_path(self, name: str) -> Path:
        """Resolve a list name: configured path first, then an output file."""
        if name in self.word_lists:
            return self.word_lists[name]
        candidate = self.out_dir / f"{name}.txt"
        if candidate.is_file():
            return candidate
        raise ConfigError(f"word list {name!r} is neither configured nor "
                          f"present at {candidate}")

    def rating_table(self, name: str) -> tuple[Path, tuple[float, float]]:
        if name not in self.rating_tables:
            raise ConfigError(f"rating table {name!r} is not configured")
        return self.rating_tables[name]


def _validate_counts(section: str, d: dict) -> None:
    for key, value in d.items():
        if isinstance(value, dict):
            _validate_counts(f"{section}.{key}", value)
        elif key in _COUNT_FIELDS:
            if value is not None and (not isinstance(value, int) or value <= 0):
                raise ConfigError(f"{section}.{key} must be a positive "
                                  f"integer, got {value!r}")
        elif key in _NONNEG_FIELDS:
            if not isinstance(value, int) or value < 0:
                raise ConfigError(f"{section}.{key} must be a non-negative "
                                  f"integer, got {value!r}")
        elif key in _FRACTION_FIELDS:
            if not (isinstance(value, (int, float)) and 0.0 < value < 1.0):
                raise ConfigError(f"{section}.{key} must lie in (0, 1), "
                                  f"got {value!r}")


def load_run_config(path: str | Path, seed: int | None = None,
                    out: str | None = None, tags=None,
                    sets=()) -> RunConfig:
    """Load, override and validate a run configuration."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: top level must be an object")

    if seed is not None:
        raw["seed"] = seed
    if out is not None:
        raw["out_dir"] = out
    if tags:
        raw["tags"] = list(tags)
    for item in sets:
        if "=" not in item:
            raise ConfigError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        _set_path(raw, key, value)

    base = path.parent

    def respath(p) -> Path:
        p = Path(p)
        return p if p.is_absolute() else base / p

    cfg_seed = raw.get("seed", 0)
    if not isinstance(cfg_seed, int) or cfg_seed < 0:
        raise ConfigError(f"seed must be a non-negative integer, "
                          f"got {cfg_seed!r}")
    out_dir = respath(raw.get("out_dir", "out"))

    word_lists = {}
    for name, p in (raw.get("word_lists") or {}).items():
        wp = respath(p)
        if not wp.is_file():
            raise ConfigError(f"word list {name!r}: file not found: {wp}")
        word_lists[name] = wp

    tables = {}
    for name, entry in (raw.get("rating_tables") or {}).items():
        if not isinstance(entry, dict) or "path" not in entry:
            raise ConfigError(f"rating table {name!r} needs a 'path'")
        tp = respath(entry["path"])
        if not tp.is_file():
            raise ConfigError(f"rating table {name!r}: file not found: {tp}")
        scale = entry.get("scale", [0.0, 1.0])
        if (not isinstance(scale, (list, tuple)) or len(scale) != 2
                or not float(scale[0]) < float(scale[1])):
            raise ConfigError(f"rating table {name!r}: bad scale {scale!r}")
        tables[name] = (tp, (float(scale[0]), float(scale[1])))

    embeddings = corpus = None
    if raw.get("embeddings"):
        embeddings = respath(raw["embeddings"])
        if not embeddings.is_file():
            raise ConfigError(f"embeddings file not found: {embeddings}")
    if raw.get("corpus"):
        corpus = respath(raw["corpus"])
        if not corpus.is_file():
            raise ConfigError(f"corpus file not found: {corpus}")

    stages = {}
    for name in _STAGES:
        section = raw.get(name) or {}
        if not isinstance(section, dict):
            raise ConfigError(f"section {name!r} must be an object")
        _validate_counts(name, section)
        stages[name] = section

    econ = stages["econ"]
    if econ.get("panel"):
        panel_path = respath(econ["panel"])
        if not panel_path.is_file():
            raise ConfigError(f"econ panel file not found: {panel_path}")

    return RunConfig(seed=cfg_seed, out_dir=out_dir, base_dir=base,
                     word_lists=word_lists, rating_tables=tables,
                     embeddings=embeddings, corpus=corpus,
                     tags=tuple(raw.get("tags") or ()), stages=stages,
                     resolved=raw)
