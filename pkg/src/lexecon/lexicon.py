"""Word-lists and word-rating tables.

File formats:

* word-list: UTF-8 text, one token per line, ``#`` starts a comment line
* rating table: CSV or TSV with header ``word,<feature1>,...``; every
  rating must lie inside the table's declared scale (affect ratings on
  [0, 1], semantic feature ratings on [0, 7])
"""

from __future__ import annotations

import csv
import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from lexecon.errors import (DataError, EmptyListError, NoOverlapError,
                            OutOfScaleError)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class WordList:
    """Named, ordered set of lowercase tokens (first occurrence wins)."""

    name: str
    words: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.words)) != len(self.words):
            raise DataError(f"word-list {self.name!r} contains duplicates")
        for w in self.words:
            # no whitespace; commas/quotes would corrupt CSV exports
            if (not w or w != w.lower() or "," in w or '"' in w
                    or any(ch.isspace() for ch in w)):
                raise DataError(
                    f"word-list {self.name!r}: invalid token {w!r}")

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: str) -> bool:
        return word in set(self.words)


@dataclass(frozen=True)
class RatingTable:
    """Per-word feature ratings on a declared closed scale."""

    feature_names: tuple[str, ...]
    scale: tuple[float, float]
    entries: dict[str, np.ndarray]
    n_duplicates: int = 0

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class RatedWordSet:
    """A word-list joined to a rating table.

    ``words`` and ``dropped`` partition the source list; ``values`` holds
    one rating row per matched word, aligned with ``words``.
    """

    name: str
    feature_names: tuple[str, ...]
    scale: tuple[float, float]
    words: tuple[str, ...]
    values: np.ndarray = field(repr=False)
    dropped: tuple[str, ...] = ()

    @property
    def coverage(self) -> float:
        return len(self.words) / (len(self.words) + len(self.dropped))

    def feature(self, name: str) -> np.ndarray:
        """Column of ratings for one feature."""
        try:
            i = self.feature_names.index(name)
        except ValueError:
            raise DataError(f"{self.name!r} has no feature {name!r}") from None
        return self.values[:, i]


def load_word_list(path: str | Path, name: str | None = None) -> WordList:
    """Load a word-list file; dedups after lowercasing, keeps first order."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"word-list file not found: {path}")
    seen: dict[str, None] = {}
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        token = line.lower()
        if any(ch.isspace() for ch in token):
            raise DataError(
                f"{path}:{lineno}: token contains whitespace: {line!r}")
        seen.setdefault(token)
    if not seen:
        raise EmptyListError(f"{path}: no tokens after filtering")
    return WordList(name=name or path.stem, words=tuple(seen))


def write_word_list(word_list: WordList, path: str | Path) -> None:
    """Write a word-list in the one-token-per-line format."""
    Path(path).write_text("".join(w + "\n" for w in word_list.words),
                          encoding="utf-8")


def _sniff_delimiter(header: str, path: Path) -> str:
    has_comma = "," in header
    has_tab = "\t" in header
    if has_comma and has_tab:
        raise DataError(f"{path}: header mixes ',' and tab; delimiter is ambiguous")
    if has_comma:
        return ","
    if has_tab:
        return "\t"
    raise DataError(f"{path}: header has no ',' or tab delimiter")


def load_rating_table(path: str | Path,
                      scale: tuple[float, float]) -> RatingTable:
    """Load a delimiter-separated rating table.

    The first column is the word; remaining header fields name the
    features.  Duplicate words keep the last row, with the count logged.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"rating table not found: {path}")
    lo, hi = float(scale[0]), float(scale[1])
    if not lo < hi:
        raise DataError(f"invalid scale ({lo}, {hi})")

    with path.open(encoding="utf-8", newline="") as fh:
        header_line = fh.readline()
        if not header_line.strip():
            raise DataError(f"{path}: empty header")
        delim = _sniff_delimiter(header_line, path)
        header = next(csv.reader([header_line], delimiter=delim))
        features = tuple(h.strip() for h in header[1:])
        if not features:
            raise DataError(f"{path}: header names no features")

        entries: dict[str, np.ndarray] = {}
        n_dup = 0
        for lineno, row in enumerate(csv.reader(fh, delimiter=delim), 2):
            if not row:
                continue
            if len(row) != len(features) + 1:
                raise DataError(
                    f"{path}:{lineno}: expected {len(features) + 1} fields, "
                    f"got {len(row)}")
            word = row[0].strip().lower()
            try:
                vals = np.array([float(v) for v in row[1:]], dtype=np.float64)
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: non-numeric cell "
                                f"({exc})") from None
            if np.any(vals < lo) or np.any(vals > hi):
                raise OutOfScaleError(
                    f"{path}:{lineno}: rating outside [{lo}, {hi}] for "
                    f"{word!r}")
            if word in entries:
                n_dup += 1
            entries[word] = vals

    if n_dup:
        log.warning("%s: %d duplicate words, last occurrence kept", path, n_dup)
    if not entries:
        raise DataError(f"{path}: table has no rows")
    return RatingTable(feature_names=features, scale=(lo, hi),
                       entries=entries, n_duplicates=n_dup)


def join(word_list: WordList, table: RatingTable,
         name: str | None = None) -> RatedWordSet:
    """Join a word-list to a rating table, dropping unmatched words."""
    matched = [w for w in word_list.words if w in table.entries]
    dropped = tuple(w for w in word_list.words if w not in table.entries)
    if not matched:
        raise NoOverlapError(
            f"no word of {word_list.name!r} appears in the rating table")
    values = np.vstack([table.entries[w] for w in matched])
    return RatedWordSet(name=name or word_list.name,
                        feature_names=table.feature_names,
                        scale=table.scale, words=tuple(matched),
                        values=values, dropped=dropped)


def feature_means(rated: RatedWordSet) -> np.ndarray:
    """Arithmetic mean per feature over the matched words."""
    if rated.values.shape[0] == 0:
        raise DataError(f"{rated.name!r} has no rated words")
    return rated.values.mean(axis=0)
