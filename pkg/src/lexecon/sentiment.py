"""Article scoring and monthly sentiment index construction.

An article scores ``s = (p - n) / t`` where ``p`` and ``n`` count tokens
on the positive and negative lists (with multiplicity) and ``t`` is the
total token count.  A token appearing on both lists counts toward
neither and increments a conflict counter.  Scores are averaged by
calendar month.
"""

from __future__ import annotations

import datetime as dt
import json
import logging
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from lexecon.errors import DataError, ZeroLengthError
from lexecon.lexicon import WordList

log = logging.getLogger(__name__)

TOKENIZER_ID = "lower-alnum-v1"

# lowercase first, then keep maximal alphanumeric runs (underscore splits)
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase and split on any non-alphanumeric character."""
    return _TOKEN_RE.findall(text.lower())


@dataclass(frozen=True)
class Article:
    id: str
    date: dt.date
    tags: tuple[str, ...]
    text: str


@dataclass(frozen=True)
class ArticleScore:
    positive_hits: int
    negative_hits: int
    total: int
    score: float
    conflict_hits: int = 0


def article_sentiment(tokens: list[str], positive: WordList,
                      negative: WordList) -> ArticleScore:
    """Score one tokenized article against a positive/negative list pair."""
    t = len(tokens)
    if t == 0:
        raise ZeroLengthError("article has no tokens")
    pos = set(positive.words)
    neg = set(negative.words)
    both = pos & neg
    p = n = conflict = 0
    for tok in tokens:
        if tok in both:
            conflict += 1
        elif tok in pos:
            p += 1
        elif tok in neg:
            n += 1
    return ArticleScore(positive_hits=p, negative_hits=n, total=t,
                        score=(p - n) / t, conflict_hits=conflict)


@dataclass(frozen=True)
class SentimentSeries:
    """Monthly mean article sentiment with per-month article counts."""

    name: str
    months: tuple[str, ...]          # "YYYY-MM", strictly increasing
    values: tuple[float, ...]
    counts: tuple[int, ...]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if list(self.months) != sorted(set(self.months)):
            raise DataError("months must be strictly increasing")


def parse_article(line: str, lineno: int = 0) -> Article:
    """Parse one JSON-lines corpus record."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise DataError(f"corpus line {lineno}: invalid JSON ({exc})") from None
    for key in ("id", "date", "text"):
        if key not in obj:
            raise DataError(f"corpus line {lineno}: missing field {key!r}")
    try:
        date = dt.date.fromisoformat(str(obj["date"])[:10])
    except ValueError:
        raise DataError(f"corpus line {lineno}: bad date "
                        f"{obj['date']!r}") from None
    text = str(obj["text"]).strip()
    if not text:
        raise DataError(f"corpus line {lineno}: empty text")
    return Article(id=str(obj["id"]), date=date,
                   tags=tuple(obj.get("tags", [])), text=text)


def iter_corpus(path: str | Path,
                tags: Iterable[str] | None = None) -> Iterator[Article]:
    """Stream articles from a JSON-lines corpus, optionally tag-filtered."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"corpus file not found: {path}")
    wanted = set(tags) if tags else None
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            article = parse_article(line, lineno)
            if wanted is not None and not (wanted & set(article.tags)):
                continue
            yield article


def build_monthly_index(articles: Iterable[Article], positive: WordList,
                        negative: WordList, name: str,
                        weight_by_length: bool = False) -> SentimentSeries:
    """Aggregate article sentiment into a monthly series.

    The month value is the unweighted mean of article scores (or the
    token-weighted mean when ``weight_by_length``).  Token-free articles
    are skipped with a logged count; months without articles are absent
    from the series.

    Article text is streamed; only one score per article is retained so
    the monthly reduction (an exactly rounded ``fsum``) is independent of
    stream order.
    """
    scores: dict[str, list[float]] = {}
    weights: dict[str, list[float]] = {}
    n_articles = 0
    n_skipped = 0
    for article in articles:
        tokens = tokenize(article.text)
        if not tokens:
            n_skipped += 1
            continue
        sc = article_sentiment(tokens, positive, negative)
        month = f"{article.date.year:04d}-{article.date.month:02d}"
        w = float(sc.total) if weight_by_length else 1.0
        scores.setdefault(month, []).append(sc.score * w)
        weights.setdefault(month, []).append(w)
        n_articles += 1
    if n_skipped:
        log.info("%s: skipped %d articles with no tokens", name, n_skipped)
    if not scores:
        raise DataError("no scorable articles in corpus")
    months = tuple(sorted(scores))
    return SentimentSeries(
        name=name, months=months,
        values=tuple(math.fsum(scores[m]) / math.fsum(weights[m])
                     for m in months),
        counts=tuple(len(scores[m]) for m in months),
        metadata={"tokenizer": TOKENIZER_ID,
                  "aggregation": "length-weighted mean" if weight_by_length
                  else "unweighted mean",
                  "positive_list": positive.name,
                  "negative_list": negative.name,
                  "n_articles": n_articles,
                  "n_skipped_empty": n_skipped})


def write_series_csv(series: SentimentSeries, path: str | Path) -> None:
    """Write ``month,value,article_count`` rows."""
    lines = ["month,value,article_count"]
    lines += [f"{m},{v!r},{c}" for m, v, c in
              zip(series.months, series.values, series.counts)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_series_csv(path: str | Path, name: str | None = None) -> SentimentSeries:
    """Read a series written by :func:`write_series_csv`."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"series file not found: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0].split(",")[:2] != ["month", "value"]:
        raise DataError(f"{path}: not a sentiment series file")
    months, values, counts = [], [], []
    for line in lines[1:]:
        if not line.strip():
            continue
        m, v, c = line.split(",")
        months.append(m)
        values.append(float(v))
        counts.append(int(c))
    return SentimentSeries(name=name or path.stem, months=tuple(months),
                           values=tuple(values), counts=tuple(counts))
