"""Monte-Carlo randomization tests and valence-matched resampling.

The mean-difference test pools both samples and re-splits them at the
original sizes; the matched comparison re-draws a source sample whose
valence histogram equals the target's, bucket by bucket.  Repeat ``r``
of either loop draws from the stream ``(seed, r)``, so results do not
depend on chunking or scheduling.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from lexecon import _backend
from lexecon._rng import repeat_uniforms, stream
from lexecon.errors import DataError, InsufficientMatchError
from lexecon.extrapolation import FeatureMatrix
from lexecon.lexicon import RatedWordSet

log = logging.getLogger(__name__)

_CHUNK = 4096


@dataclass(frozen=True)
class McTestResult:
    """Two-sided permutation test of a mean difference."""

    observed_diff: float
    p_value: float
    n_resamples: int
    seed: int
    n_exceed: int
    sides: str = "two-sided"

    def to_dict(self) -> dict:
        return {"observed_diff": self.observed_diff, "p_value": self.p_value,
                "n_resamples": self.n_resamples, "seed": self.seed,
                "n_exceed": self.n_exceed, "sides": self.sides}


def mc_mean_diff_test(a, b, n_resamples: int = 10_000,
                      seed: int = 0) -> McTestResult:
    """Monte-Carlo permutation test of mean(a) - mean(b), two-sided.

    The pooled values are re-split ``n_resamples`` times at the original
    sizes without replacement; the p-value is
    ``(#{|resampled diff| >= |observed|} + 1) / (n_resamples + 1)``.

    The resampling stream depends only on the pooled multiset and the two
    sample sizes, so swapping ``a`` and ``b`` reproduces the same p-value
    exactly.
    """
    a = np.asarray(a, dtype=np.float64).ravel()
    b = np.asarray(b, dtype=np.float64).ravel()
    if a.size < 2 or b.size < 2:
        raise DataError("each sample needs at least 2 values")
    if n_resamples < 1:
        raise DataError("n_resamples must be >= 1")
    observed = float(a.mean() - b.mean())
    pool = np.sort(np.concatenate([a, b]))
    m = min(a.size, b.size)

    n_exceed = 0
    done = 0
    while done < n_resamples:
        rows = min(_CHUNK, n_resamples - done)
        uniforms = repeat_uniforms(seed, rows, m, first_repeat=done)
        n_exceed += _backend.perm_count_extreme(pool, m, uniforms,
                                                abs(observed))
        done += rows
    p = (n_exceed + 1) / (n_resamples + 1)
    return McTestResult(observed_diff=observed, p_value=p,
                        n_resamples=n_resamples, seed=seed,
                        n_exceed=n_exceed)


@dataclass(frozen=True)
class MatchedSample:
    """One valence-matched draw from the source set."""

    words: tuple[str, ...]
    per_bucket_counts: tuple[int, ...]
    target_bucket_counts: tuple[int, ...]
    source_bucket_counts: tuple[int, ...]
    bucket_edges: tuple[float, ...]


def _bucket_ids(values: np.ndarray, scale: tuple[float, float],
                n_buckets: int) -> np.ndarray:
    lo, hi = scale
    width = (hi - lo) / n_buckets
    ids = np.floor((values - lo) / width).astype(np.int64)
    return np.clip(ids, 0, n_buckets - 1)


def _matched_indices(source_by_bucket: list[np.ndarray],
                     quota: np.ndarray,
                     rng: np.random.Generator) -> np.ndarray:
    """Draw ``quota[b]`` source indices from each bucket on one stream."""
    picks = []
    for b, members in enumerate(source_by_bucket):
        m = int(quota[b])
        if m == 0:
            continue
        sel = _backend.pick_without_replacement(len(members), m,
                                                rng.random(m))
        picks.append(members[sel])
    return np.concatenate(picks) if picks else np.empty(0, dtype=np.int64)


def valence_bucket_match(target: RatedWordSet, source: RatedWordSet,
                         valence_feature: str, n_buckets: int = 10,
                         seed: int = 0, repeat: int = 0) -> MatchedSample:
    """Sample source words matching the target's valence histogram.

    The valence axis is split into ``n_buckets`` equal-width intervals
    over the rating scale; each bucket contributes
    ``min(target count, source count)`` source words drawn without
    replacement, and the same count is imposed on the target side of any
    comparison (recorded in ``per_bucket_counts``).
    """
    if n_buckets < 1:
        raise DataError("n_buckets must be >= 1")
    if target.scale != source.scale:
        raise DataError("target and source are rated on different scales")
    t_ids = _bucket_ids(target.feature(valence_feature), target.scale,
                        n_buckets)
    s_ids = _bucket_ids(source.feature(valence_feature), source.scale,
                        n_buckets)
    t_counts = np.bincount(t_ids, minlength=n_buckets)
    s_counts = np.bincount(s_ids, minlength=n_buckets)
    quota = np.minimum(t_counts, s_counts)
    if int(quota.sum()) < 2:
        raise InsufficientMatchError(
            f"only {int(quota.sum())} words matched across buckets")
    source_by_bucket = [np.flatnonzero(s_ids == b) for b in range(n_buckets)]
    idx = _matched_indices(source_by_bucket, quota, stream(seed, repeat))
    lo, hi = target.scale
    return MatchedSample(
        words=tuple(source.words[i] for i in idx),
        per_bucket_counts=tuple(int(q) for q in quota),
        target_bucket_counts=tuple(int(c) for c in t_counts),
        source_bucket_counts=tuple(int(c) for c in s_counts),
        bucket_edges=tuple(np.linspace(lo, hi, n_buckets + 1)))


@dataclass(frozen=True)
class MatchedComparison:
    """Per-feature comparison of a target set against matched source draws."""

    target_name: str
    source_name: str
    feature_names: tuple[str, ...]
    target_means: np.ndarray = field(repr=False)
    source_estimates: np.ndarray = field(repr=False)
    p_values: np.ndarray = field(repr=False)
    n_repeats: int = 0
    n_buckets: int = 0
    seed: int = 0
    per_bucket_counts: tuple[int, ...] = ()
    sides: str = "two-sided"

    def rows(self):
        """Per-feature rows for CSV export."""
        for f, name in enumerate(self.feature_names):
            yield (name, float(self.target_means[f]),
                   float(self.source_estimates[f]), float(self.p_values[f]))

    def to_dict(self) -> dict:
        return {"target": self.target_name, "source": self.source_name,
                "n_repeats": self.n_repeats, "n_buckets": self.n_buckets,
                "seed": self.seed, "sides": self.sides,
                "per_bucket_counts": list(self.per_bucket_counts),
                "features": {name: {"target_mean": t, "matched_source_mean": s,
                                    "p_value": p}
                             for name, t, s, p in self.rows()}}


def matched_feature_comparison(target: RatedWordSet, source: RatedWordSet,
                               features: FeatureMatrix,
                               valence_feature: str = "valence",
                               n_repeats: int = 2000, n_buckets: int = 10,
                               seed: int = 0) -> MatchedComparison:
    """Compare target feature means against valence-matched source draws.

    For each repeat a matched source sample is drawn and its per-feature
    means recorded; the per-feature p-value is the add-one fraction of
    repeats whose matched mean is at least as far from the matched-mean
    center as the target mean is (two-sided).
    """
    if n_repeats < 1:
        raise DataError("n_repeats must be >= 1")
    feat_words = set(features.words)
    t_keep = [i for i, w in enumerate(target.words) if w in feat_words]
    s_keep = [i for i, w in enumerate(source.words) if w in feat_words]
    if len(t_keep) < len(target.words) or len(s_keep) < len(source.words):
        log.info("matched comparison: %d target / %d source words lack "
                 "feature rows and were dropped",
                 len(target.words) - len(t_keep),
                 len(source.words) - len(s_keep))
    if len(t_keep) < 2 or len(s_keep) < 2:
        raise InsufficientMatchError("too few words with feature rows")

    t_val = target.feature(valence_feature)[t_keep]
    s_val = source.feature(valence_feature)[s_keep]
    t_words = [target.words[i] for i in t_keep]
    s_words = [source.words[i] for i in s_keep]
    t_rows = features.rows_for(t_words)
    s_rows = features.rows_for(s_words)

    t_ids = _bucket_ids(t_val, target.scale, n_buckets)
    s_ids = _bucket_ids(s_val, source.scale, n_buckets)
    t_counts = np.bincount(t_ids, minlength=n_buckets)
    s_counts = np.bincount(s_ids, minlength=n_buckets)
    quota = np.minimum(t_counts, s_counts)
    if int(quota.sum()) < 2:
        raise InsufficientMatchError(
            f"only {int(quota.sum())} words matched across buckets")
    source_by_bucket = [np.flatnonzero(s_ids == b) for b in range(n_buckets)]

    n_feat = len(features.feature_names)
    matched_means = np.empty((n_repeats, n_feat))
    for r in range(n_repeats):
        idx = _matched_indices(source_by_bucket, quota, stream(seed, r))
        matched_means[r] = s_rows[idx].mean(axis=0)

    target_means = t_rows.mean(axis=0)
    center = matched_means.mean(axis=0)
    t_dev = np.abs(target_means - center)
    tol = 1e-12 * (1.0 + t_dev)
    exceed = (np.abs(matched_means - center) >= t_dev - tol).sum(axis=0)
    p_values = (exceed + 1) / (n_repeats + 1)
    return MatchedComparison(
        target_name=target.name, source_name=source.name,
        feature_names=features.feature_names, target_means=target_means,
        source_estimates=center, p_values=p_values, n_repeats=n_repeats,
        n_buckets=n_buckets, seed=seed,
        per_bucket_counts=tuple(int(q) for q in quota))
