"""Correlation, PCA and k-means structure of a rated word space.

PCA is run on the correlation matrix (features are z-scored first), with
a canonical sign rule so scores are exactly reproducible; k-means labels
are canonicalized by centroid position before the split step names the
sub-lists by their labeling-feature means.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from lexecon import _backend
from lexecon._rng import derive_seed, stream
from lexecon.errors import DataError, DegenerateDataError, LabelTieError
from lexecon.extrapolation import FeatureMatrix
from lexecon.lexicon import WordList

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CorrelationMatrix:
    feature_names: tuple[str, ...]
    matrix: np.ndarray = field(repr=False)


def _select(matrix: FeatureMatrix, features) -> tuple[tuple[str, ...], np.ndarray]:
    if features is None:
        return matrix.feature_names, matrix.values
    cols = []
    for name in features:
        if name not in matrix.feature_names:
            raise DataError(f"feature matrix has no column {name!r}")
        cols.append(matrix.feature_names.index(name))
    return tuple(features), matrix.values[:, cols]


def feature_correlations(matrix: FeatureMatrix,
                         features=None) -> CorrelationMatrix:
    """Pairwise Pearson correlations between features, across words."""
    names, x = _select(matrix, features)
    if x.shape[0] < 3:
        raise DataError("need at least 3 words for correlations")
    sd = x.std(axis=0, ddof=1)
    flat = [names[i] for i in np.flatnonzero(sd < 1e-12)]
    if flat:
        raise DegenerateDataError(f"zero-variance feature(s): {flat}")
    corr = np.corrcoef(x, rowvar=False)
    corr = np.clip((corr + corr.T) / 2.0, -1.0, 1.0)
    np.fill_diagonal(corr, 1.0)
    return CorrelationMatrix(feature_names=names, matrix=corr)


@dataclass(frozen=True)
class PcaResult:
    """Principal components of the z-scored feature block."""

    feature_names: tuple[str, ...]
    words: tuple[str, ...]
    loadings: np.ndarray = field(repr=False)   # features x components
    scores: np.ndarray = field(repr=False)     # words x components
    explained: np.ndarray = field(repr=False)  # variance fractions
    mean: np.ndarray = field(repr=False)
    std: np.ndarray = field(repr=False)
    basis: str = "correlation"


def pca_project(matrix: FeatureMatrix, features=None,
                n_components: int = 2) -> PcaResult:
    """Project words onto the top principal components.

    Features are standardized with the recorded mean/std (ddof=1), the
    correlation matrix is eigen-decomposed, and each loading column is
    signed so its largest-magnitude entry is positive.
    """
    names, x = _select(matrix, features)
    n, f = x.shape
    if f < n_components:
        raise DataError(f"{f} features cannot yield {n_components} components")
    if n < n_components + 1:
        raise DataError(f"need at least {n_components + 1} words")
    mean = x.mean(axis=0)
    std = x.std(axis=0, ddof=1)
    flat = [names[i] for i in np.flatnonzero(std < 1e-12)]
    if flat:
        raise DegenerateDataError(f"zero-variance feature(s): {flat}")
    z = (x - mean) / std
    corr = (z.T @ z) / (n - 1)
    eigval, eigvec = np.linalg.eigh(corr)
    order = np.argsort(eigval)[::-1]
    eigval = np.clip(eigval[order], 0.0, None)
    eigvec = eigvec[:, order]
    rank = int(np.sum(eigval > 1e-10 * max(eigval[0], 1.0)))
    if rank < n_components:
        raise DegenerateDataError(
            f"feature block has rank {rank} < {n_components} components")
    loadings = eigvec[:, :n_components]
    for c in range(n_components):
        j = int(np.argmax(np.abs(loadings[:, c])))
        if loadings[j, c] < 0:
            loadings[:, c] = -loadings[:, c]
    scores = z @ loadings
    explained = eigval[:n_components] / eigval.sum()
    return PcaResult(feature_names=names, words=matrix.words,
                     loadings=loadings, scores=scores, explained=explained,
                     mean=mean, std=std)


@dataclass(frozen=True)
class ClusterAssignment:
    """Best-of-restarts k-means assignment in component space."""

    words: tuple[str, ...]
    labels: np.ndarray = field(repr=False)     # cluster ids, 1-based
    centroids: np.ndarray = field(repr=False)  # k x dims, id order
    inertia: float = 0.0
    seed: int = 0
    n_restarts: int = 0
    best_restart: int = 0

    def cluster_words(self, cluster_id: int) -> tuple[str, ...]:
        return tuple(w for w, c in zip(self.words, self.labels)
                     if c == cluster_id)


def _seed_centroids(points: np.ndarray, k: int,
                    rng: np.random.Generator) -> np.ndarray:
    """Distance-weighted greedy seeding (k-means++ style)."""
    n = points.shape[0]
    centroids = np.empty((k, points.shape[1]))
    first = int(rng.integers(n))
    centroids[0] = points[first]
    d2 = np.sum((points - centroids[0]) ** 2, axis=1)
    for c in range(1, k):
        total = d2.sum()
        if total <= 0.0:
            pick = int(rng.integers(n))
        else:
            target = rng.random() * total
            pick = int(np.searchsorted(np.cumsum(d2), target, side="right"))
            pick = min(pick, n - 1)
        centroids[c] = points[pick]
        d2 = np.minimum(d2, np.sum((points - centroids[c]) ** 2, axis=1))
    return centroids


def kmeans_cluster(pca: PcaResult, k: int = 2, n_restarts: int = 100,
                   seed: int = 0, max_iter: int = 300) -> ClusterAssignment:
    """Cluster PCA scores with best-of-``n_restarts`` k-means.

    Restart ``r`` seeds its centroids from stream ``(seed, r)``; the
    restart with the lowest inertia wins, ties broken by restart index.
    Cluster ids are canonicalized so cluster 1 has the lower centroid on
    the first component.
    """
    points = np.ascontiguousarray(pca.scores, dtype=np.float64)
    n = points.shape[0]
    if np.unique(points, axis=0).shape[0] < k:
        raise DataError(f"fewer than {k} distinct points")
    if n_restarts < 1:
        raise DataError("n_restarts must be >= 1")
    base = derive_seed(seed, "kmeans")
    best = None
    for r in range(n_restarts):
        init = _seed_centroids(points, k, stream(base, r))
        labels, cent, inertia, _ = _backend.lloyd(points, init, max_iter)
        if best is None or inertia < best[0]:
            best = (inertia, labels, cent, r)
    inertia, labels, cent, r_best = best
    counts = np.bincount(labels, minlength=k)
    if np.any(counts == 0):
        raise DataError("k-means produced an empty cluster")
    order = np.argsort(cent[:, 0], kind="stable")
    relabel = np.empty(k, dtype=np.int64)
    relabel[order] = np.arange(k)
    return ClusterAssignment(words=pca.words,
                             labels=relabel[labels] + 1,
                             centroids=cent[order], inertia=float(inertia),
                             seed=seed, n_restarts=n_restarts,
                             best_restart=r_best)


def split_word_list(word_list: WordList, assignment: ClusterAssignment,
                    matrix: FeatureMatrix,
                    label_features: tuple[str, str] = ("Cognition", "Drive"),
                    override_tie: bool = False) -> tuple[WordList, WordList]:
    """Split a word-list into two sub-lists by cluster.

    The cluster with the higher mean of the summed labeling features
    becomes the first sub-list; unrated words are excluded from both.
    A tie raises unless ``override_tie`` keeps cluster order.
    """
    rated = set(assignment.words)
    label_sum = sum(matrix.feature(f) for f in label_features)
    by_word = dict(zip(matrix.words, label_sum))
    means = []
    for cid in (1, 2):
        ws = assignment.cluster_words(cid)
        missing = [w for w in ws if w not in by_word]
        if missing:
            raise DataError(f"feature matrix lacks clustered words "
                            f"(first: {missing[:3]})")
        means.append(float(np.mean([by_word[w] for w in ws])))
    if means[0] == means[1]:
        if not override_tie:
            raise LabelTieError(
                "clusters tie on the labeling statistic; pass "
                "override_tie=True to keep cluster order")
        log.warning("labeling tie overridden; cluster 1 kept first")
        first = 1
    else:
        first = 1 if means[0] > means[1] else 2
    second = 2 if first == 1 else 1
    in_first = set(assignment.cluster_words(first))
    alt1 = tuple(w for w in word_list.words if w in rated and w in in_first)
    alt2 = tuple(w for w in word_list.words if w in rated and w not in in_first)
    return (WordList(name=f"{word_list.name}_alt1", words=alt1),
            WordList(name=f"{word_list.name}_alt2", words=alt2))
