"""Pure-numpy fallback for the compiled hot kernels.

Semantics are kept in lockstep with ``lexecon._kernels`` (the Cython
module): both consume the same pre-drawn uniforms and make the same
index selections, so a given seed yields the same resamples on either
backend.  Floating-point accumulation order may differ in the last bits
between backends; within one backend results are bit-reproducible.
"""

from __future__ import annotations

import numpy as np

COMPILED = False


def pick_without_replacement(n: int, m: int, uniforms: np.ndarray) -> np.ndarray:
    """First ``m`` indices of a partial Fisher-Yates shuffle of ``range(n)``.

    ``uniforms`` supplies the ``m`` uniform variates driving the swaps.
    """
    idx = np.arange(n, dtype=np.int64)
    for i in range(m):
        j = i + int(uniforms[i] * (n - i))
        if j >= n:  # u ~ 1 - eps can round up
            j = n - 1
        idx[i], idx[j] = idx[j], idx[i]
    return idx[:m].copy()


def perm_count_extreme(pool: np.ndarray, m: int, uniforms: np.ndarray,
                       threshold: float) -> int:
    """Count resampled splits whose |mean difference| reaches ``threshold``.

    Each row of ``uniforms`` drives one resample: ``m`` pool elements are
    selected without replacement by partial Fisher-Yates and compared with
    the remaining ``n - m``.  A tiny tolerance absorbs float noise on ties.
    """
    pool = np.ascontiguousarray(pool, dtype=np.float64)
    n = pool.shape[0]
    n_rows = uniforms.shape[0]
    total = float(np.sum(pool))
    tol = 1e-12 * (1.0 + abs(threshold))

    rows = np.arange(n_rows)
    idx = np.empty((n_rows, n), dtype=np.int64)
    idx[:] = np.arange(n, dtype=np.int64)
    for i in range(m):
        j = i + (uniforms[:, i] * (n - i)).astype(np.int64)
        np.minimum(j, n - 1, out=j)
        tmp = idx[rows, j].copy()
        idx[rows, j] = idx[rows, i]
        idx[rows, i] = tmp

    sel_sum = pool[idx[:, :m]].sum(axis=1)
    diff = sel_sum / m - (total - sel_sum) / (n - m)
    return int(np.count_nonzero(np.abs(diff) >= threshold - tol))


def lloyd(points: np.ndarray, centroids: np.ndarray, max_iter: int = 300):
    """Lloyd iterations with deterministic tie-breaking.

    Assignment ties go to the lowest centroid index; an empty cluster is
    re-seeded at the point farthest from its currently assigned centroid.
    Returns ``(labels, centroids, inertia, n_iter)``.
    """
    points = np.ascontiguousarray(points, dtype=np.float64)
    cent = np.array(centroids, dtype=np.float64, copy=True)
    n, d = points.shape
    k = cent.shape[0]
    labels = np.full(n, -1, dtype=np.int64)
    n_iter = 0

    for n_iter in range(1, max_iter + 1):
        dist = np.zeros((n, k))
        for dim in range(d):
            delta = points[:, dim, None] - cent[None, :, dim]
            dist += delta * delta
        new_labels = np.argmin(dist, axis=1).astype(np.int64)

        counts = np.bincount(new_labels, minlength=k)
        own = dist[np.arange(n), new_labels]
        for c in np.flatnonzero(counts == 0):
            far = int(np.argmax(own))
            counts[new_labels[far]] -= 1
            new_labels[far] = c
            counts[c] += 1
            cent[c] = points[far]
            own[far] = 0.0

        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for dim in range(d):
            sums = np.bincount(labels, weights=points[:, dim], minlength=k)
            for c in range(k):
                if counts[c] > 0:
                    cent[c, dim] = sums[c] / counts[c]

    dist = np.zeros((n, k))
    for dim in range(d):
        delta = points[:, dim, None] - cent[None, :, dim]
        dist += delta * delta
    inertia = float(np.sum(dist[np.arange(n), labels]))
    return labels, cent, inertia, n_iter
