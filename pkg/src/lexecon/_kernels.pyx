# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: permutation resampling and Lloyd iterations.

Kept in semantic lockstep with ``lexecon._kernels_py`` -- both backends
consume the same pre-drawn uniforms and select the same indices.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

COMPILED = True


def pick_without_replacement(int n, int m, double[::1] uniforms):
    """First ``m`` indices of a partial Fisher-Yates shuffle of ``range(n)``."""
    idx_arr = np.arange(n, dtype=np.int64)
    cdef long long[::1] idx = idx_arr
    cdef Py_ssize_t i, j
    cdef long long tmp
    for i in range(m):
        j = i + <Py_ssize_t>(uniforms[i] * (n - i))
        if j >= n:
            j = n - 1
        tmp = idx[i]
        idx[i] = idx[j]
        idx[j] = tmp
    return idx_arr[:m].copy()


def perm_count_extreme(double[::1] pool, int m, double[:, ::1] uniforms,
                       double threshold):
    """Count resampled splits whose |mean difference| reaches ``threshold``."""
    cdef Py_ssize_t n = pool.shape[0]
    cdef Py_ssize_t n_rows = uniforms.shape[0]
    cdef Py_ssize_t r, i, j
    cdef long long tmp
    cdef double total = 0.0, sel_sum, diff
    cdef double tol = 1e-12 * (1.0 + (threshold if threshold >= 0 else -threshold))
    cdef long long count = 0

    idx_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] idx = idx_arr

    for i in range(n):
        total += pool[i]

    for r in range(n_rows):
        for i in range(n):
            idx[i] = i
        sel_sum = 0.0
        for i in range(m):
            j = i + <Py_ssize_t>(uniforms[r, i] * (n - i))
            if j >= n:
                j = n - 1
            tmp = idx[i]
            idx[i] = idx[j]
            idx[j] = tmp
            sel_sum += pool[idx[i]]
        diff = sel_sum / m - (total - sel_sum) / (n - m)
        if diff < 0:
            diff = -diff
        if diff >= threshold - tol:
            count += 1
    return int(count)


def lloyd(double[:, ::1] points, centroids_in, int max_iter=300):
    """Lloyd iterations with deterministic tie-breaking.

    Mirrors ``_kernels_py.lloyd``: assignment ties go to the lowest
    centroid index; empty clusters are re-seeded at the point farthest
    from its assigned centroid.  Returns (labels, centroids, inertia,
    n_iter).
    """
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t d = points.shape[1]
    cent_arr = np.array(centroids_in, dtype=np.float64, copy=True)
    cdef double[:, ::1] cent = cent_arr
    cdef Py_ssize_t k = cent.shape[0]

    labels_arr = np.full(n, -1, dtype=np.int64)
    cdef long long[::1] labels = labels_arr
    new_labels_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] new_labels = new_labels_arr
    counts_arr = np.zeros(k, dtype=np.int64)
    cdef long long[::1] counts = counts_arr
    sums_arr = np.zeros((k, d), dtype=np.float64)
    cdef double[:, ::1] sums = sums_arr
    own_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] own = own_arr

    cdef Py_ssize_t it, p, c, dim, best, far
    cdef double dist, delta, best_dist, far_dist, inertia
    cdef bint changed
    cdef int n_iter = 0

    for it in range(1, max_iter + 1):
        n_iter = it
        for c in range(k):
            counts[c] = 0
        for p in range(n):
            best = 0
            best_dist = 0.0
            for dim in range(d):
                delta = points[p, dim] - cent[0, dim]
                best_dist += delta * delta
            for c in range(1, k):
                dist = 0.0
                for dim in range(d):
                    delta = points[p, dim] - cent[c, dim]
                    dist += delta * delta
                if dist < best_dist:
                    best_dist = dist
                    best = c
            new_labels[p] = best
            own[p] = best_dist
            counts[best] += 1

        for c in range(k):
            if counts[c] == 0:
                far = 0
                far_dist = own[0]
                for p in range(1, n):
                    if own[p] > far_dist:
                        far_dist = own[p]
                        far = p
                counts[new_labels[far]] -= 1
                new_labels[far] = c
                counts[c] += 1
                for dim in range(d):
                    cent[c, dim] = points[far, dim]
                own[far] = 0.0

        changed = False
        for p in range(n):
            if new_labels[p] != labels[p]:
                changed = True
                break
        if not changed:
            break

        for p in range(n):
            labels[p] = new_labels[p]
        for c in range(k):
            for dim in range(d):
                sums[c, dim] = 0.0
        for p in range(n):
            for dim in range(d):
                sums[labels[p], dim] += points[p, dim]
        for c in range(k):
            if counts[c] > 0:
                for dim in range(d):
                    cent[c, dim] = sums[c, dim] / counts[c]

    inertia = 0.0
    for p in range(n):
        c = labels[p]
        dist = 0.0
        for dim in range(d):
            delta = points[p, dim] - cent[c, dim]
            dist += delta * delta
        inertia += dist
    return labels_arr, cent_arr, float(inertia), n_iter
