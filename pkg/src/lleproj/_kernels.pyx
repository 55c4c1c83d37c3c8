# cython: language_level=3
"""Compiled versions of the kernels in ``_fallback``.

Signatures and results match the numpy versions; neighbour indices agree
exactly because squared distances are summed in the same order.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt
from libc.stdlib cimport malloc, free

cnp.import_array()


def knn_indices(samples, Py_ssize_t k):
    cdef const double[:, ::1] x = np.ascontiguousarray(samples, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], dim = x.shape[1]
    out = np.empty((n, k), dtype=np.int64)
    cdef long long[:, ::1] idx = out
    cdef double *best_d = <double *> malloc(k * sizeof(double))
    cdef long long *best_j = <long long *> malloc(k * sizeof(long long))
    cdef Py_ssize_t i, j, m, pos, count
    cdef double d, diff
    if best_d == NULL or best_j == NULL:
        free(best_d)
        free(best_j)
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                count = 0
                for j in range(n):
                    if j == i:
                        continue
                    d = 0.0
                    for m in range(dim):
                        diff = x[i, m] - x[j, m]
                        d = d + diff * diff
                    if count == k and not (d < best_d[k - 1]):
                        continue
                    if count < k:
                        pos = count
                        count += 1
                    else:
                        pos = k - 1
                    # strict comparison keeps earlier (smaller) indices first on ties
                    while pos > 0 and best_d[pos - 1] > d:
                        best_d[pos] = best_d[pos - 1]
                        best_j[pos] = best_j[pos - 1]
                        pos -= 1
                    best_d[pos] = d
                    best_j[pos] = j
                for pos in range(k):
                    idx[i, pos] = best_j[pos]
    finally:
        free(best_d)
        free(best_j)
    return out


def gram_batch(samples, indices):
    cdef const double[:, ::1] x = np.ascontiguousarray(samples, dtype=np.float64)
    cdef const long long[:, ::1] nb = np.ascontiguousarray(indices, dtype=np.int64)
    cdef Py_ssize_t n = nb.shape[0], k = nb.shape[1], dim = x.shape[1]
    out = np.empty((n, k, k), dtype=np.float64)
    cdef double[:, :, ::1] c = out
    cdef Py_ssize_t i, a, b, m
    cdef double s
    with nogil:
        for i in range(n):
            for a in range(k):
                for b in range(a + 1):
                    s = 0.0
                    for m in range(dim):
                        s = s + (x[nb[i, a], m] - x[i, m]) * (x[nb[i, b], m] - x[i, m])
                    c[i, a, b] = s
                    c[i, b, a] = s
    return out


def regularized_weights(grams, double eps_ratio):
    cdef const double[:, :, ::1] c = np.ascontiguousarray(grams, dtype=np.float64)
    cdef Py_ssize_t n = c.shape[0], k = c.shape[1]
    out = np.empty((n, k), dtype=np.float64)
    cdef double[:, ::1] w = out
    cdef double *l = <double *> malloc(k * k * sizeof(double))
    cdef double *z = <double *> malloc(k * sizeof(double))
    cdef Py_ssize_t i, a, b, p
    cdef double tr, eps, s, total
    cdef int failed = 0
    if l == NULL or z == NULL:
        free(l)
        free(z)
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                tr = 0.0
                for a in range(k):
                    tr = tr + c[i, a, a]
                eps = eps_ratio * tr if tr > 0 else eps_ratio
                # Cholesky factor of C + eps I, lower triangle, row-major
                for a in range(k):
                    for b in range(a + 1):
                        s = c[i, a, b]
                        if a == b:
                            s = s + eps
                        for p in range(b):
                            s = s - l[a * k + p] * l[b * k + p]
                        if a == b:
                            if s <= 0.0:
                                failed = 1
                                break
                            l[a * k + a] = sqrt(s)
                        else:
                            l[a * k + b] = s / l[b * k + b]
                    if failed:
                        break
                if failed:
                    break
                for a in range(k):
                    s = 1.0
                    for p in range(a):
                        s = s - l[a * k + p] * z[p]
                    z[a] = s / l[a * k + a]
                for a in range(k - 1, -1, -1):
                    s = z[a]
                    for p in range(a + 1, k):
                        s = s - l[p * k + a] * z[p]
                    z[a] = s / l[a * k + a]
                total = 0.0
                for a in range(k):
                    total = total + z[a]
                for a in range(k):
                    w[i, a] = z[a] / total
    finally:
        free(l)
        free(z)
    if failed:
        raise np.linalg.LinAlgError("regularized local Gram matrix is not positive definite")
    return out
