# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled CSR kernels for the gradient hot loop.

Every solver spends its time computing a_i . x over a row subset and
accumulating sum_j c_j * a_j back into a dense vector; these two loops are
the only compiled code in the package.  The pure-numpy implementations in
``_fallback`` are the contract; these must match them to rounding.
"""

import numpy as np


cdef class CsrHandle:
    cdef readonly long long[::1] indptr
    cdef readonly long long[::1] indices
    cdef readonly double[::1] data
    cdef readonly Py_ssize_t n_rows
    cdef readonly Py_ssize_t n_cols

    def __init__(self, indptr, indices, data, n_rows, n_cols):
        self.indptr = indptr
        self.indices = indices
        self.data = data
        self.n_rows = n_rows
        self.n_cols = n_cols


def make_matrix(indptr, indices, data, n_rows, n_cols):
    return CsrHandle(
        np.ascontiguousarray(indptr, dtype=np.int64),
        np.ascontiguousarray(indices, dtype=np.int64),
        np.ascontiguousarray(data, dtype=np.float64),
        n_rows,
        n_cols,
    )


def subset_dots(CsrHandle h, long long[::1] rows, x):
    """Row-subset products: t[j] = a_{rows[j]} . x (x may be (d,) or (d, C))."""
    cdef Py_ssize_t b = rows.shape[0]
    if x.ndim == 1:
        out = np.empty(b, dtype=np.float64)
        _dots_vec(h.indptr, h.indices, h.data, rows,
                  np.ascontiguousarray(x, dtype=np.float64), out)
        return out
    out2 = np.empty((b, x.shape[1]), dtype=np.float64)
    _dots_mat(h.indptr, h.indices, h.data, rows,
              np.ascontiguousarray(x, dtype=np.float64), out2)
    return out2


def subset_weighted_sum(CsrHandle h, long long[::1] rows, coef):
    """Weighted row accumulation: sum_j coef[j] * a_{rows[j]} as a dense (d,)
    vector, or the (d, C) outer-product sum when coef is (b, C)."""
    if coef.ndim == 1:
        out = np.zeros(h.n_cols, dtype=np.float64)
        _accum_vec(h.indptr, h.indices, h.data, rows,
                   np.ascontiguousarray(coef, dtype=np.float64), out)
        return out
    out2 = np.zeros((h.n_cols, coef.shape[1]), dtype=np.float64)
    _accum_mat(h.indptr, h.indices, h.data, rows,
               np.ascontiguousarray(coef, dtype=np.float64), out2)
    return out2


def row_sq_norms(CsrHandle h):
    out = np.zeros(h.n_rows, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, p
    cdef double s
    for i in range(h.n_rows):
        s = 0.0
        for p in range(h.indptr[i], h.indptr[i + 1]):
            s += h.data[p] * h.data[p]
        o[i] = s
    return out


cdef void _dots_vec(const long long[::1] indptr, const long long[::1] indices,
                    const double[::1] data, const long long[::1] rows,
                    const double[::1] x, double[::1] out) noexcept nogil:
    cdef Py_ssize_t j, p
    cdef long long r
    cdef double s
    for j in range(rows.shape[0]):
        r = rows[j]
        s = 0.0
        for p in range(indptr[r], indptr[r + 1]):
            s += data[p] * x[indices[p]]
        out[j] = s


cdef void _dots_mat(const long long[::1] indptr, const long long[::1] indices,
                    const double[::1] data, const long long[::1] rows,
                    const double[:, ::1] x, double[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t j, p, c
    cdef Py_ssize_t n_classes = x.shape[1]
    cdef long long r
    cdef double v
    for j in range(rows.shape[0]):
        r = rows[j]
        for c in range(n_classes):
            out[j, c] = 0.0
        for p in range(indptr[r], indptr[r + 1]):
            v = data[p]
            for c in range(n_classes):
                out[j, c] += v * x[indices[p], c]


cdef void _accum_vec(const long long[::1] indptr, const long long[::1] indices,
                     const double[::1] data, const long long[::1] rows,
                     const double[::1] coef, double[::1] out) noexcept nogil:
    cdef Py_ssize_t j, p
    cdef long long r
    cdef double c
    for j in range(rows.shape[0]):
        r = rows[j]
        c = coef[j]
        for p in range(indptr[r], indptr[r + 1]):
            out[indices[p]] += c * data[p]


cdef void _accum_mat(const long long[::1] indptr, const long long[::1] indices,
                     const double[::1] data, const long long[::1] rows,
                     const double[:, ::1] coef, double[:, ::1] out) noexcept nogil:
    cdef Py_ssize_t j, p, c
    cdef Py_ssize_t n_classes = coef.shape[1]
    cdef long long r
    cdef double v
    for j in range(rows.shape[0]):
        r = rows[j]
        for p in range(indptr[r], indptr[r + 1]):
            v = data[p]
            for c in range(n_classes):
                out[indices[p], c] += v * coef[j, c]
