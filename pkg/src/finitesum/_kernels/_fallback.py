"""numpy/scipy fallback for the CSR kernels.

Same contract as the compiled module: a handle made from CSR triplets, then
row-subset dot products and weighted row accumulation.  Used automatically
when the extension is not built, or when FINITESUM_PURE_PYTHON=1.
"""

import numpy as np
import scipy.sparse as sp


def make_matrix(indptr, indices, data, n_rows, n_cols):
    return sp.csr_matrix(
        (np.asarray(data, dtype=np.float64), indices, indptr),
        shape=(n_rows, n_cols),
    )


def subset_dots(handle, rows, x):
    if rows.shape[0] == handle.shape[0]:
        return handle @ x
    return handle[rows] @ x


def subset_weighted_sum(handle, rows, coef):
    if rows.shape[0] == handle.shape[0]:
        return handle.T @ coef
    return handle[rows].T @ coef


def row_sq_norms(handle):
    sq = handle.multiply(handle)
    return np.asarray(sq.sum(axis=1)).ravel()
