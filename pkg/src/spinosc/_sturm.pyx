# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Sturm-count kernel for zero-diagonal symmetric tridiagonal matrices.

Must stay arithmetically identical to ``spinosc._sturm_py.sturm_counts`` so
both backends bisect to bit-identical eigenvalues.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef double TINY = 2.2250738585072014e-308  # smallest normal double


def sturm_counts(double[::1] offdiag_sq, double[::1] shifts):
    """Number of eigenvalues strictly below each shift.

    ``offdiag_sq`` holds the squared (scaled) off-diagonal entries; the matrix
    size is len(offdiag_sq) + 1.  Counts negative pivots of the LDL^T
    factorization of (M - shift I), replacing exact zero pivots by -TINY.
    """
    cdef Py_ssize_t nshift = shifts.shape[0]
    cdef Py_ssize_t m = offdiag_sq.shape[0]
    out = np.empty(nshift, dtype=np.int64)
    cdef long long[::1] ov = out
    cdef Py_ssize_t i, k
    cdef double d, x
    cdef long long cnt
    for i in range(nshift):
        x = shifts[i]
        d = -x
        if d == 0.0:
            d = -TINY
        cnt = 1 if d < 0.0 else 0
        for k in range(m):
            d = -x - offdiag_sq[k] / d
            if d == 0.0:
                d = -TINY
            if d < 0.0:
                cnt += 1
        ov[i] = cnt
    return out
