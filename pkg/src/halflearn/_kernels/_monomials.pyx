# cython: language_level=3, boundscheck=False, wraparound=False
# cython: initializedcheck=False, cdivision=True
"""Compiled monomial chain kernel; see halflearn._kernels for the contract."""

import numpy as np


def chain_sums(const double[:, ::1] points, const Py_ssize_t[::1] parents,
               const Py_ssize_t[::1] coords):
    cdef Py_ssize_t n = points.shape[0]
    cdef Py_ssize_t m = parents.shape[0]
    vals_arr = np.empty(m, dtype=np.float64)
    sums_arr = np.zeros(m, dtype=np.float64)
    comp_arr = np.zeros(m, dtype=np.float64)
    cdef double[::1] vals = vals_arr
    cdef double[::1] sums = sums_arr
    cdef double[::1] comp = comp_arr
    cdef Py_ssize_t i, j, p
    cdef double prod, y, t
    for i in range(n):
        for j in range(m):
            p = parents[j]
            prod = points[i, coords[j]]
            if p >= 0:
                prod *= vals[p]
            vals[j] = prod
            # Kahan compensation: sums stay accurate over 1e7+ rows.
            y = prod - comp[j]
            t = sums[j] + y
            comp[j] = (t - sums[j]) - y
            sums[j] = t
    return sums_arr
