# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled alias-table kernels; see _alias_py for the reference semantics."""

import numpy as np

cimport numpy as cnp


def build_tables(const double[::1] probs):
    """Vose O(K) construction of the (prob, alias) tables."""
    cdef Py_ssize_t k = probs.shape[0]
    prob_arr = np.empty(k, dtype=np.float64)
    alias_arr = np.zeros(k, dtype=np.int64)
    small_arr = np.empty(k, dtype=np.int64)
    large_arr = np.empty(k, dtype=np.int64)
    scaled_arr = np.empty(k, dtype=np.float64)
    cdef double[::1] prob = prob_arr
    cdef cnp.int64_t[::1] alias = alias_arr
    cdef cnp.int64_t[::1] small = small_arr
    cdef cnp.int64_t[::1] large = large_arr
    cdef double[::1] scaled = scaled_arr
    cdef Py_ssize_t ns = 0, nl = 0, i, s, l
    for i in range(k):
        scaled[i] = probs[i] * k
        if scaled[i] < 1.0:
            small[ns] = i
            ns += 1
        else:
            large[nl] = i
            nl += 1
    while ns > 0 and nl > 0:
        ns -= 1
        s = small[ns]
        nl -= 1
        l = large[nl]
        prob[s] = scaled[s]
        alias[s] = l
        scaled[l] = (scaled[l] + scaled[s]) - 1.0
        if scaled[l] < 1.0:
            small[ns] = l
            ns += 1
        else:
            large[nl] = l
            nl += 1
    while nl > 0:
        nl -= 1
        prob[large[nl]] = 1.0
    while ns > 0:
        ns -= 1
        prob[small[ns]] = 1.0
    return prob_arr, alias_arr


def draw_into(const double[::1] prob, const cnp.int64_t[::1] alias,
              const double[::1] u_cat, const double[::1] u_mix,
              cnp.int64_t[::1] counts):
    """Accumulate category counts for one batch of uniform pairs."""
    cdef Py_ssize_t k = prob.shape[0]
    cdef Py_ssize_t m = u_cat.shape[0]
    cdef Py_ssize_t i, j
    for i in range(m):
        j = <Py_ssize_t>(u_cat[i] * k)
        if j >= k:
            j = k - 1
        if u_mix[i] < prob[j]:
            counts[j] += 1
        else:
            counts[alias[j]] += 1
