# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset kernels; same contract as ``_kernels_py`` restricted to int64 codes."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int lowbit_index(long long m) nogil:
    return __builtin_ctzll(m)


def build_table(W, int n, long long inf):
    cdef Py_ssize_t size = 1 << n
    cdef int64_t[:, :] Wa = np.ascontiguousarray(W, dtype=np.int64).reshape(n, n)
    T_arr = np.empty((size, n), dtype=np.int64)
    cdef int64_t[:, :] T = T_arr
    cdef Py_ssize_t mask, p
    cdef int a
    cdef long long low, c, q
    with nogil:
        for p in range(n):
            T[0, p] = inf
        for mask in range(1, size):
            low = mask & -mask
            a = lowbit_index(mask)
            for p in range(n):
                c = Wa[p, a]
                q = T[mask ^ low, p]
                T[mask, p] = c if c < q else q
    return T_arr


def hausdorff(T, int n, long long a, long long b, long long inf):
    cdef int64_t[:, :] t = T
    cdef long long h = 0, v, m, low
    with nogil:
        m = b
        while m:
            low = m & -m
            v = t[a, lowbit_index(m)]
            if v > h:
                h = v
            m ^= low
        m = a
        while m:
            low = m & -m
            v = t[b, lowbit_index(m)]
            if v > h:
                h = v
            m ^= low
    return inf if h >= inf else h


def hausdorff_row(T, int n, long long a, long long inf):
    cdef int64_t[:, :] t = T
    cdef Py_ssize_t size = 1 << n
    cdef cnp.ndarray[int64_t, ndim=1] row_arr = np.empty(size, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] far_arr = np.zeros(size, dtype=np.int64)
    cdef int64_t[:] row = row_arr
    cdef int64_t[:] far = far_arr
    cdef Py_ssize_t mask
    cdef int i
    cdef long long low, v, f, h
    with nogil:
        row[0] = inf
        for mask in range(1, size):
            low = mask & -mask
            v = t[a, lowbit_index(mask)]
            f = far[mask ^ low]
            far[mask] = v if v > f else f
            h = far[mask]
            for i in range(n):
                if (a >> i) & 1 and t[mask, i] > h:
                    h = t[mask, i]
            row[mask] = inf if h >= inf else h
    return row_arr.tolist()


def minplus(T, int n, cost, long long inf):
    cdef int64_t[:, :] t = T
    cdef Py_ssize_t size = 1 << n
    cdef cnp.ndarray[int64_t, ndim=1] cost_arr = np.asarray(cost, dtype=np.int64)
    cdef int64_t[:] cst = cost_arr
    # ascending (cost, mask), mask 0 excluded
    cdef cnp.ndarray[int64_t, ndim=1] order_arr = np.lexsort(
        (np.arange(1, size), cost_arr[1:])).astype(np.int64) + 1
    cdef int64_t[:] order = order_arr
    cdef cnp.ndarray[int64_t, ndim=1] vals_arr = np.empty(size, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] args_arr = np.zeros(size, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] far_arr = np.zeros(size, dtype=np.int64)
    cdef int64_t[:] vals = vals_arr
    cdef int64_t[:] args = args_arr
    cdef int64_t[:] far = far_arr
    cdef Py_ssize_t X, Y, k
    cdef int i
    cdef long long low, v, f, h, c, s, best, arg
    with nogil:
        vals[0] = inf
        args[0] = 0
        for X in range(1, size):
            for Y in range(1, size):
                low = Y & -Y
                v = t[X, lowbit_index(Y)]
                f = far[Y ^ low]
                far[Y] = v if v > f else f
            best = inf
            arg = 0
            for k in range(size - 1):
                Y = order[k]
                c = cst[Y]
                if c >= inf or c > best:
                    break
                h = far[Y]
                for i in range(n):
                    if (X >> i) & 1 and t[Y, i] > h:
                        h = t[Y, i]
                if h >= inf:
                    continue
                s = h + c
                if s < best or (s == best and Y < arg):
                    best = s
                    arg = Y
            if best >= inf:
                best = inf
                arg = 1
            vals[X] = best
            args[X] = arg
    return vals_arr.tolist(), args_arr.tolist()
