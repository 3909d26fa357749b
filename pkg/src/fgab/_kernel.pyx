# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction kernel.

Runs the same elimination as :mod:`fgab._kernel_py` on a C ``long long``
buffer. Every multiply/subtract is overflow-checked and values are kept
below 2**62 in magnitude; if that ever fails the whole reduction is redone
from the untouched input by the pure-Python kernel, so results are always
exact.
"""
from libc.stdlib cimport malloc, free

from fgab._kernel_py import hnf_rows as _hnf_rows_py

cdef extern from *:
    """
    static inline int fg_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int fg_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int fg_mul_ovf(long long a, long long b, long long *r) nogil
    int fg_sub_ovf(long long a, long long b, long long *r) nogil

cdef long long LIM = 4611686018427387904  # 2**62


cdef inline long long _floordiv(long long a, long long b) nogil:
    cdef long long q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef inline int _axpy(long long *dst, long long *src, long long q,
                      Py_ssize_t start, Py_ssize_t w) nogil:
    # dst[j] -= q * src[j]; returns 1 on overflow
    cdef Py_ssize_t j
    cdef long long t
    for j in range(start, w):
        if fg_mul_ovf(q, src[j], &t):
            return 1
        if fg_sub_ovf(dst[j], t, &t):
            return 1
        if t > LIM or t < -LIM:
            return 1
        dst[j] = t
    return 0


cdef int _reduce(long long *a, Py_ssize_t m, Py_ssize_t w, Py_ssize_t npiv,
                 Py_ssize_t *rank_out) nogil:
    cdef Py_ssize_t pr = 0, col, i, j, best
    cdef long long v, av, bv, p, q, t
    cdef bint done
    for col in range(npiv):
        if pr == m:
            break
        best = -1
        while True:
            best = -1
            bv = 0
            for i in range(pr, m):
                v = a[i * w + col]
                if v != 0:
                    av = v if v > 0 else -v
                    if best < 0 or av < bv:
                        best = i
                        bv = av
            if best < 0:
                break
            if best != pr:
                for j in range(col, w):
                    t = a[pr * w + j]
                    a[pr * w + j] = a[best * w + j]
                    a[best * w + j] = t
            p = a[pr * w + col]
            done = True
            for i in range(pr + 1, m):
                v = a[i * w + col]
                if v != 0:
                    q = _floordiv(v, p)
                    if q != 0:
                        if _axpy(a + i * w, a + pr * w, q, col, w):
                            return 1
                    if a[i * w + col] != 0:
                        done = False
            if done:
                break
        if best < 0:
            continue
        p = a[pr * w + col]
        if p < 0:
            for j in range(col, w):
                a[pr * w + j] = -a[pr * w + j]
            p = -p
        for i in range(pr):
            q = _floordiv(a[i * w + col], p)
            if q != 0:
                if _axpy(a + i * w, a + pr * w, q, col, w):
                    return 1
        pr += 1
    rank_out[0] = pr
    return 0


def hnf_rows(list rows, Py_ssize_t npiv):
    """Same contract as :func:`fgab._kernel_py.hnf_rows`."""
    cdef Py_ssize_t m = len(rows)
    if m == 0:
        return 0
    cdef Py_ssize_t w = len(rows[0])
    if w == 0:
        return 0
    cdef long long *a = <long long *> malloc(m * w * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    cdef Py_ssize_t i, j, rank = 0
    cdef long long x
    cdef int status
    try:
        for i in range(m):
            row = rows[i]
            for j in range(w):
                x = row[j]
                if x > LIM or x < -LIM:
                    raise OverflowError
                a[i * w + j] = x
    except OverflowError:
        free(a)
        return _hnf_rows_py(rows, npiv)
    with nogil:
        status = _reduce(a, m, w, npiv, &rank)
    if status:
        free(a)
        return _hnf_rows_py(rows, npiv)
    for i in range(m):
        rows[i] = [a[i * w + j] for j in range(w)]
    free(a)
    return rank
