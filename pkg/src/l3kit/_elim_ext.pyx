# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free elimination.

Same contract as ``l3kit._elim_py.row_echelon``. Matrices whose entries fit in
int64 are reduced in C with overflow-checked arithmetic; any overflow restarts
the reduction on Python integers, so results are always exact.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static inline int l3_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int l3_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int l3_mul_ovf(long long a, long long b, long long *r) nogil
    int l3_sub_ovf(long long a, long long b, long long *r) nogil


cdef long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef void _content_i64(long long *row, Py_ssize_t ncols) nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(ncols):
            row[j] = row[j] // g


cdef int _reduce_i64(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                     Py_ssize_t *pivots, Py_ssize_t *rank) nogil:
    """Return 1 on overflow, 0 on success."""
    cdef Py_ssize_t r = 0, c, p, i, j, k
    cdef long long prev = 1, piv, a, t1, t2, t
    cdef long long *prow
    cdef long long *row
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p * ncols + c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            for j in range(ncols):
                t = m[r * ncols + j]
                m[r * ncols + j] = m[p * ncols + j]
                m[p * ncols + j] = t
        prow = m + r * ncols
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = m + i * ncols
            a = row[c]
            for j in range(c + 1, ncols):
                if l3_mul_ovf(piv, row[j], &t1):
                    return 1
                if l3_mul_ovf(a, prow[j], &t2):
                    return 1
                if l3_sub_ovf(t1, t2, &t):
                    return 1
                row[j] = t // prev
            row[c] = 0
        prev = piv
        pivots[r] = c
        r += 1
    rank[0] = r

    for k in range(r - 1, -1, -1):
        prow = m + k * ncols
        _content_i64(prow, ncols)
        c = pivots[k]
        if prow[c] < 0:
            for j in range(ncols):
                prow[j] = -prow[j]
        piv = prow[c]
        for i in range(k):
            row = m + i * ncols
            a = row[c]
            if a:
                for j in range(ncols):
                    if l3_mul_ovf(piv, row[j], &t1):
                        return 1
                    if l3_mul_ovf(a, prow[j], &t2):
                        return 1
                    if l3_sub_ovf(t1, t2, &t):
                        return 1
                    row[j] = t
                _content_i64(row, ncols)
    return 0


cdef object _row_echelon_object(list rows, Py_ssize_t ncols):
    cdef list m = [list(row_in) for row_in in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, p, i, j, k
    cdef object prev = 1, piv, a, g
    cdef list prow, row
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and (<list>m[p])[c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        prow = <list>m[r]
        piv = prow[c]
        for i in range(r + 1, nrows):
            row = <list>m[i]
            a = row[c]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - a * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1

    m = m[:r]
    from math import gcd
    for k in range(r - 1, -1, -1):
        prow = <list>m[k]
        g = gcd(*prow)
        if g > 1:
            for j in range(ncols):
                prow[j] = prow[j] // g
        c = pivots[k]
        if prow[c] < 0:
            for j in range(ncols):
                prow[j] = -prow[j]
        piv = prow[c]
        for i in range(k):
            row = <list>m[i]
            a = row[c]
            if a:
                for j in range(ncols):
                    row[j] = piv * row[j] - a * prow[j]
                g = gcd(*row)
                if g > 1:
                    for j in range(ncols):
                        row[j] = row[j] // g
    return m, pivots


def row_echelon(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long *m
    cdef Py_ssize_t *pivots
    cdef int overflow
    cdef long long lo = -(1 << 62), hi = (1 << 62)
    if nrows == 0 or ncols == 0:
        return [], []
    fits = all(lo < v < hi for r in rows for v in r)
    if not fits:
        return _row_echelon_object(list(rows), ncols)
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    pivots = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if m == NULL or pivots == NULL:
        free(m)
        free(pivots)
        raise MemoryError()
    try:
        for i in range(nrows):
            r = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = r[j]
        with nogil:
            overflow = _reduce_i64(m, nrows, ncols, pivots, &rank)
        if overflow:
            return _row_echelon_object(list(rows), ncols)
        out = [[m[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        return out, [pivots[i] for i in range(rank)]
    finally:
        free(m)
        free(pivots)
