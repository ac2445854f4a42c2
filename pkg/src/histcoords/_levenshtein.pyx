# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Levenshtein distance (unit costs) over Unicode code points."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef Py_ssize_t _distance(str a, str b) except -1:
    cdef Py_ssize_t n = len(a), m = len(b), i, j
    cdef Py_ssize_t prev_diag, tmp, best
    cdef Py_UCS4 ca
    if n < m:
        a, b = b, a
        n, m = m, n
    if m == 0:
        return n
    cdef Py_UCS4* bs = <Py_UCS4*> PyMem_Malloc(m * sizeof(Py_UCS4))
    cdef Py_ssize_t* row = <Py_ssize_t*> PyMem_Malloc((m + 1) * sizeof(Py_ssize_t))
    if bs == NULL or row == NULL:
        PyMem_Free(bs)
        PyMem_Free(row)
        raise MemoryError()
    try:
        for j in range(m):
            bs[j] = b[j]
        for j in range(m + 1):
            row[j] = j
        for i in range(1, n + 1):
            ca = a[i - 1]
            prev_diag = row[0]
            row[0] = i
            for j in range(1, m + 1):
                tmp = row[j]
                best = prev_diag + (ca != bs[j - 1])
                if row[j] + 1 < best:
                    best = row[j] + 1
                if row[j - 1] + 1 < best:
                    best = row[j - 1] + 1
                row[j] = best
                prev_diag = tmp
        return row[m]
    finally:
        PyMem_Free(bs)
        PyMem_Free(row)


def distance(str a, str b):
    return _distance(a, b)


def distances(list golds, list preds):
    if len(golds) != len(preds):
        raise ValueError("golds and preds differ in length")
    cdef Py_ssize_t k
    return [_distance(golds[k], preds[k]) for k in range(len(golds))]
