# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction over F_p."""

cimport cython
from libc.stdint cimport int64_t


cdef int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_modp(int64_t[:, ::1] a, int64_t p):
    """Reduce ``a`` in place to reduced row-echelon form mod ``p``.

    Entries must already lie in ``[0, p)``. Returns the pivot columns.
    """
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t rank = 0, col, r, c, piv
    cdef int64_t f, inv, tmp
    pivots = []
    for col in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for c in range(col, ncols):
                tmp = a[piv, c]
                a[piv, c] = a[rank, c]
                a[rank, c] = tmp
        f = a[rank, col]
        if f != 1:
            inv = _inv_mod(f, p)
            for c in range(col, ncols):
                a[rank, c] = (a[rank, c] * inv) % p
        for r in range(nrows):
            if r == rank:
                continue
            f = a[r, col]
            if f == 0:
                continue
            f = p - f
            for c in range(col, ncols):
                if a[rank, c] != 0:
                    a[r, c] = (a[r, c] + f * a[rank, c]) % p
        pivots.append(col)
        rank += 1
    return pivots
