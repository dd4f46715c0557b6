"""Pure-Python (numpy) row reduction over F_p; same contract as the compiled kernel."""

import numpy as np


def rref_modp(a: np.ndarray, p: int) -> list[int]:
    """Reduce ``a`` in place to reduced row-echelon form mod ``p``.

    Entries must already lie in ``[0, p)``. Returns the pivot columns.
    """
    nrows, ncols = a.shape
    pivots = []
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        nz = np.flatnonzero(a[rank:, col])
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv], col:] = a[[piv, rank], col:]
        f = int(a[rank, col])
        if f != 1:
            a[rank, col:] = a[rank, col:] * pow(f, p - 2, p) % p
        rows = np.flatnonzero(a[:, col])
        rows = rows[rows != rank]
        if rows.size:
            a[np.ix_(rows, np.arange(col, ncols))] = (
                a[rows, col:] - np.outer(a[rows, col], a[rank, col:])
            ) % p
        pivots.append(col)
        rank += 1
    return pivots
