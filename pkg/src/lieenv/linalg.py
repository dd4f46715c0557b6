"""Dense linear algebra over F_q on integer-code arrays.

Matrices are ``numpy.int64`` arrays of field codes. Prime fields go through
the row-reduction kernel in :mod:`lieenv.kernels`; extension fields use the
vectorised table arithmetic of :class:`~lieenv.gf.FieldSpec`.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .gf import FieldSpec


def _rref_generic(spec: FieldSpec, a: np.ndarray) -> list[int]:
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
        a[rank, col:] = spec.vmul(a[rank, col:], spec.inv(int(a[rank, col])))
        rows = np.flatnonzero(a[:, col])
        rows = rows[rows != rank]
        if rows.size:
            corr = spec.vmul(a[rows, col][:, None], a[rank, col:][None, :])
            a[np.ix_(rows, np.arange(col, ncols))] = spec.vsub(a[rows, col:], corr)
        pivots.append(col)
        rank += 1
    return pivots


def rref(spec: FieldSpec, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form; returns the nonzero rows and their pivot columns."""
    a = np.array(m, dtype=np.int64, copy=True, order="C")
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros((0, a.shape[1]), dtype=np.int64), []
    if spec.is_prime_field:
        pivots = kernels.rref_modp(a, spec.p)
    else:
        pivots = _rref_generic(spec, a)
    return a[: len(pivots)].copy(), list(pivots)


def rank(spec: FieldSpec, m: np.ndarray) -> int:
    return len(rref(spec, m)[1])


def row_space(spec: FieldSpec, rows: np.ndarray) -> np.ndarray:
    return rref(spec, rows)[0]


def null_space(spec: FieldSpec, m: np.ndarray) -> np.ndarray:
    """Reduced-echelon basis (as rows) of ``{v : m @ v = 0}``."""
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[1]
    r, pivots = rref(spec, m)
    free = [j for j in range(n) if j not in set(pivots)]
    if not free:
        return np.zeros((0, n), dtype=np.int64)
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, j in enumerate(free):
        basis[t, j] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = spec.neg(int(r[i, j]))
    return row_space(spec, basis)


def shift(spec: FieldSpec, m: np.ndarray, lam: int) -> np.ndarray:
    """``m - lam * I`` for a square matrix."""
    out = np.array(m, dtype=np.int64, copy=True)
    idx = np.arange(out.shape[0])
    out[idx, idx] = spec.vsub(out[idx, idx], np.int64(lam))
    return out


def eigenspace(spec: FieldSpec, m: np.ndarray, lam: int) -> np.ndarray:
    return null_space(spec, shift(spec, m, lam))


def reduce_vector(spec: FieldSpec, basis: np.ndarray, pivots: list[int], v: np.ndarray) -> np.ndarray:
    """Remainder of ``v`` after clearing the pivot columns of an RREF ``basis``."""
    v = np.array(v, dtype=np.int64, copy=True)
    for row, pc in zip(basis, pivots):
        c = int(v[pc])
        if c:
            v = spec.vsub(v, spec.vmul(row, c))
    return v


def pivots_of(basis: np.ndarray) -> list[int]:
    """Pivot columns of a matrix already in reduced row-echelon form."""
    return [int(np.flatnonzero(row)[0]) for row in basis]


def in_span(spec: FieldSpec, basis: np.ndarray, v: np.ndarray) -> bool:
    return not reduce_vector(spec, basis, pivots_of(basis), v).any()


def spans_equal(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> bool:
    ra, rb = row_space(spec, a), row_space(spec, b)
    return ra.shape == rb.shape and bool((ra == rb).all())


def stack(rows_list, ncols: int) -> np.ndarray:
    parts = [np.asarray(r, dtype=np.int64).reshape(-1, ncols) for r in rows_list]
    if not parts:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.vstack(parts)


def inverse(spec: FieldSpec, m: np.ndarray) -> np.ndarray:
    n = m.shape[0]
    aug = np.hstack([np.asarray(m, dtype=np.int64), np.eye(n, dtype=np.int64)])
    r, piv = rref(spec, aug)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return r[:, n:].copy()
