"""Random solvable Lie algebras for property checks.

Every algebra is built as an iterated semidirect product ``F x  ⋉_D  H``
with D a random derivation of a smaller random solvable algebra H, so
``span(b_1, ..., b_{n-1})`` is an ideal of codimension one and the
Jacobi identity holds by construction.
"""

from __future__ import annotations

import numpy as np

from . import linalg
from .env import EnvElement
from .gf import FieldSpec
from .liealg import LieAlgebra, LieVec, Subspace, change_basis


def derivation_space(alg: LieAlgebra) -> np.ndarray:
    """Basis (rows) of Der(alg); row r flattens the matrix ``D[k, a]`` with ``D(b_a) = sum_k D[k, a] b_k``."""
    f, m, c = alg.field, alg.n, alg.sc
    rows = []
    for a in range(m):
        for b in range(a + 1, m):
            for t in range(m):
                row = np.zeros(m * m, dtype=np.int64)
                for k in range(m):
                    # D([b_a, b_b])_t - [D b_a, b_b]_t - [b_a, D b_b]_t
                    row[t * m + k] = f.add(int(row[t * m + k]), int(c[a, b, k]))
                    row[k * m + a] = f.sub(int(row[k * m + a]), int(c[k, b, t]))
                    row[k * m + b] = f.sub(int(row[k * m + b]), int(c[a, k, t]))
                if row.any():
                    rows.append(row)
    if not rows:
        return np.eye(m * m, dtype=np.int64)
    return linalg.null_space(f, np.array(rows))


def random_derivation(alg: LieAlgebra, rng: np.random.Generator) -> np.ndarray:
    f = alg.field
    basis = derivation_space(alg)
    coeffs = rng.integers(0, f.q, size=basis.shape[0])
    D = np.zeros(alg.n * alg.n, dtype=np.int64)
    for c, row in zip(coeffs, basis):
        D = f.vadd(D, f.vmul(row, int(c)))
    return D.reshape(alg.n, alg.n)


def semidirect(H: LieAlgebra, D: np.ndarray, names=None) -> LieAlgebra:
    """``F x ⋉ H`` with ``[x, h] = D h``; x is basis element 0."""
    m = H.n
    n = m + 1
    sc = np.zeros((n, n, n), dtype=np.int64)
    sc[1:, 1:, 1:] = H.sc
    for a in range(m):
        sc[0, a + 1, 1:] = D[:, a]
        sc[a + 1, 0, 1:] = H.field.vneg(D[:, a])
    return LieAlgebra(H.field, names or [f"b{i}" for i in range(n)], sc)


def random_solvable_core(field: FieldSpec, dim: int, rng: np.random.Generator) -> LieAlgebra:
    if dim <= 1 or rng.random() < 0.15:
        return LieAlgebra(field, [f"b{i}" for i in range(dim)], np.zeros((dim, dim, dim), dtype=np.int64))
    H = random_solvable_core(field, dim - 1, rng)
    return semidirect(H, random_derivation(H, rng))


def random_decomposition(field: FieldSpec, dim: int, rng: np.random.Generator,
                         scramble: bool = False) -> tuple[LieAlgebra, Subspace, LieVec]:
    """A random solvable L of dimension ``dim`` with a codimension-one ideal H and x outside it.

    With ``scramble`` the basis is changed by a random invertible matrix, so H
    is in general not spanned by basis vectors.
    """
    if dim < 2:
        raise ValueError("need dim >= 2 for a codimension-one ideal")
    H0 = random_solvable_core(field, dim - 1, rng)
    L = semidirect(H0, random_derivation(H0, rng))
    H = Subspace.span(L, np.eye(dim, dtype=np.int64)[1:])
    x = L.basis_vec(0)
    if scramble:
        return scrambled(L, H, x, rng)
    return L, H, x


def random_element(alg: LieAlgebra, max_degree: int, rng: np.random.Generator, terms: int = 4) -> EnvElement:
    out = {}
    for _ in range(terms):
        deg = int(rng.integers(0, max_degree + 1))
        exps = [0] * alg.n
        for _ in range(deg):
            exps[int(rng.integers(0, alg.n))] += 1
        out[tuple(exps)] = int(rng.integers(1, alg.field.q))
    return EnvElement(alg, out)


def random_lievec(alg: LieAlgebra, rng: np.random.Generator) -> LieVec:
    return alg.vec(rng.integers(0, alg.field.q, size=alg.n))


def cyclic_extension(field: FieldSpec) -> tuple[LieAlgebra, Subspace, LieVec]:
    """``x, y`` acting on a p-dimensional abelian K: y cycles ``e_i -> e_{i-1}``, x scales ``e_i`` by ``i-1``.

    ``[x, y] = -y``. Here ``[L, L] = span(y) + K`` is not nilpotent, so weight
    spaces of ``U(span(y) + K)`` can fail to be ad-x stable.
    """
    p = field.p
    n = p + 2
    names = ["x", "y"] + [f"e{i}" for i in range(1, p + 1)]
    table = {(0, 1): [0, field.neg(1)] + [0] * p}
    for i in range(1, p + 1):
        e = 1 + i
        prev = 1 + (i - 2) % p + 1
        row = [0] * n
        row[prev] = 1
        table[(1, e)] = row
        if (i - 1) % p:
            row = [0] * n
            row[e] = (i - 1) % p
            table[(0, e)] = row
    L = LieAlgebra.from_table(field, names, table)
    H = Subspace.span(L, np.eye(n, dtype=np.int64)[1:])
    return L, H, L.basis_vec(0)


def scrambled(L: LieAlgebra, H: Subspace, x: LieVec, rng: np.random.Generator):
    """The same decomposition after a random change of basis."""
    f, n = L.field, L.n
    while True:
        P = rng.integers(0, f.q, size=(n, n))
        if linalg.rank(f, P) == n:
            break
    Pinv = linalg.inverse(f, P)
    L2 = change_basis(L, P, [f"b{i}" for i in range(n)])
    h_rows = f.matmul(Pinv, H.basis.T).T
    x2 = f.matmul(Pinv, np.array(x.coords).reshape(n, 1)).ravel()
    return L2, Subspace.span(L2, h_rows), L2.vec(x2)
