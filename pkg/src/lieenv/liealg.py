"""Finite-dimensional Lie algebras given by structure constants over F_q."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .gf import FieldScalar, FieldSpec

EIGEN_SCAN_LIMIT = 1 << 16


class LieAlgebraError(ValueError):
    pass


class LieAlgebra:
    """Lie algebra with named basis ``b_0..b_{n-1}`` and ``[b_i, b_j] = sum_k sc[i, j, k] b_k``.

    ``sc`` holds field codes and is stored for both orientations of every pair.
    Construction does not validate; call :func:`validate`.
    """

    def __init__(self, field: FieldSpec, names: Sequence[str], sc):
        self.field = field
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise LieAlgebraError("basis names must be distinct")
        n = len(self.names)
        self.sc = np.asarray(sc, dtype=np.int64).reshape(n, n, n)
        self.sc.setflags(write=False)
        # sparse view for the enveloping-algebra kernels
        self.bracket_terms = tuple(
            tuple(tuple((k, int(c)) for k, c in enumerate(self.sc[i, j]) if c) for j in range(n))
            for i in range(n)
        )

    @classmethod
    def from_table(cls, field: FieldSpec, names: Sequence[str], table: dict) -> "LieAlgebra":
        """Build from one orientation per pair; ``table[(i, j)]`` is a coordinate sequence.

        The reversed orientation is filled by negation; omitted pairs are zero.
        """
        n = len(names)
        sc = np.zeros((n, n, n), dtype=np.int64)
        for (i, j), coords in table.items():
            vec = np.array([int(c) for c in coords], dtype=np.int64)
            if sc[i, j].any() or sc[j, i].any():
                raise LieAlgebraError(f"pair ({names[i]}, {names[j]}) given twice")
            sc[i, j] = vec
            if i != j:
                sc[j, i] = field.vneg(vec)
        return cls(field, names, sc)

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise LieAlgebraError(f"unknown basis element {name!r}") from None

    def basis_vec(self, i: int | str) -> "LieVec":
        if isinstance(i, str):
            i = self.index(i)
        coords = [0] * self.n
        coords[i] = 1
        return LieVec(self, tuple(coords))

    def vec(self, coords: Iterable[int]) -> "LieVec":
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.n:
            raise LieAlgebraError(f"expected {self.n} coordinates")
        return LieVec(self, coords)

    def zero(self) -> "LieVec":
        return LieVec(self, (0,) * self.n)

    def bracket_coords(self, a: Sequence[int], b: Sequence[int]) -> np.ndarray:
        f = self.field
        out = np.zeros(self.n, dtype=np.int64)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                c = f.mul(int(ai), int(bj))
                out = f.vadd(out, f.vmul(self.sc[i, j], c))
        return out

    def ad_matrix(self, a: "LieVec | int") -> np.ndarray:
        """Matrix of ``ad a``; column j holds the coordinates of ``[a, b_j]``."""
        if isinstance(a, int):
            return self.sc[a].T.copy()
        cols = [self.bracket_coords(a.coords, self.basis_vec(j).coords) for j in range(self.n)]
        return np.array(cols, dtype=np.int64).reshape(self.n, self.n).T.copy()

    def full(self) -> "Subspace":
        return Subspace.span(self, np.eye(self.n, dtype=np.int64))

    def span(self, vectors) -> "Subspace":
        return Subspace.span(self, vectors)

    def subspace_by_names(self, names: Iterable[str]) -> "Subspace":
        return Subspace.span(self, [self.basis_vec(nm).coords for nm in names])

    def restrict(self, S: "Subspace") -> "LieAlgebra":
        """The subalgebra ``S`` as a Lie algebra in its own echelon basis."""
        m = S.dim
        sc = np.zeros((m, m, m), dtype=np.int64)
        for a in range(m):
            for b in range(m):
                w = self.bracket_coords(S.basis[a], S.basis[b])
                sc[a, b] = S.coordinates(w)
        return LieAlgebra(self.field, S.basis_names(), sc)

    def __repr__(self):
        return f"LieAlgebra({self.field}, {list(self.names)})"


@dataclass(frozen=True, eq=False)
class LieVec:
    algebra: LieAlgebra
    coords: tuple[int, ...]

    def __eq__(self, other):
        return (
            isinstance(other, LieVec)
            and other.algebra is self.algebra
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash((id(self.algebra), self.coords))

    def _check(self, other):
        if not isinstance(other, LieVec) or other.algebra is not self.algebra:
            raise LieAlgebraError("vectors belong to different algebras")

    def __add__(self, other):
        self._check(other)
        f = self.algebra.field
        return LieVec(self.algebra, tuple(f.add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        f = self.algebra.field
        return LieVec(self.algebra, tuple(f.sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        f = self.algebra.field
        return LieVec(self.algebra, tuple(f.neg(a) for a in self.coords))

    def scale(self, c: int | FieldScalar) -> "LieVec":
        f = self.algebra.field
        code = c.code if isinstance(c, FieldScalar) else f.from_int(c)
        return LieVec(self.algebra, tuple(f.mul(code, a) for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def scalars(self) -> list[FieldScalar]:
        return [FieldScalar(self.algebra.field, c) for c in self.coords]

    def __str__(self):
        f = self.algebra.field
        parts = []
        for name, c in zip(self.algebra.names, self.coords):
            if c:
                parts.append(name if c == 1 else f"{f.format(c)}*{name}")
        return " + ".join(parts) or "0"


def bracket(a: LieVec, b: LieVec) -> LieVec:
    a._check(b)
    return LieVec(a.algebra, tuple(int(c) for c in a.algebra.bracket_coords(a.coords, b.coords)))


class Subspace:
    """Subspace of a Lie algebra, stored as a canonical reduced row-echelon basis."""

    def __init__(self, algebra: LieAlgebra, basis: np.ndarray, pivots: list[int]):
        self.algebra = algebra
        self.basis = basis
        self.pivots = pivots
        self.basis.setflags(write=False)

    @classmethod
    def span(cls, algebra: LieAlgebra, vectors) -> "Subspace":
        rows = [v.coords if isinstance(v, LieVec) else v for v in vectors]
        m = linalg.stack(rows, algebra.n)
        basis, pivots = linalg.rref(algebra.field, m)
        return cls(algebra, basis, pivots)

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def vectors(self) -> list[LieVec]:
        return [LieVec(self.algebra, tuple(int(c) for c in row)) for row in self.basis]

    def contains(self, v) -> bool:
        coords = v.coords if isinstance(v, LieVec) else v
        return not linalg.reduce_vector(self.algebra.field, self.basis, self.pivots, coords).any()

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in this basis; raises if ``v`` is outside."""
        coords = np.asarray(v.coords if isinstance(v, LieVec) else v, dtype=np.int64)
        if not self.contains(coords):
            raise LieAlgebraError("vector does not lie in the subspace")
        return coords[self.pivots].copy()

    def is_coordinate(self) -> bool:
        """True when every basis row is a standard basis vector."""
        return all(int(np.count_nonzero(row)) == 1 for row in self.basis)

    def basis_names(self) -> list[str]:
        names = []
        for t, row in enumerate(self.basis):
            nz = np.flatnonzero(row)
            if len(nz) == 1 and row[nz[0]] == 1:
                names.append(self.algebra.names[nz[0]])
            else:
                names.append(f"s{t + 1}")
        return names

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and other.algebra is self.algebra
            and self.basis.shape == other.basis.shape
            and bool((self.basis == other.basis).all())
        )

    def __hash__(self):
        return hash((id(self.algebra), self.basis.tobytes()))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.algebra, list(self.basis) + list(other.basis))

    def __repr__(self):
        return "span{" + ", ".join(str(v) for v in self.vectors()) + "}"


@dataclass
class ValidationReport:
    antisymmetry: list[tuple[str, str]] = field(default_factory=list)
    alternating: list[str] = field(default_factory=list)
    jacobi: list[tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.antisymmetry or self.alternating or self.jacobi)

    def messages(self) -> list[str]:
        out = [f"antisymmetry fails at ({a}, {b})" for a, b in self.antisymmetry]
        out += [f"[{a}, {a}] != 0" for a in self.alternating]
        out += [f"Jacobi identity fails at ({a}, {b}, {c})" for a, b, c in self.jacobi]
        return out


def validate(alg: LieAlgebra) -> ValidationReport:
    """Check alternation, antisymmetry and the Jacobi identity on basis triples."""
    f, n, names = alg.field, alg.n, alg.names
    rep = ValidationReport()
    for i in range(n):
        if alg.sc[i, i].any():
            rep.alternating.append(names[i])
        for j in range(i + 1, n):
            if (f.vadd(alg.sc[i, j], alg.sc[j, i]) != 0).any():
                rep.antisymmetry.append((names[i], names[j]))
    basis = [alg.basis_vec(i) for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        a, b, c = basis[i], basis[j], basis[k]
        res = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
        if not res.is_zero():
            rep.jacobi.append((names[i], names[j], names[k]))
    return rep


def bracket_spaces(A: Subspace, B: Subspace) -> Subspace:
    alg = A.algebra
    rows = [alg.bracket_coords(a, b) for a in A.basis for b in B.basis]
    return Subspace.span(alg, rows)


def is_subalgebra(S: Subspace) -> bool:
    return bracket_spaces(S, S) <= S


def derived_algebra(S: Subspace) -> Subspace:
    """``[S, S]``; ``S`` must be closed under the bracket."""
    D = bracket_spaces(S, S)
    if not D <= S:
        raise LieAlgebraError("subspace is not closed under the bracket")
    return D


def derived_series(S: Subspace) -> list[Subspace]:
    series = [S]
    while True:
        nxt = derived_algebra(series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def lower_central_series(S: Subspace) -> list[Subspace]:
    derived_algebra(S)  # closure check
    series = [S]
    while True:
        nxt = bracket_spaces(S, series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_nilpotent(S: Subspace) -> bool:
    return lower_central_series(S)[-1].dim == 0


def is_solvable(S: Subspace) -> bool:
    return derived_series(S)[-1].dim == 0


def is_ideal(S: Subspace, ambient: Subspace) -> bool:
    if not S <= ambient:
        raise LieAlgebraError("subspace is not contained in the ambient subalgebra")
    return bracket_spaces(ambient, S) <= S


def simultaneous_eigenspaces(spec: FieldSpec, mats: Sequence[np.ndarray], dim: int,
                             start: np.ndarray | None = None):
    """Common eigenspaces of the operators ``mats`` (acting on column vectors).

    Returns ``[(values, basis_rows), ...]`` with one entry per tuple of
    eigenvalues in F_q that has a nonzero common eigenspace, in scan order.
    ``start`` restricts the search to the row space of a given basis.
    """
    if spec.q > EIGEN_SCAN_LIMIT:
        raise LieAlgebraError(f"eigenvalue scan over {spec.q} elements exceeds {EIGEN_SCAN_LIMIT}")
    basis = np.eye(dim, dtype=np.int64) if start is None else np.asarray(start, dtype=np.int64)
    branches = [((), basis)]
    for M in mats:
        nxt = []
        M = np.asarray(M, dtype=np.int64)
        for values, B in branches:
            image = M.T.copy() if start is None and not values else spec.matmul(B, M.T)
            for lam in spec.elements():
                # rows c with c @ (image - lam B) == 0
                diff = spec.vsub(image, spec.vmul(B, lam))
                C = linalg.null_space(spec, diff.T)
                if C.shape[0]:
                    nxt.append((values + (lam,), linalg.row_space(spec, spec.matmul(C, B))))
        branches = nxt
    return branches


def quotient(alg: LieAlgebra, ideal: Subspace) -> tuple[LieAlgebra, list[int]]:
    """``alg / ideal`` on the standard basis vectors outside the ideal's pivots, in input order."""
    f = alg.field
    comp = [j for j in range(alg.n) if j not in set(ideal.pivots)]
    m = len(comp)
    sc = np.zeros((m, m, m), dtype=np.int64)
    for a, i in enumerate(comp):
        for b, j in enumerate(comp):
            w = linalg.reduce_vector(f, ideal.basis, ideal.pivots, alg.sc[i, j])
            sc[a, b] = w[comp]
    return LieAlgebra(f, [alg.names[j] for j in comp], sc), comp


def _lowest_pivot_eigenvector(alg: LieAlgebra) -> np.ndarray | None:
    mats = [alg.ad_matrix(i) for i in range(alg.n)]
    best = None
    for _, B in simultaneous_eigenspaces(alg.field, mats, alg.n):
        row = B[0]
        piv = int(np.flatnonzero(row)[0])
        if best is None or piv < best[0]:
            best = (piv, row)
    return None if best is None else best[1]


def completely_solvable_flag(alg: LieAlgebra) -> list[Subspace] | None:
    """A chain ``L = I_1 > ... > I_n`` of ideals with one-dimensional steps, or None.

    Built bottom-up: a common eigenvector of all ``ad b_j`` spans a
    one-dimensional ideal, then recurse on the quotient. Any such choice
    extends when a flag exists, so the greedy search is complete over F_q.
    """
    ascending = _flag_ascending(alg)
    if ascending is None:
        return None
    return [Subspace.span(alg, S.basis) for S in reversed(ascending)]


def _flag_ascending(alg: LieAlgebra) -> list[Subspace] | None:
    if alg.n == 0:
        return []
    v = _lowest_pivot_eigenvector(alg)
    if v is None:
        return None
    bottom = Subspace.span(alg, [v])
    Q, comp = quotient(alg, bottom)
    upper = _flag_ascending(Q)
    if upper is None:
        return None
    out = [bottom]
    for S in upper:
        lifted = np.zeros((S.dim, alg.n), dtype=np.int64)
        lifted[:, comp] = S.basis
        out.append(Subspace.span(alg, list(lifted) + list(bottom.basis)))
    return out


def change_basis(alg: LieAlgebra, P: np.ndarray, names: Sequence[str] | None = None) -> LieAlgebra:
    """Same algebra in the basis given by the columns of ``P`` (old coordinates)."""
    f = alg.field
    P = np.asarray(P, dtype=np.int64)
    Pinv = linalg.inverse(f, P)
    n = alg.n
    sc = np.zeros((n, n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            w = alg.bracket_coords(P[:, a], P[:, b])
            sc[a, b] = f.matmul(Pinv, w.reshape(n, 1)).ravel()
    return LieAlgebra(f, names or [f"f{i}" for i in range(n)], sc)
