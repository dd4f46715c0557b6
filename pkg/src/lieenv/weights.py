"""Weight spaces, center and semicenter of U(S) inside finite degree windows.

For a subalgebra S of L, the window ``U(S)_{<=d}`` is spanned by the PBW
monomials of total degree at most d in the echelon basis of S. The adjoint
action of any element normalising S is a derivation that never raises
degree, so every weight space computed inside the window is exact for that
window.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Sequence

import numpy as np

from . import linalg
from .env import EnvElement, ad_apply, env_embed, env_map, env_mul, env_one, env_relabel, pbw
from .liealg import LieAlgebra, LieAlgebraError, LieVec, Subspace, bracket_spaces, simultaneous_eigenspaces

DEFAULT_WINDOW_CAP = 20_000


class WindowError(LieAlgebraError):
    """A window is too large or an operator does not preserve it."""


def window_cap() -> int:
    return int(os.environ.get("LIEENV_WINDOW_CAP", DEFAULT_WINDOW_CAP))


def graded_monomials(m: int, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree <= d in m variables, graded then lex descending."""
    out = []
    for deg in range(d + 1):
        out.extend(_compositions(m, deg))
    return out


def _compositions(m: int, deg: int):
    if m == 0:
        if deg == 0:
            yield ()
        return
    for first in range(deg, -1, -1):
        for rest in _compositions(m - 1, deg - first):
            yield (first,) + rest


class FilteredBasis:
    """PBW monomials of degree <= d over the echelon basis of a subalgebra."""

    def __init__(self, subalgebra: Subspace, degree: int, cap: int | None = None):
        if degree < 0:
            raise WindowError("degree must be nonnegative")
        m = subalgebra.dim
        size = comb(degree + m, m)
        cap = window_cap() if cap is None else cap
        if size > cap:
            raise WindowError(f"window of {size} monomials exceeds the cap of {cap}")
        self.subalgebra = subalgebra
        self.degree = degree
        self.algebra = subalgebra.algebra.restrict(subalgebra)
        self.monomials = graded_monomials(m, degree)
        self.index = {mon: t for t, mon in enumerate(self.monomials)}
        self._operators: dict[tuple, np.ndarray] = {}

    def __len__(self):
        return len(self.monomials)

    @property
    def ambient(self) -> LieAlgebra:
        return self.subalgebra.algebra

    # -- moving between U(S) and U(L) --------------------------------------

    def local_coords(self, a: EnvElement) -> np.ndarray:
        """Coordinates of an element of the local algebra U(S)."""
        v = np.zeros(len(self), dtype=np.int64)
        for mon, c in a.terms.items():
            t = self.index.get(mon)
            if t is None:
                raise WindowError("element leaves the degree window")
            v[t] = c
        return v

    def local_element(self, coords) -> EnvElement:
        return EnvElement(self.algebra, {self.monomials[t]: int(c) for t, c in enumerate(coords) if c})

    def to_ambient(self, a: EnvElement) -> EnvElement:
        S = self.subalgebra
        if S.is_coordinate():
            return env_relabel(a, self.ambient, S.pivots)
        return env_map(a, [env_embed(v) for v in S.vectors()])

    def element(self, coords) -> EnvElement:
        """The ambient element of U(L) with the given window coordinates."""
        return self.to_ambient(self.local_element(coords))

    def coords(self, a: EnvElement) -> np.ndarray:
        """Window coordinates of an element of U(L) lying in ``U(S)_{<=d}``."""
        if a.algebra is self.algebra:
            return self.local_coords(a)
        S = self.subalgebra
        if S.is_coordinate():
            piv = S.pivots
            others = [j for j in range(self.ambient.n) if j not in set(piv)]
            local = {}
            for mon, c in a.terms.items():
                if any(mon[j] for j in others):
                    raise WindowError("element does not lie in U(S)")
                local[tuple(mon[j] for j in piv)] = c
            return self.local_coords(EnvElement(self.algebra, local))
        return self._solve_general(a)

    def _solve_general(self, a: EnvElement) -> np.ndarray:
        cols, images = self._ambient_images
        f = self.ambient.field
        rhs = np.zeros(len(cols), dtype=np.int64)
        for mon, c in a.terms.items():
            if mon not in cols:
                raise WindowError("element does not lie in U(S) within the window")
            rhs[cols[mon]] = c
        # solve images^T x = rhs via rref of the augmented system
        aug = np.hstack([images.T, rhs[:, None]])
        r, piv = linalg.rref(f, aug)
        if piv and piv[-1] == len(self):
            raise WindowError("element does not lie in U(S) within the window")
        x = np.zeros(len(self), dtype=np.int64)
        for i, pc in enumerate(piv):
            x[pc] = r[i, -1]
        return x

    @cached_property
    def _ambient_images(self):
        elems = [self.to_ambient(EnvElement(self.algebra, {mon: 1})) for mon in self.monomials]
        cols: dict = {}
        for e in elems:
            for mon in e.terms:
                cols.setdefault(mon, len(cols))
        images = np.zeros((len(elems), len(cols)), dtype=np.int64)
        for t, e in enumerate(elems):
            for mon, c in e.terms.items():
                images[t, cols[mon]] = c
        return cols, images

    # -- operators -----------------------------------------------------------

    def derivation_terms(self, h: LieVec) -> tuple:
        """``ad h`` restricted to S, as sparse images of the local generators."""
        S = self.subalgebra
        amb = self.ambient
        out = []
        for row in S.basis:
            w = amb.bracket_coords(h.coords, row)
            if not S.contains(w):
                raise WindowError(f"{h} does not normalise the subalgebra")
            coords = S.coordinates(w)
            out.append(tuple((k, int(c)) for k, c in enumerate(coords) if c))
        return tuple(out)

    def operator_matrix(self, h: LieVec) -> np.ndarray:
        """Column j holds the window coordinates of ``[h, monomial_j]``."""
        cached = self._operators.get(h.coords)
        if cached is not None:
            return cached
        dterms = self.derivation_terms(h)
        N = len(self)
        M = np.zeros((N, N), dtype=np.int64)
        t = pbw(self.algebra)
        for j, mon in enumerate(self.monomials):
            for out_mon, c in t.der_mono(dterms, mon).items():
                i = self.index.get(out_mon)
                if i is None:
                    raise WindowError("operator output escapes the degree window")
                M[i, j] = c
        M.setflags(write=False)
        self._operators[h.coords] = M
        return M

    def apply(self, h: LieVec, rows: np.ndarray) -> np.ndarray:
        """``ad h`` applied to each coordinate row."""
        M = self.operator_matrix(h)
        return self.ambient.field.matmul(np.asarray(rows, dtype=np.int64), M.T)


def operator_matrix(h: LieVec, fb: FilteredBasis) -> np.ndarray:
    return fb.operator_matrix(h)


def null_space(fb_or_field, M: np.ndarray) -> np.ndarray:
    spec = fb_or_field.ambient.field if isinstance(fb_or_field, FilteredBasis) else fb_or_field
    return linalg.null_space(spec, M)


def eigenspace(spec, M: np.ndarray, lam: int) -> np.ndarray:
    return linalg.eigenspace(spec, M, lam)


@dataclass(frozen=True, eq=False)
class Weight:
    """Linear form on S given by its values (field codes) on S's echelon basis."""

    subspace: Subspace
    values: tuple[int, ...]

    def __eq__(self, other):
        return isinstance(other, Weight) and other.subspace == self.subspace and other.values == self.values

    def __hash__(self):
        return hash(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __call__(self, v: LieVec | Sequence[int]) -> int:
        """Value on an element of S."""
        S = self.subspace
        coords = S.coordinates(v)
        f = S.algebra.field
        out = 0
        for c, val in zip(coords, self.values):
            out = f.add(out, f.mul(int(c), val))
        return out

    def __add__(self, other: "Weight") -> "Weight":
        f = self.subspace.algebra.field
        return Weight(self.subspace, tuple(f.add(a, b) for a, b in zip(self.values, other.values)))

    def as_dict(self) -> dict:
        f = self.subspace.algebra.field
        names = self.subspace.basis_names()
        return {nm: (v if f.is_prime_field else list(f.decode(v))) for nm, v in zip(names, self.values)}

    def __str__(self):
        f = self.subspace.algebra.field
        return ", ".join(f"{nm}:{f.format(v)}" for nm, v in zip(self.subspace.basis_names(), self.values))


@dataclass(eq=False)
class WeightSpaceReport:
    weight: Weight
    degree: int
    coords: np.ndarray  # RREF rows in window coordinates
    window: FilteredBasis = field(repr=False)

    @property
    def dim(self) -> int:
        return self.coords.shape[0]

    @cached_property
    def basis(self) -> list[EnvElement]:
        return [self.window.element(row) for row in self.coords]

    def contains(self, a: EnvElement) -> bool:
        try:
            v = self.window.coords(a)
        except WindowError:
            return False
        return linalg.in_span(self.window.ambient.field, self.coords, v)


def _check_weight_consistency(S: Subspace, rpt: WeightSpaceReport) -> None:
    D = bracket_spaces(S, S)
    for row in D.basis:
        if rpt.weight(row) != 0:
            raise AssertionError(f"weight {rpt.weight} does not vanish on [S, S]")


def enumerate_weights(S: Subspace, d: int, cap: int | None = None,
                      window: FilteredBasis | None = None) -> list[WeightSpaceReport]:
    """All F_q-rational weights with a nonzero weight space inside ``U(S)_{<=d}``.

    Eigenvalues of the first generator are found by scanning the field; each
    surviving eigenspace is intersected with the eigenspaces of the next
    generator, and empty branches are pruned.
    """
    fb = window or FilteredBasis(S, d, cap)
    spec = S.algebra.field
    mats = [fb.operator_matrix(v) for v in S.vectors()]
    reports = []
    for values, rows in simultaneous_eigenspaces(spec, mats, len(fb)):
        reports.append(WeightSpaceReport(Weight(S, tuple(values)), d, rows, fb))
    for rpt in reports:
        _check_weight_consistency(S, rpt)
    total = sum(r.dim for r in reports)
    if reports and linalg.rank(spec, np.vstack([r.coords for r in reports])) != total:
        raise AssertionError("weight spaces are not independent")
    return reports


def center_basis(S: Subspace, d: int, cap: int | None = None) -> WeightSpaceReport:
    for rpt in enumerate_weights(S, d, cap):
        if rpt.weight.is_zero():
            return rpt
    raise AssertionError("the scalars must lie in the weight-0 space")


def semicenter_basis(S: Subspace, d: int, cap: int | None = None) -> list[WeightSpaceReport]:
    return enumerate_weights(S, d, cap)


def semicenter_rows(reports: Sequence[WeightSpaceReport]) -> np.ndarray:
    return np.vstack([r.coords for r in reports])


def is_semiinvariant(a: EnvElement, S: Subspace) -> Weight | None:
    """The weight of ``a`` for the adjoint action of S, or None if ``a`` is not semi-invariant."""
    if a.is_zero():
        raise ValueError("zero is not a semi-invariant")
    f = a.algebra.field
    lead, lc = a.leading()
    inv = f.inv(lc)
    values = []
    for h in S.vectors():
        image = ad_apply(h, a)
        lam = f.mul(image.terms.get(lead, 0), inv)
        if image != a.scale_code(lam):
            return None
        values.append(lam)
    return Weight(S, tuple(values))


@dataclass
class ProductCheck:
    product: Weight | None
    left: Weight | None
    right: Weight | None

    @property
    def holds(self) -> bool:
        """Whether 'product semi-invariant implies both factors semi-invariant' holds here."""
        return self.product is None or (self.left is not None and self.right is not None)


def check_product_semiinvariance(a: EnvElement, b: EnvElement, S: Subspace) -> ProductCheck:
    return ProductCheck(is_semiinvariant(env_mul(a, b), S), is_semiinvariant(a, S), is_semiinvariant(b, S))


@dataclass
class GenerationCheck:
    equal: bool
    generated_dim: int
    target_dim: int


def products_up_to_degree(gens: Sequence[EnvElement], d: int) -> list[EnvElement]:
    """All words in ``gens`` (including the empty word) of filtration degree <= d."""
    if not gens:
        return []
    alg = gens[0].algebra
    gens = [g for g in gens if g.degree() and g.degree() > 0]
    words = [(env_one(alg), 0)]
    frontier = list(words)
    while frontier:
        nxt = []
        for w, deg in frontier:
            for g in gens:
                nd = deg + g.degree()
                if nd <= d:
                    nxt.append((env_mul(w, g), nd))
        words.extend(nxt)
        frontier = nxt
    return [w for w, _ in words]


def verify_generation_at_degree(gens: Sequence[EnvElement], S: Subspace, target: str | Weight,
                                d: int, cap: int | None = None) -> GenerationCheck:
    """Compare the span of products of ``gens`` with a computed window.

    ``target`` is ``"center"``, ``"all"`` (the semicenter) or a specific Weight.
    """
    for g in gens:
        if not g.is_zero() and is_semiinvariant(g, S) is None:
            raise ValueError(f"generator {g} is not semi-invariant")
    reports = enumerate_weights(S, d, cap)
    fb = reports[0].window
    if target == "center":
        chosen = [r for r in reports if r.weight.is_zero()]
    elif target == "all":
        chosen = reports
    else:
        chosen = [r for r in reports if r.weight == target]
    spec = S.algebra.field
    target_rows = semicenter_rows(chosen) if chosen else np.zeros((0, len(fb)), dtype=np.int64)
    rows = [fb.coords(w) for w in products_up_to_degree(list(gens), d)]
    gen_rows = linalg.stack(rows, len(fb))
    gdim = linalg.rank(spec, gen_rows)
    tdim = linalg.rank(spec, target_rows)
    both = linalg.rank(spec, np.vstack([gen_rows, target_rows]))
    return GenerationCheck(gdim == tdim == both, gdim, tdim)
