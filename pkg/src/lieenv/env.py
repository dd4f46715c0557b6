"""Exact arithmetic in the universal enveloping algebra U(L) on the PBW basis.

A PBW monomial is the exponent tuple ``(a_0, ..., a_{n-1})`` standing for
``b_0^a_0 ... b_{n-1}^a_{n-1}`` in the algebra's basis order. Products are
brought to normal form by straightening: an out-of-order pair is rewritten
with ``b_j b_i = b_i b_j + [b_j, b_i]``.

Left multiplication of a generator into a monomial and the action of a
derivation on a monomial are memoised per algebra. The memo tables only
ever gain entries whose values are fully determined by their keys, so
concurrent readers see consistent results.
"""

from __future__ import annotations

from typing import Iterable, Sequence
from weakref import WeakKeyDictionary

from .gf import FieldScalar
from .liealg import LieAlgebra, LieAlgebraError, LieVec

Monomial = tuple  # exponent tuple


class _PBW:
    """Straightening tables for one Lie algebra."""

    def __init__(self, alg: LieAlgebra):
        self.alg = alg
        self.f = alg.field
        self.n = alg.n
        self.left_memo: dict[tuple[int, Monomial], dict] = {}
        self.der_memo: dict[tuple, dict[Monomial, dict]] = {}

    @staticmethod
    def first_index(m: Monomial) -> int:
        for i, a in enumerate(m):
            if a:
                return i
        return len(m)

    def _acc(self, out: dict, terms: dict, c: int) -> None:
        f = self.f
        for mon, v in terms.items():
            v = f.mul(v, c) if c != 1 else v
            old = out.get(mon)
            if old is None:
                out[mon] = v
            else:
                s = f.add(old, v)
                if s:
                    out[mon] = s
                else:
                    del out[mon]

    def left_mono(self, g: int, m: Monomial) -> dict:
        """``b_g * m`` in normal form. The returned dict must not be mutated."""
        key = (g, m)
        hit = self.left_memo.get(key)
        if hit is not None:
            return hit
        i = self.first_index(m)
        if g <= i:
            res = {m[:g] + (m[g] + 1,) + m[g + 1 :]: 1}
        else:
            # b_g b_i m1 = b_i (b_g m1) + [b_g, b_i] m1
            m1 = m[:i] + (m[i] - 1,) + m[i + 1 :]
            res: dict = {}
            for mon, c in self.left_mono(g, m1).items():
                self._acc(res, self.left_mono(i, mon), c)
            for k, c in self.alg.bracket_terms[g][i]:
                self._acc(res, self.left_mono(k, m1), c)
        self.left_memo[key] = res
        return res

    def left_elem(self, g: int, terms: dict) -> dict:
        out: dict = {}
        for mon, c in terms.items():
            self._acc(out, self.left_mono(g, mon), c)
        return out

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for mon, c in a.items():
            part = b
            for g in range(self.n - 1, -1, -1):
                for _ in range(mon[g]):
                    part = self.left_elem(g, part)
            self._acc(out, part, c)
        return out

    def der_mono(self, dterms: tuple, m: Monomial) -> dict:
        """Apply the derivation with ``D(b_i) = sum(c * b_k for k, c in dterms[i])``."""
        memo = self.der_memo.setdefault(dterms, {})
        hit = memo.get(m)
        if hit is not None:
            return hit
        i = self.first_index(m)
        res: dict = {}
        if i < self.n:
            # D(b_i m1) = D(b_i) m1 + b_i D(m1)
            m1 = m[:i] + (m[i] - 1,) + m[i + 1 :]
            for k, c in dterms[i]:
                self._acc(res, self.left_mono(k, m1), c)
            self._acc(res, self.left_elem(i, self.der_mono(dterms, m1)), 1)
        memo[m] = res
        return res

    def der(self, dterms: tuple, terms: dict) -> dict:
        out: dict = {}
        for mon, c in terms.items():
            self._acc(out, self.der_mono(dterms, mon), c)
        return out


_tables: "WeakKeyDictionary[LieAlgebra, _PBW]" = WeakKeyDictionary()


def pbw(alg: LieAlgebra) -> _PBW:
    t = _tables.get(alg)
    if t is None:
        t = _tables[alg] = _PBW(alg)
    return t


def _sort_key(mon: Monomial):
    return (-sum(mon), tuple(-a for a in mon))


class EnvElement:
    """Element of U(L): sparse map from PBW exponent tuples to nonzero field codes."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LieAlgebra, terms: dict | None = None):
        self.algebra = algebra
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # -- construction ------------------------------------------------------

    @classmethod
    def scalar(cls, algebra: LieAlgebra, c: int | FieldScalar = 1) -> "EnvElement":
        code = c.code if isinstance(c, FieldScalar) else algebra.field.from_int(c)
        return cls(algebra, {(0,) * algebra.n: code})

    @classmethod
    def monomial(cls, algebra: LieAlgebra, exps: Sequence[int], c: int = 1) -> "EnvElement":
        if len(exps) != algebra.n or any(e < 0 for e in exps):
            raise LieAlgebraError("bad exponent vector")
        return cls(algebra, {tuple(int(e) for e in exps): algebra.field.from_int(c)})

    @classmethod
    def generator(cls, algebra: LieAlgebra, name: str | int) -> "EnvElement":
        i = algebra.index(name) if isinstance(name, str) else name
        exps = [0] * algebra.n
        exps[i] = 1
        return cls(algebra, {tuple(exps): 1})

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "EnvElement") -> None:
        if not isinstance(other, EnvElement) or other.algebra is not self.algebra:
            raise LieAlgebraError("elements belong to different enveloping algebras")

    def _combine(self, other: "EnvElement", sign: int) -> "EnvElement":
        self._check(other)
        t = pbw(self.algebra)
        out = dict(self.terms)
        t._acc(out, other.terms, 1 if sign > 0 else self.algebra.field.neg(1))
        return EnvElement(self.algebra, out)

    def __add__(self, other):
        if isinstance(other, (int, FieldScalar)):
            other = EnvElement.scalar(self.algebra, other)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, FieldScalar)):
            other = EnvElement.scalar(self.algebra, other)
        return self._combine(other, -1)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self.scale_code(self.algebra.field.neg(1))

    def scale(self, c: int | FieldScalar) -> "EnvElement":
        """Multiply by an integer (read mod p) or a field scalar."""
        code = c.code if isinstance(c, FieldScalar) else self.algebra.field.from_int(c)
        return self.scale_code(code)

    def scale_code(self, code: int) -> "EnvElement":
        f = self.algebra.field
        if code == 0:
            return EnvElement(self.algebra)
        return EnvElement(self.algebra, {m: f.mul(v, code) for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, FieldScalar)):
            return self.scale(other)
        return env_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, FieldScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = EnvElement.scalar(self.algebra, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, FieldScalar)):
            other = EnvElement.scalar(self.algebra, other)
        return isinstance(other, EnvElement) and other.algebra is self.algebra and other.terms == self.terms

    def __hash__(self):
        return hash((id(self.algebra), frozenset(self.terms.items())))

    # -- inspection --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        return max((sum(m) for m in self.terms), default=None)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda mc: _sort_key(mc[0]))

    def leading(self) -> tuple[Monomial, int]:
        return self.sorted_terms()[0]

    def coefficient(self, exps: Sequence[int]) -> FieldScalar:
        return FieldScalar(self.algebra.field, self.terms.get(tuple(exps), 0))

    def __str__(self):
        if not self.terms:
            return "0"
        f, names = self.algebra.field, self.algebra.names
        parts = []
        for mon, c in self.sorted_terms():
            factors = [nm if a == 1 else f"{nm}^{a}" for nm, a in zip(names, mon) if a]
            if not factors:
                parts.append(f.format(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append("*".join([f.format(c)] + factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"EnvElement({self})"


def env_one(alg: LieAlgebra) -> EnvElement:
    return EnvElement.scalar(alg, 1)


def env_embed(a: LieVec) -> EnvElement:
    """The canonical inclusion L -> U(L)."""
    alg = a.algebra
    terms = {}
    for i, c in enumerate(a.coords):
        if c:
            exps = [0] * alg.n
            exps[i] = 1
            terms[tuple(exps)] = c
    return EnvElement(alg, terms)


def env_mul(a: EnvElement, b: EnvElement) -> EnvElement:
    a._check(b)
    return EnvElement(a.algebra, pbw(a.algebra).mul(a.terms, b.terms))


def env_commutator(a: EnvElement, b: EnvElement) -> EnvElement:
    return env_mul(a, b) - env_mul(b, a)


def env_degree(a: EnvElement) -> int | None:
    return a.degree()


def ad_terms(h: LieVec) -> tuple:
    """Sparse images ``[h, b_i]`` used as derivation data."""
    alg = h.algebra
    return tuple(
        tuple((k, int(c)) for k, c in enumerate(alg.bracket_coords(h.coords, alg.basis_vec(i).coords)) if c)
        for i in range(alg.n)
    )


def ad_apply(h: LieVec, a: EnvElement) -> EnvElement:
    """``[h, a]`` computed as a derivation over monomials.

    ``ad h`` is expanded into ``sum(h_j * ad b_j)`` so that the per-generator
    memo tables are shared between calls.
    """
    if h.algebra is not a.algebra:
        raise LieAlgebraError("Lie element and enveloping element belong to different algebras")
    alg = a.algebra
    t = pbw(alg)
    out: dict = {}
    for j, hj in enumerate(h.coords):
        if hj:
            t._acc(out, t.der(alg.bracket_terms[j], a.terms), hj)
    return EnvElement(alg, out)


def derivation_apply(alg: LieAlgebra, dterms: tuple, a: EnvElement) -> EnvElement:
    """Apply the derivation of U(L) extending ``b_i -> sum(c * b_k for k, c in dterms[i])``."""
    if a.algebra is not alg:
        raise LieAlgebraError("element belongs to a different algebra")
    return EnvElement(alg, pbw(alg).der(dterms, a.terms))


def env_map(a: EnvElement, images: Sequence[EnvElement]) -> EnvElement:
    """Image of ``a`` under the algebra map sending generator i to ``images[i]``."""
    if not images:
        raise ValueError("images must be nonempty")
    target = images[0].algebra
    out = EnvElement(target)
    for mon, c in a.sorted_terms():
        term = env_one(target)
        for i, e in enumerate(mon):
            if e:
                term = term * images[i] ** e
        out = out + term.scale_code(c)
    return out


def env_relabel(a: EnvElement, target: LieAlgebra, positions: Sequence[int]) -> EnvElement:
    """Re-index monomials into ``target`` when generator i maps to basis element ``positions[i]``.

    Only valid when ``positions`` is increasing and the map is a Lie
    homomorphism onto coordinate vectors, so PBW order is preserved.
    """
    n = target.n
    out = {}
    for mon, c in a.terms.items():
        exps = [0] * n
        for i, e in enumerate(mon):
            exps[positions[i]] = e
        out[tuple(exps)] = c
    return EnvElement(target, out)


def iterate_ad(h: LieVec, a: EnvElement, times: int) -> EnvElement:
    for _ in range(times):
        a = ad_apply(h, a)
    return a


def env_sum(elems: Iterable[EnvElement], alg: LieAlgebra) -> EnvElement:
    out = EnvElement(alg)
    for e in elems:
        out = out + e
    return out
