"""Seeded property suites for the enveloping-algebra kernel.

Each suite draws random solvable algebras and random elements, checks an
identity exactly, and returns a :class:`SuiteResult` listing any failures.
The suites back both ``lieenv selftest`` and the test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .env import EnvElement, ad_apply, env_commutator, env_embed, env_mul, iterate_ad
from .gf import FieldSpec
from .liealg import LieAlgebra, bracket, derived_algebra
from .randalg import cyclic_extension, random_decomposition, random_element, random_lievec, scrambled
from .stability import Decomposition, ValidatorReport, validate_all

FIELDS = (FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(3, 2, (1, 0, 1)))


@dataclass
class SuiteResult:
    name: str
    samples: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _algebra(rng: np.random.Generator, max_dim: int = 4) -> LieAlgebra:
    f = FIELDS[int(rng.integers(0, len(FIELDS)))]
    dim = int(rng.integers(2, max_dim + 1))
    return random_decomposition(f, dim, rng, scramble=bool(rng.integers(0, 2)))[0]


def _run(name: str, samples: int, seed: int, check: Callable[[np.random.Generator], str | None]) -> SuiteResult:
    rng = np.random.default_rng(seed)
    res = SuiteResult(name, samples)
    for _ in range(samples):
        msg = check(rng)
        if msg:
            res.failures.append(msg)
    return res


def associativity(samples: int = 100, seed: int = 0) -> SuiteResult:
    def check(rng):
        L = _algebra(rng)
        a, b, c = (random_element(L, 2, rng, 3) for _ in range(3))
        if env_mul(env_mul(a, b), c) != env_mul(a, env_mul(b, c)):
            return f"(ab)c != a(bc) for a={a}, b={b}, c={c} in {L.names}"
    return _run("associativity", samples, seed, check)


def degree_additivity(samples: int = 100, seed: int = 0) -> SuiteResult:
    def check(rng):
        L = _algebra(rng)
        a, b = random_element(L, 3, rng), random_element(L, 3, rng)
        if a.is_zero() or b.is_zero():
            return None
        ab = env_mul(a, b)
        if ab.degree() != a.degree() + b.degree():
            return f"deg({a} * {b}) = {ab.degree()}"
    return _run("degree_additivity", samples, seed, check)


def derivation_law(samples: int = 100, seed: int = 0) -> SuiteResult:
    """``[h, ab] = [h, a] b + a [h, b]``, and ``ad h`` agrees with the commutator in U(L)."""
    def check(rng):
        L = _algebra(rng)
        h = random_lievec(L, rng)
        a, b = random_element(L, 2, rng), random_element(L, 2, rng)
        lhs = ad_apply(h, env_mul(a, b))
        rhs = env_mul(ad_apply(h, a), b) + env_mul(a, ad_apply(h, b))
        if lhs != rhs:
            return f"Leibniz rule fails for h={h}, a={a}, b={b}"
        if ad_apply(h, a) != env_commutator(env_embed(h), a):
            return f"ad h disagrees with h*a - a*h for h={h}, a={a}"
    return _run("derivation_law", samples, seed, check)


def representation_law(samples: int = 100, seed: int = 0) -> SuiteResult:
    """``ad [g, h] = ad g ad h - ad h ad g``."""
    def check(rng):
        L = _algebra(rng)
        g, h = random_lievec(L, rng), random_lievec(L, rng)
        a = random_element(L, 3, rng)
        lhs = ad_apply(bracket(g, h), a)
        rhs = ad_apply(g, ad_apply(h, a)) - ad_apply(h, ad_apply(g, a))
        if lhs != rhs:
            return f"ad[g,h] != [ad g, ad h] for g={g}, h={h}, a={a}"
    return _run("representation_law", samples, seed, check)


def frobenius_ad(samples: int = 100, seed: int = 0) -> SuiteResult:
    """``(ad h)^p a = [h^p, a]``."""
    def check(rng):
        L = _algebra(rng, 3)
        p = L.field.p
        h = random_lievec(L, rng)
        a = random_element(L, 2, rng, 3)
        if iterate_ad(h, a, p) != env_commutator(env_embed(h) ** p, a):
            return f"(ad h)^p != ad(h^p) for h={h}, a={a}"
    return _run("frobenius_ad", samples, seed, check)


def _commutative_product(spec: FieldSpec, a: dict, b: dict) -> dict:
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            c = spec.add(out.get(m, 0), spec.mul(ca, cb))
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def abelian_oracle(samples: int = 100, seed: int = 0) -> SuiteResult:
    """On an abelian algebra U(L) is a polynomial ring; compare with a direct product."""
    def check(rng):
        f = FIELDS[int(rng.integers(0, len(FIELDS)))]
        n = int(rng.integers(1, 5))
        L = LieAlgebra(f, [f"a{i}" for i in range(n)], np.zeros((n, n, n), dtype=np.int64))
        a, b = random_element(L, 3, rng), random_element(L, 3, rng)
        if env_mul(a, b) != EnvElement(L, _commutative_product(f, a.terms, b.terms)):
            return f"product disagrees with the polynomial oracle for a={a}, b={b}"
    return _run("abelian_oracle", samples, seed, check)


SUITES = {
    "associativity": associativity,
    "degree_additivity": degree_additivity,
    "derivation_law": derivation_law,
    "representation_law": representation_law,
    "frobenius_ad": frobenius_ad,
    "abelian_oracle": abelian_oracle,
}


def run_all(samples: int = 100, seed: int = 0) -> list[SuiteResult]:
    return [fn(samples, seed) for fn in SUITES.values()]


@dataclass
class SweepResult:
    samples: int
    degree: int
    checked: dict[str, int] = field(default_factory=dict)
    violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, reports: dict[str, ValidatorReport]) -> None:
        for name, rep in reports.items():
            if rep.hypothesis_met:
                self.checked[name] = self.checked.get(name, 0) + 1
            self.violations.extend(rep.violations)


def validator_sweep(samples: int = 200, seed: int = 0, max_dim: int = 5, degree: int = 3,
                    fields=(FieldSpec(2), FieldSpec(3), FieldSpec(5))) -> SweepResult:
    """Run every stability validator on random solvable algebras and on the cyclic family.

    Most samples use a codimension-one ideal; every fourth uses ``[L, L]``
    with a coordinate complement, exercising the higher-codimension paths.
    """
    rng = np.random.default_rng(seed)
    res = SweepResult(samples, degree)
    for t in range(samples):
        f = fields[t % len(fields)]
        dim = int(rng.integers(2, max_dim + 1))
        L, H, x = random_decomposition(f, dim, rng, scramble=bool(rng.integers(0, 2)))
        dec = Decomposition(L, H, x)
        if t % 4 == 3:
            D = derived_algebra(L.full())
            if D.dim < L.n:
                dec = Decomposition.standard(L, D)
        res.record(validate_all(dec, degree, strict=False))
    for p in (2, 3):
        L, H, x = cyclic_extension(FieldSpec(p))
        res.record(validate_all(Decomposition(L, H, x), degree, strict=False))
        res.record(validate_all(Decomposition(*scrambled(L, H, x, rng)), degree, strict=False))
    return res
