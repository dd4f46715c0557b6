"""Adjoint stability of weight spaces and of the semicenter of U(H), H an ideal of L.

Verdicts are per degree window: ``ad x`` preserves ``U(H)_{<=d}``, so each
verdict is exact for the window it names and nothing is claimed beyond it.

The validators cross-check four equivalences on computed data:

* ``weight_stability``: for H of codimension one, ``U(H)_lam`` is ad-x stable
  exactly when ``lam`` vanishes on ``[L, L]``.
* ``semicenter_stability``: the semicenter window is ad-x stable exactly when
  every weight space is.
* ``nilpotent_derived``: if ``[L, L]`` is nilpotent, every weight space is stable.
* ``derived_vanishing``: with ``[L, L] <= H``, the semicenter is ad-L stable
  exactly when every realised weight vanishes on ``[L, L]``. This can fail when
  H has codimension above one: a bracket of two complement vectors may land
  outside the kernel of a weight while every weight space stays stable. Its
  report also records whether the weights vanish on ``[L, H]``.

In strict mode a violation raises :class:`ValidatorViolation` carrying a
serialisable counterexample bundle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg
from .env import EnvElement
from .liealg import (
    LieAlgebra,
    LieAlgebraError,
    LieVec,
    Subspace,
    bracket,
    derived_algebra,
    is_ideal,
    is_nilpotent,
)
from .weights import Weight, WeightSpaceReport, enumerate_weights, semicenter_rows


class ValidatorViolation(AssertionError):
    def __init__(self, message: str, bundle: dict):
        super().__init__(message)
        self.bundle = bundle


@dataclass(eq=False)
class Decomposition:
    """``L = span(complement) + H`` with H an ideal of L."""

    L: LieAlgebra
    H: Subspace
    complement: tuple[LieVec, ...]

    def __init__(self, L: LieAlgebra, H: Subspace, x: LieVec | Sequence[LieVec]):
        self.L, self.H = L, H
        self.complement = (x,) if isinstance(x, LieVec) else tuple(x)
        full = L.full()
        if not is_ideal(H, full):
            raise LieAlgebraError("H is not an ideal of L")
        for v in self.complement:
            if H.contains(v):
                raise LieAlgebraError(f"{v} lies in H")
        if (H + Subspace.span(L, self.complement)).dim != L.n:
            raise LieAlgebraError("complement and H do not span L")

    @classmethod
    def standard(cls, L: LieAlgebra, H: Subspace) -> "Decomposition":
        """Complement made of the standard basis vectors outside H's pivots."""
        comp = [L.basis_vec(j) for j in range(L.n) if j not in set(H.pivots)]
        return cls(L, H, comp)

    @property
    def codimension(self) -> int:
        return self.L.n - self.H.dim

    def derived(self) -> Subspace:
        return derived_algebra(self.L.full())


@dataclass
class Witness:
    element: EnvElement
    image: EnvElement
    offending: EnvElement
    direction: LieVec

    def as_dict(self) -> dict:
        return {
            "direction": str(self.direction),
            "element": str(self.element),
            "image": str(self.image),
            "outside_component": str(self.offending),
        }


@dataclass
class Verdict:
    weight: Weight
    stable: bool
    witness: Witness | None = None


def is_stable(dec: Decomposition, rpt: WeightSpaceReport) -> Verdict:
    """Does ``ad x`` map the weight space into itself, for every complement vector x?"""
    fb = rpt.window
    if fb.subalgebra != dec.H:
        raise LieAlgebraError("report was computed for a different ideal")
    spec = dec.L.field
    piv = linalg.pivots_of(rpt.coords)
    for x in dec.complement:
        images = fb.apply(x, rpt.coords)
        for row, img in zip(rpt.coords, images):
            rem = linalg.reduce_vector(spec, rpt.coords, piv, img)
            if rem.any():
                w = Witness(fb.element(row), fb.element(img), fb.element(rem), x)
                return Verdict(rpt.weight, False, w)
    return Verdict(rpt.weight, True)


def semicenter_window_stable(dec: Decomposition, reports: Sequence[WeightSpaceReport]) -> bool:
    """ad-x stability of the whole semicenter window, checked directly on its span."""
    fb = reports[0].window
    spec = dec.L.field
    rows = linalg.row_space(spec, semicenter_rows(reports))
    piv = linalg.pivots_of(rows)
    for x in dec.complement:
        for img in fb.apply(x, rows):
            if linalg.reduce_vector(spec, rows, piv, img).any():
                return False
    return True


def lambda_on_derived(dec: Decomposition, lam: Weight) -> bool:
    """True iff the weight vanishes on ``[L, L]``; requires ``[L, L] <= H``."""
    D = dec.derived()
    if not D <= dec.H:
        raise LieAlgebraError("[L, L] is not contained in H")
    return all(lam(row) == 0 for row in D.basis)


def lambda_on_bracket_with_H(dec: Decomposition, lam: Weight) -> bool:
    """True iff the weight vanishes on ``[L, H]``, which omits brackets between complement vectors."""
    L = dec.L
    rows = [bracket(x, h).coords for x in dec.complement for h in dec.H.vectors()]
    return all(lam(r) == 0 for r in rows)


@dataclass
class StabilityReport:
    degree: int
    verdicts: list[Verdict]
    semicenter_stable: bool
    lambda_on_derived_zero: list[bool | None]
    theorem_checks: dict[str, bool | None] = field(default_factory=dict)

    def rows(self) -> list[dict]:
        out = []
        for v, lz in zip(self.verdicts, self.lambda_on_derived_zero):
            out.append(
                {
                    "values": v.weight.as_dict(),
                    "stable": v.stable,
                    "lambda_on_derived_zero": lz,
                    "witness": v.witness.as_dict() if v.witness else None,
                }
            )
        return out


def stability_report(dec: Decomposition, d: int, cap: int | None = None) -> StabilityReport:
    reports = enumerate_weights(dec.H, d, cap)
    verdicts = [is_stable(dec, r) for r in reports]
    contained = dec.derived() <= dec.H
    lz = [lambda_on_derived(dec, r.weight) if contained else None for r in reports]
    sc = semicenter_window_stable(dec, reports)
    checks: dict[str, bool | None] = {}
    if dec.codimension == 1:
        checks["weight_stability"] = all(v.stable == z for v, z in zip(verdicts, lz))
    else:
        checks["weight_stability"] = None
    checks["semicenter_stability"] = sc == all(v.stable for v in verdicts)
    checks["derived_vanishing"] = (sc == all(lz)) if contained else None
    return StabilityReport(d, verdicts, sc, lz, checks)


# -- validators ----------------------------------------------------------------


@dataclass
class ValidatorReport:
    name: str
    degree: int
    hypothesis_met: bool
    holds: bool
    details: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "hypothesis_met": self.hypothesis_met,
            "holds": self.holds,
            "violations": self.violations,
        }


def _bundle(dec: Decomposition, d: int, note: str, weight: Weight | None = None,
            witness: Witness | None = None) -> dict:
    L = dec.L
    table = {}
    for i in range(L.n):
        for j in range(i + 1, L.n):
            w = L.vec(L.sc[i, j])
            if not w.is_zero():
                table[f"{L.names[i]},{L.names[j]}"] = str(w)
    return {
        "note": note,
        "field": {"p": L.field.p, "k": L.field.k},
        "basis": list(L.names),
        "brackets": table,
        "ideal": [str(v) for v in dec.H.vectors()],
        "complement": [str(v) for v in dec.complement],
        "degree": d,
        "weight": weight.as_dict() if weight else None,
        "witness": witness.as_dict() if witness else None,
    }


def _finish(rep: ValidatorReport, dec: Decomposition, strict: bool) -> ValidatorReport:
    if strict and rep.violations:
        raise ValidatorViolation(f"{rep.name} violated", rep.violations[0])
    return rep


def validate_weight_stability(dec: Decomposition, d: int, strict: bool = True,
                              reports: Sequence[WeightSpaceReport] | None = None) -> ValidatorReport:
    """Per weight: stable under ad x iff the weight vanishes on ``[L, L]`` (H of codimension one)."""
    if dec.codimension != 1:
        raise LieAlgebraError("needs an ideal of codimension one")
    reports = reports or enumerate_weights(dec.H, d)
    rep = ValidatorReport("weight_stability", d, True, True)
    for r in reports:
        v = is_stable(dec, r)
        z = lambda_on_derived(dec, r.weight)
        rep.details.append({"values": r.weight.as_dict(), "stable": v.stable, "vanishes": z})
        if v.stable != z:
            rep.holds = False
            rep.violations.append(_bundle(dec, d, "stability and vanishing on [L,L] disagree", r.weight, v.witness))
    return _finish(rep, dec, strict)


def validate_semicenter_stability(dec: Decomposition, d: int, strict: bool = True,
                                  reports: Sequence[WeightSpaceReport] | None = None) -> ValidatorReport:
    """Semicenter window stable iff every weight space is stable."""
    reports = reports or enumerate_weights(dec.H, d)
    per_weight = all(is_stable(dec, r).stable for r in reports)
    whole = semicenter_window_stable(dec, reports)
    rep = ValidatorReport("semicenter_stability", d, True, per_weight == whole)
    rep.details.append({"semicenter_stable": whole, "all_weights_stable": per_weight})
    if not rep.holds:
        rep.violations.append(_bundle(dec, d, "semicenter verdict disagrees with per-weight verdicts"))
    return _finish(rep, dec, strict)


def validate_nilpotent_derived(dec: Decomposition, d: int, strict: bool = True,
                               reports: Sequence[WeightSpaceReport] | None = None) -> ValidatorReport:
    """If ``[L, L]`` is nilpotent then every weight space is stable; silent otherwise."""
    if not is_nilpotent(dec.derived()):
        return ValidatorReport("nilpotent_derived", d, False, True, [{"note": "hypothesis not met"}])
    reports = reports or enumerate_weights(dec.H, d)
    rep = ValidatorReport("nilpotent_derived", d, True, True)
    for r in reports:
        v = is_stable(dec, r)
        rep.details.append({"values": r.weight.as_dict(), "stable": v.stable})
        if not v.stable:
            rep.holds = False
            rep.violations.append(_bundle(dec, d, "unstable weight space with nilpotent [L,L]", r.weight, v.witness))
    return _finish(rep, dec, strict)


def validate_derived_vanishing(dec: Decomposition, d: int, strict: bool = True,
                               reports: Sequence[WeightSpaceReport] | None = None) -> ValidatorReport:
    """With ``[L, L] <= H``: semicenter ad-L stable iff all realised weights vanish on ``[L, L]``."""
    if not dec.derived() <= dec.H:
        raise LieAlgebraError("[L, L] is not contained in H")
    reports = reports or enumerate_weights(dec.H, d)
    whole = semicenter_window_stable(dec, reports)
    vanish = all(lambda_on_derived(dec, r.weight) for r in reports)
    vanish_LH = all(lambda_on_bracket_with_H(dec, r.weight) for r in reports)
    rep = ValidatorReport("derived_vanishing", d, True, whole == vanish)
    rep.details.append({"semicenter_stable": whole, "all_vanish": vanish, "all_vanish_on_LH": vanish_LH})
    if not rep.holds:
        b = _bundle(dec, d, "semicenter stability disagrees with vanishing on [L,L]")
        b["all_vanish_on_LH"] = vanish_LH
        rep.violations.append(b)
    return _finish(rep, dec, strict)


def validate_all(dec: Decomposition, d: int, strict: bool = True) -> dict[str, ValidatorReport]:
    reports = enumerate_weights(dec.H, d)
    out = {}
    if dec.codimension == 1:
        out["weight_stability"] = validate_weight_stability(dec, d, strict, reports)
    out["semicenter_stability"] = validate_semicenter_stability(dec, d, strict, reports)
    out["nilpotent_derived"] = validate_nilpotent_derived(dec, d, strict, reports)
    if dec.derived() <= dec.H:
        out["derived_vanishing"] = validate_derived_vanishing(dec, d, strict, reports)
    return out
