"""``lieenv`` command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 a mathematical check failed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .env import EnvElement
from .fileformat import (
    AlgebraFile,
    AlgebraFileError,
    AlgebraValidationError,
    parse_algebra_file,
    parse_linear,
    serialize_algebra_file,
)
from .gf import FieldError
from .liealg import (
    LieAlgebra,
    LieAlgebraError,
    Subspace,
    completely_solvable_flag,
    derived_series,
    is_ideal,
    is_nilpotent,
    is_solvable,
    lower_central_series,
    validate,
)
from .properties import run_all, validator_sweep
from .reproduce import FIXTURES, fixture_text, run_checklist
from .stability import Decomposition, stability_report, validate_all
from .weights import WindowError, center_basis, check_product_semiinvariance, enumerate_weights

EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 1, 2

_value = {"oneOf": [{"type": "integer"}, {"type": "array", "items": {"type": "integer"}}]}
_values = {"type": "object", "additionalProperties": _value}
_validator = {
    "oneOf": [
        {"type": "null"},
        {
            "type": "object",
            "required": ["hypothesis_met", "holds", "violations"],
            "properties": {
                "hypothesis_met": {"type": "boolean"},
                "holds": {"type": "boolean"},
                "violations": {"type": "array", "items": {"type": "object"}},
            },
        },
    ]
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["command", "algebra_digest", "field", "degree", "weights", "stability", "validators", "notes"],
    "properties": {
        "command": {"type": "string"},
        "algebra_digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
        "field": {
            "type": "object",
            "required": ["p", "k"],
            "properties": {"p": {"type": "integer"}, "k": {"type": "integer"}},
        },
        "degree": {"type": ["integer", "null"]},
        "weights": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["values", "dim", "basis"],
                "properties": {
                    "values": _values,
                    "dim": {"type": "integer", "minimum": 1},
                    "basis": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
        "stability": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["values", "stable", "witness"],
                "properties": {
                    "values": _values,
                    "stable": {"type": "boolean"},
                    "witness": {"type": ["object", "null"]},
                },
            },
        },
        "validators": {
            "type": "object",
            "properties": {
                k: _validator
                for k in ("weight_stability", "semicenter_stability", "nilpotent_derived", "derived_vanishing")
            },
            "additionalProperties": False,
        },
        "notes": {"type": "array", "items": {"type": "string"}},
        "details": {"type": "object"},
    },
}


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    algebra_digest: str
    field: dict
    degree: int | None = None
    weights: list[dict] = field(default_factory=list)
    stability: list[dict] = field(default_factory=list)
    validators: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK
    text: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "algebra_digest": self.algebra_digest,
            "field": self.field,
            "degree": self.degree,
            "weights": self.weights,
            "stability": self.stability,
            "validators": self.validators,
            "notes": self.notes,
            "details": self.details,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = list(self.text)
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


# -- helpers ---------------------------------------------------------------------


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _load(path: str, check: bool = True) -> tuple[AlgebraFile, LieAlgebra, RunReport]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    af = parse_algebra_file(text, check=check)
    alg = af.algebra()
    rep = RunReport("", _digest(serialize_algebra_file(af)), {"p": af.field.p, "k": af.field.k})
    return af, alg, rep


def _subspace(af: AlgebraFile, alg: LieAlgebra, name: str) -> Subspace:
    try:
        return af.subspace(alg, name)
    except AlgebraFileError:
        pass
    try:
        return Subspace.span(alg, [parse_linear(s, alg.field, alg.names) for s in name.split(",")])
    except AlgebraFileError as e:
        raise UsageError(f"unknown subspace {name!r}: {e}") from None


def _ideal(af: AlgebraFile, alg: LieAlgebra, name: str) -> Subspace:
    H = _subspace(af, alg, name)
    if not is_ideal(H, alg.full()):
        raise UsageError(f"{name} is not an ideal of L")
    return H


def _element(af: AlgebraFile, alg: LieAlgebra, text: str) -> EnvElement:
    try:
        return af.element(alg, text)
    except AlgebraFileError as e:
        raise UsageError(f"bad element {text!r}: {e}") from None


def _weight_rows(reports) -> list[dict]:
    return [{"values": r.weight.as_dict(), "dim": r.dim, "basis": [str(b) for b in r.basis]} for r in reports]


def _span_text(S: Subspace) -> str:
    return "span{" + ", ".join(str(v) for v in S.vectors()) + "}" if S.dim else "0"


# -- commands --------------------------------------------------------------------


def cmd_validate(args) -> RunReport:
    af, alg, rep = _load(args.file, check=False)
    v = validate(alg)
    rep.details = {
        "dimension": alg.n,
        "antisymmetry_failures": [list(t) for t in v.antisymmetry],
        "alternating_failures": list(v.alternating),
        "jacobi_failures": [list(t) for t in v.jacobi],
    }
    rep.notes = v.messages()
    rep.text = [f"{alg.n}-dimensional algebra over F_{alg.field.q}: " + ("valid" if v.ok else "INVALID")]
    rep.exit_code = EXIT_OK if v.ok else EXIT_MATH
    return rep


def cmd_series(args) -> RunReport:
    af, alg, rep = _load(args.file)
    S = _subspace(af, alg, args.subspace)
    try:
        ds, lcs = derived_series(S), lower_central_series(S)
    except LieAlgebraError as e:
        raise UsageError(str(e)) from None
    rep.details = {
        "derived_series": [[str(v) for v in T.vectors()] for T in ds],
        "lower_central_series": [[str(v) for v in T.vectors()] for T in lcs],
        "solvable": is_solvable(S),
        "nilpotent": is_nilpotent(S),
    }
    rep.text = ["derived series:"] + [f"  {T.dim}: {_span_text(T)}" for T in ds]
    rep.text += ["lower central series:"] + [f"  {T.dim}: {_span_text(T)}" for T in lcs]
    rep.text.append(f"solvable: {rep.details['solvable']}, nilpotent: {rep.details['nilpotent']}")
    return rep


def _locate_elements(af: AlgebraFile, alg: LieAlgebra, reports, names) -> list[str]:
    notes = []
    for nm in names:
        a = _element(af, alg, nm)
        if a.degree() is not None and a.degree() > reports[0].degree:
            notes.append(f"{nm} has degree {a.degree()}, beyond the window")
            continue
        hits = [r for r in reports if not a.is_zero() and r.contains(a)]
        where = f"lies in weight ({hits[0].weight})" if hits else "is not a semi-invariant of this window"
        notes.append(f"{nm} {where}")
    return notes


def cmd_weights(args) -> RunReport:
    af, alg, rep = _load(args.file)
    H = _ideal(af, alg, args.ideal)
    reports = enumerate_weights(H, args.degree)
    rep.degree = args.degree
    rep.weights = _weight_rows(reports)
    rep.notes = _locate_elements(af, alg, reports, args.element or list(af.elements))
    rep.text = [f"U({args.ideal}) up to degree {args.degree}: {len(reports)} weight(s), window {len(reports[0].window)}"]
    for r in reports:
        rep.text.append(f"weight ({r.weight}) dim {r.dim}")
        rep.text += [f"  {b}" for b in r.basis]
    return rep


def cmd_center(args) -> RunReport:
    af, alg, rep = _load(args.file)
    H = _ideal(af, alg, args.ideal)
    r = center_basis(H, args.degree)
    rep.degree = args.degree
    rep.weights = _weight_rows([r])
    rep.text = [f"center of U({args.ideal}) up to degree {args.degree}: dim {r.dim}"]
    rep.text += [f"  {b}" for b in r.basis]
    return rep


def _complement(af: AlgebraFile, alg: LieAlgebra, H: Subspace, name: str | None) -> Decomposition:
    if name is None:
        return Decomposition.standard(alg, H)
    if name in af.subspaces:
        vecs = [alg.vec(v) for v in af.subspaces[name]]
    else:
        try:
            vecs = [alg.vec(parse_linear(s, alg.field, alg.names)) for s in name.split(",")]
        except AlgebraFileError as e:
            raise UsageError(f"bad complement {name!r}: {e}") from None
    try:
        return Decomposition(alg, H, vecs)
    except LieAlgebraError as e:
        raise UsageError(str(e)) from None


def cmd_stability(args) -> RunReport:
    af, alg, rep = _load(args.file)
    H = _ideal(af, alg, args.ideal)
    dec = _complement(af, alg, H, args.complement)
    sr = stability_report(dec, args.degree)
    reports = enumerate_weights(H, args.degree)
    rep.degree = args.degree
    rep.weights = _weight_rows(reports)
    rep.stability = [{"values": r["values"], "stable": r["stable"], "witness": r["witness"]} for r in sr.rows()]
    vals = validate_all(dec, args.degree, strict=False)
    rep.validators = {k: (vals[k].as_dict() if k in vals else None)
                      for k in ("weight_stability", "semicenter_stability", "nilpotent_derived", "derived_vanishing")}
    rep.details = {"semicenter_stable": sr.semicenter_stable, "codimension": dec.codimension}
    rep.text = [f"ad-stability of U({args.ideal}) weight spaces up to degree {args.degree}"]
    for v in sr.verdicts:
        line = f"weight ({v.weight}): " + ("stable" if v.stable else "NOT stable")
        if v.witness:
            w = v.witness
            line += f"; [{w.direction}, {w.element}] has component {w.offending} outside"
        rep.text.append(line)
    rep.text.append(f"semicenter window stable: {sr.semicenter_stable}")
    for k, r in vals.items():
        rep.text.append(f"validator {k}: " + ("holds" if r.holds else "VIOLATED") +
                        ("" if r.hypothesis_met else " (hypothesis not met)"))
    if any(not r.holds for r in vals.values()):
        rep.exit_code = EXIT_MATH
        rep.notes.append("a validator was violated; counterexample bundles are under validators")
    return rep


def cmd_check_product(args) -> RunReport:
    af, alg, rep = _load(args.file)
    S = _subspace(af, alg, args.subspace)
    a, b = _element(af, alg, args.left), _element(af, alg, args.right)
    if a.is_zero() or b.is_zero():
        raise UsageError("factors must be nonzero")
    pc = check_product_semiinvariance(a, b, S)

    def show(w):
        return None if w is None else w.as_dict()

    rep.details = {
        "product": str(a * b),
        "product_weight": show(pc.product),
        "left_weight": show(pc.left),
        "right_weight": show(pc.right),
        "condition_holds": pc.holds,
    }
    rep.text = [f"product: {a * b}"]
    for label, w in (("product", pc.product), ("left", pc.left), ("right", pc.right)):
        rep.text.append(f"{label}: " + ("not semi-invariant" if w is None else f"weight ({w})"))
    rep.text.append("semi-invariant product forces semi-invariant factors here: " + str(pc.holds))
    return rep


def cmd_flag(args) -> RunReport:
    af, alg, rep = _load(args.file)
    flag = completely_solvable_flag(alg)
    rep.details = {
        "completely_solvable": flag is not None,
        "flag": None if flag is None else [[str(v) for v in S.vectors()] for S in flag],
    }
    if flag is None:
        rep.text = [f"no flag of ideals with one-dimensional steps over F_{alg.field.q}"]
    else:
        rep.text = ["flag of ideals:"] + [f"  {S.dim}: {_span_text(S)}" for S in flag]
    return rep


def cmd_reproduce(args) -> RunReport:
    cl = run_checklist(args.degree, args.field_ext)
    digest = _digest("".join(fixture_text(n) for n in FIXTURES))
    rep = RunReport("reproduce-paper", digest, {"p": 3, "k": 2 if args.field_ext else 1}, args.degree)
    rep.notes = list(cl.notes)
    rep.details = {
        "checks": [{"criterion": c.criterion, "name": c.name, "passed": c.passed, "detail": c.detail}
                   for c in cl.checks],
        "passed": sum(c.passed for c in cl.checks),
        "failed": sum(not c.passed for c in cl.checks),
    }
    rep.text = [f"[{'PASS' if c.passed else 'FAIL'}] {c.criterion}: {c.name}" for c in cl.checks]
    for c in cl.checks:
        if not c.passed:
            rep.text.append(f"counterexample for '{c.name}': {json.dumps(c.detail, ensure_ascii=False)}")
    rep.exit_code = EXIT_OK if cl.ok else EXIT_MATH
    return rep


def cmd_selftest(args) -> RunReport:
    suites = run_all(args.samples, args.seed)
    sweep = validator_sweep(args.samples, args.seed, degree=args.degree)
    rep = RunReport("selftest", _digest(f"selftest:{args.seed}:{args.samples}"), {"p": 0, "k": 0}, args.degree)
    rep.details = {
        "seed": args.seed,
        "suites": {s.name: {"samples": s.samples, "failures": s.failures} for s in suites},
        "validator_runs": sweep.checked,
        "violations": sweep.violations,
    }
    rep.text = [f"{s.name}: {s.samples} samples, " + ("ok" if s.ok else f"{len(s.failures)} FAILED") for s in suites]
    rep.text.append(f"validators on {args.samples} random algebras plus the cyclic family: "
                    + ("ok" if sweep.ok else f"{len(sweep.violations)} violation(s)"))
    for v in sweep.violations:
        rep.text.append(f"  {v['note']}: p={v['field']['p']}, basis {', '.join(v['basis'])}, "
                        f"ideal {v['ideal']}, complement {v['complement']}, degree {v['degree']}")
        rep.text.extend(f"    {k} = {w}" for k, w in v["brackets"].items())
    if not sweep.ok or not all(s.ok for s in suites):
        rep.exit_code = EXIT_MATH
    return rep


# -- entry point -----------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")

    ap = _Parser(prog="lieenv", description="Weight spaces and ad-stability in enveloping algebras over F_q.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, file=True):
        p = sub.add_parser(name, parents=[common], help=help_)
        if file:
            p.add_argument("file", help="algebra definition (.alg)")
        p.set_defaults(fn=fn)
        return p

    add("validate", cmd_validate, "check the Lie axioms")
    p = add("series", cmd_series, "derived and lower central series")
    p.add_argument("--subspace", default="L")
    for name, fn, h in (("weights", cmd_weights, "weight spaces of U(H) in a degree window"),
                        ("center", cmd_center, "center of U(H) in a degree window")):
        p = add(name, fn, h)
        p.add_argument("--ideal", required=True)
        p.add_argument("--degree", type=int, required=True)
        if name == "weights":
            p.add_argument("--element", action="append", help="report which weight space holds it")
    p = add("stability", cmd_stability, "ad-stability of the weight spaces of U(H)")
    p.add_argument("--ideal", required=True)
    p.add_argument("--complement", help="basis element, subspace name or comma-separated vectors")
    p.add_argument("--degree", type=int, required=True)
    p = add("check-product", cmd_check_product, "is a semi-invariant product made of semi-invariants?")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--subspace", default="L")
    add("flag", cmd_flag, "search for a flag of ideals with one-dimensional steps")
    p = add("reproduce-paper", cmd_reproduce, "run the worked-example checklist", file=False)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--field-ext", action="store_true", help="also run over F_9")
    p = add("selftest", cmd_selftest, "seeded property suites and validator sweep", file=False)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--degree", type=int, default=3)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:  # --help, --version and usage errors
        return int(e.code or 0)
    if getattr(args, "degree", None) is not None and args.degree < 0:
        print("lieenv: error: --degree must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        rep = args.fn(args)
    except AlgebraValidationError as e:
        print(f"lieenv: invalid algebra: {e}", file=sys.stderr)
        return EXIT_MATH
    except (AlgebraFileError, FieldError, UsageError, WindowError) as e:
        print(f"lieenv: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LieAlgebraError as e:
        print(f"lieenv: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    rep.command = args.command
    print(rep.to_json() if args.output == "json" else rep.to_text())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
