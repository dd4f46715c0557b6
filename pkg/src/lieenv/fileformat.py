"""Algebra definition files and element expressions.

A file is line oriented, ``#`` starts a comment, and sections are::

    [field]
    p = 3
    modulus = 2, 2, 1      # optional: monic, constant term first

    [basis]
    x, y, e1, e2, e3

    [brackets]
    x, y = 2*y             # omitted pairs are zero
    y, e1 = e3

    [subspaces]
    H = y, e1, e2, e3      # Lie-linear expressions

    [elements]
    u = e1 + e2 + e3       # expressions in U(L)

Expressions are sums of products ``coeff * name^exp * ...``; factors out of
PBW order are normalised by multiplication in U(L). In an extension field a
coefficient may be a tuple ``(c0, c1, ...)``, constant term first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .env import EnvElement, env_one
from .gf import FieldError, FieldSpec
from .liealg import LieAlgebra, LieAlgebraError, Subspace, validate

SECTIONS = ("field", "basis", "brackets", "subspaces", "elements")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class AlgebraFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


class AlgebraValidationError(AlgebraFileError):
    """The bracket table parses but is not a Lie algebra."""

    def __init__(self, messages: list[str]):
        super().__init__("; ".join(messages))
        self.messages = messages


# -- expressions ---------------------------------------------------------------


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", num))
        elif name is not None:
            out.append(("name", name))
        elif sym is not None and not sym.isspace():
            if sym not in "+-*^(),":
                raise AlgebraFileError(f"unexpected character {sym!r}")
            out.append(("sym", sym))
        pos = m.end()
    return out


class _Parser:
    """Recursive-descent parser evaluating directly through an ops object."""

    def __init__(self, text: str, ops):
        self.toks = _tokenize(text)
        self.i = 0
        self.ops = ops

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise AlgebraFileError(f"expected {value or kind}, found {tok[1] or 'end of input'}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise AlgebraFileError("empty expression")
        v = self.expr()
        if self.i != len(self.toks):
            raise AlgebraFileError(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self):
        neg = False
        if self.peek() == ("sym", "-"):
            self.take()
            neg = True
        v = self.term()
        if neg:
            v = self.ops.neg(v)
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            t = self.term()
            v = self.ops.add(v, t if op == "+" else self.ops.neg(t))
        return v

    def term(self):
        v = self.power()
        while self.peek() == ("sym", "*"):
            self.take()
            v = self.ops.mul(v, self.power())
        return v

    def power(self):
        v = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            v = self.ops.pow(v, int(self.take("num")[1]))
        return v

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return self.ops.scalar([int(val)])
        if kind == "name":
            self.take()
            return self.ops.gen(val)
        if (kind, val) == ("sym", "("):
            self.take()
            save = self.i
            # coefficient tuple (c0, c1, ...)
            if self.peek()[0] == "num" and self.i + 1 < len(self.toks) and self.toks[self.i + 1] == ("sym", ","):
                coeffs = [int(self.take("num")[1])]
                while self.peek() == ("sym", ","):
                    self.take()
                    coeffs.append(int(self.take("num")[1]))
                self.take("sym", ")")
                return self.ops.scalar(coeffs)
            self.i = save
            v = self.expr()
            self.take("sym", ")")
            return v
        raise AlgebraFileError(f"unexpected {val or 'end of input'}")


class _EnvOps:
    def __init__(self, alg: LieAlgebra):
        self.alg = alg

    def scalar(self, coeffs):
        return env_one(self.alg).scale_code(self.alg.field.encode(coeffs))

    def gen(self, name):
        try:
            return EnvElement.generator(self.alg, name)
        except LieAlgebraError as e:
            raise AlgebraFileError(str(e)) from None

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, e):
        return a ** e


class _LinearOps:
    """Values are ``(constant, {name: code})``; products need a constant factor."""

    def __init__(self, field: FieldSpec, names):
        self.f = field
        self.names = set(names)

    def scalar(self, coeffs):
        return (self.f.encode(coeffs), {})

    def gen(self, name):
        if name not in self.names:
            raise AlgebraFileError(f"unknown basis element {name!r}")
        return (0, {name: 1})

    def add(self, a, b):
        f = self.f
        lin = dict(a[1])
        for k, v in b[1].items():
            lin[k] = f.add(lin.get(k, 0), v)
        return (f.add(a[0], b[0]), {k: v for k, v in lin.items() if v})

    def neg(self, a):
        f = self.f
        return (f.neg(a[0]), {k: f.neg(v) for k, v in a[1].items()})

    def mul(self, a, b):
        f = self.f
        if a[1] and b[1]:
            raise AlgebraFileError("product of basis elements in a Lie-linear expression")
        if b[1]:
            a, b = b, a
        return (f.mul(a[0], b[0]), {k: f.mul(v, b[0]) for k, v in a[1].items() if f.mul(v, b[0])})

    def pow(self, a, e):
        if a[1] and e != 1:
            raise AlgebraFileError("power of a basis element in a Lie-linear expression")
        return a if e == 1 else (self.f.pow(a[0], e), {})


def parse_element(text: str, alg: LieAlgebra) -> EnvElement:
    return _Parser(text, _EnvOps(alg)).parse()


def parse_linear(text: str, field: FieldSpec, names) -> tuple[int, ...]:
    const, lin = _Parser(text, _LinearOps(field, names)).parse()
    if const:
        raise AlgebraFileError("constant term in a Lie-linear expression")
    return tuple(lin.get(nm, 0) for nm in names)


def format_linear(coords, field: FieldSpec, names) -> str:
    parts = []
    for nm, c in zip(names, coords):
        if c:
            parts.append(nm if c == 1 else f"{field.format(c)}*{nm}")
    return " + ".join(parts) or "0"


# -- files ---------------------------------------------------------------------


@dataclass
class AlgebraFile:
    field: FieldSpec
    basis: list[str]
    brackets: dict[tuple[str, str], tuple[int, ...]] = field(default_factory=dict)
    subspaces: dict[str, list[tuple[int, ...]]] = field(default_factory=dict)
    elements: dict[str, str] = field(default_factory=dict)  # canonical text

    def algebra(self) -> LieAlgebra:
        idx = {nm: i for i, nm in enumerate(self.basis)}
        table = {(idx[a], idx[b]): v for (a, b), v in self.brackets.items()}
        return LieAlgebra.from_table(self.field, self.basis, table)

    def subspace(self, alg: LieAlgebra, name: str) -> Subspace:
        if name in self.subspaces:
            return Subspace.span(alg, self.subspaces[name])
        if name == "L":
            return alg.full()
        raise AlgebraFileError(f"unknown subspace {name!r}")

    def element(self, alg: LieAlgebra, name_or_expr: str) -> EnvElement:
        text = self.elements.get(name_or_expr, name_or_expr)
        return parse_element(text, alg)


def _split_list(text: str) -> list[str]:
    """Split on top-level commas (commas inside parentheses belong to coefficient tuples)."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur).strip())
    return [s for s in out if s]


def parse_algebra_file(text: str, check: bool = True) -> AlgebraFile:
    """Parse a definition file. With ``check``, a table failing the Lie axioms raises."""
    section = None
    field_kv: dict[str, str] = {}
    basis: list[str] = []
    raw_brackets: list[tuple[int, str, str, str]] = []
    raw_subspaces: list[tuple[int, str, str]] = []
    raw_elements: list[tuple[int, str, str]] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            section = m.group(1).lower()
            if section not in SECTIONS:
                raise AlgebraFileError(f"unknown section [{section}]", lineno)
            continue
        if section is None:
            raise AlgebraFileError("content before the first section", lineno)
        if section == "basis":
            for nm in _split_list(line.replace(" ", ",") if "," not in line else line):
                if not _NAME.match(nm):
                    raise AlgebraFileError(f"bad basis name {nm!r}", lineno)
                basis.append(nm)
            continue
        if "=" not in line:
            raise AlgebraFileError("expected 'key = value'", lineno)
        lhs, rhs = (s.strip() for s in line.split("=", 1))
        if section == "field":
            field_kv[lhs.lower()] = rhs
        elif section == "brackets":
            pair = [s.strip() for s in lhs.split(",")]
            if len(pair) != 2:
                raise AlgebraFileError("bracket entries look like 'a, b = expr'", lineno)
            raw_brackets.append((lineno, pair[0], pair[1], rhs))
        elif section == "subspaces":
            raw_subspaces.append((lineno, lhs, rhs))
        else:
            raw_elements.append((lineno, lhs, rhs))

    if "p" not in field_kv:
        raise AlgebraFileError("[field] must define p")
    try:
        p = int(field_kv["p"])
        if "modulus" in field_kv:
            mod = tuple(int(c) for c in _split_list(field_kv["modulus"]))
            spec = FieldSpec(p, len(mod) - 1, mod)
        else:
            spec = FieldSpec(p)
    except FieldError as e:
        raise AlgebraFileError(str(e)) from None
    except ValueError:
        raise AlgebraFileError("field parameters must be integers") from None
    if len(set(basis)) != len(basis):
        raise AlgebraFileError("duplicate basis names")
    if not basis:
        raise AlgebraFileError("empty basis")

    af = AlgebraFile(spec, basis)
    seen: set[frozenset] = set()
    for lineno, a, b, rhs in raw_brackets:
        for nm in (a, b):
            if nm not in basis:
                raise AlgebraFileError(f"unknown basis element {nm!r}", lineno)
        key = frozenset((a, b))
        if key in seen:
            raise AlgebraFileError(f"pair ({a}, {b}) given more than once", lineno)
        seen.add(key)
        try:
            af.brackets[(a, b)] = parse_linear(rhs, spec, basis)
        except AlgebraFileError as e:
            raise AlgebraFileError(str(e), lineno) from None
    for lineno, name, rhs in raw_subspaces:
        if not _NAME.match(name) or name in af.subspaces:
            raise AlgebraFileError(f"bad or duplicate subspace name {name!r}", lineno)
        try:
            af.subspaces[name] = [parse_linear(s, spec, basis) for s in _split_list(rhs)]
        except AlgebraFileError as e:
            raise AlgebraFileError(str(e), lineno) from None

    alg = af.algebra()
    if check:
        rep = validate(alg)
        if not rep.ok:
            raise AlgebraValidationError(rep.messages())
    for lineno, name, rhs in raw_elements:
        if not _NAME.match(name) or name in af.elements:
            raise AlgebraFileError(f"bad or duplicate element name {name!r}", lineno)
        try:
            af.elements[name] = str(parse_element(rhs, alg))
        except AlgebraFileError as e:
            raise AlgebraFileError(str(e), lineno) from None
    return af


def serialize_algebra_file(af: AlgebraFile) -> str:
    f = af.field
    lines = ["[field]", f"p = {f.p}"]
    if f.modulus is not None:
        lines.append("modulus = " + ", ".join(map(str, f.modulus)))
    lines += ["", "[basis]", ", ".join(af.basis), "", "[brackets]"]
    idx = {nm: i for i, nm in enumerate(af.basis)}
    for (a, b), v in sorted(af.brackets.items(), key=lambda kv: (idx[kv[0][0]], idx[kv[0][1]])):
        lines.append(f"{a}, {b} = {format_linear(v, f, af.basis)}")
    lines += ["", "[subspaces]"]
    for name, vecs in af.subspaces.items():
        lines.append(f"{name} = " + ", ".join(format_linear(v, f, af.basis) for v in vecs))
    lines += ["", "[elements]"]
    for name, text in af.elements.items():
        lines.append(f"{name} = {text}")
    return "\n".join(lines) + "\n"
