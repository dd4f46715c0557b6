"""Exact arithmetic in prime fields F_p and extensions F_{p^k}.

Field elements are carried internally as integer *codes*: the residue
``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` is encoded as ``sum(c_i * p**i)``.
Every other module stores coefficients as codes and calls the ``FieldSpec``
methods; :class:`FieldScalar` is the user-facing wrapper.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

import numpy as np

MAX_ORDER = 1 << 20


class FieldError(ValueError):
    """Invalid field definition or illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def poly_divmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Divide polynomials over F_p (constant term first). ``b`` must be nonzero."""
    a = [c % p for c in a]
    b = [c % p for c in b]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise FieldError("division by the zero polynomial")
    inv_lead = pow(b[-1], p - 2, p)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead % p
        quot[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    rem = a[: len(b) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive search for a monic factor of degree at most half the degree."""
    k = len(modulus) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            _, rem = poly_divmod(modulus, list(low) + [1], p)
            if not rem:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^k}; ``modulus`` is monic of degree k, constant term first."""

    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise FieldError("extension degree must be positive")
        if self.modulus is None:
            if self.k != 1:
                raise FieldError("an extension of degree > 1 needs a modulus")
        else:
            mod = tuple(int(c) for c in self.modulus)
            object.__setattr__(self, "modulus", mod)
            if len(mod) != self.k + 1:
                raise FieldError(f"modulus must have {self.k + 1} coefficients")
            if any(not 0 <= c < self.p for c in mod):
                raise FieldError("modulus coefficients must lie in [0, p)")
            if mod[-1] != 1:
                raise FieldError("modulus must be monic")
            if not is_irreducible(mod, self.p):
                raise FieldError(f"modulus {list(mod)} is reducible over F_{self.p}")
        if self.p ** self.k > MAX_ORDER:
            raise FieldError(f"field order {self.p}^{self.k} exceeds {MAX_ORDER}")

    @property
    def q(self) -> int:
        return self.p ** self.k

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def __str__(self):
        if self.k == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^{self.k}"

    # -- encoding ---------------------------------------------------------

    def encode(self, coeffs: Sequence[int]) -> int:
        if len(coeffs) > self.k:
            raise FieldError(f"at most {self.k} coefficients allowed, got {len(coeffs)}")
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + int(c) % self.p
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def from_int(self, n: int) -> int:
        return int(n) % self.p

    def elements(self) -> range:
        """All codes, i.e. the deterministic scan order used for eigenvalues."""
        return range(self.q)

    # -- scalar arithmetic on codes --------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        p, out, pw = self.p, 0, 1
        while a or b:
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * pw
            pw *= p
        return out

    def neg(self, a: int) -> int:
        if self.k == 1:
            return -a % self.p
        p, out, pw = self.p, 0, 1
        while a:
            a, r = divmod(a, p)
            out += (-r % p) * pw
            pw *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        log, exp = self._log_list, self._exp_list
        return exp[(log[a] + log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp_list[-self._log_list[a] % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.k == 1:
            return pow(a, n, self.p)
        result, base = 1, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    # -- vectorised arithmetic on code arrays ----------------------------

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (a + b) % self.p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.k):
            out += ((a // pw + b // pw) % self.p) * pw
            pw *= self.p
        return out

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return -a % self.p
        out = np.zeros(a.shape, dtype=np.int64)
        pw = 1
        for _ in range(self.k):
            out += (-(a // pw) % self.p) * pw
            pw *= self.p
        return out

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.vadd(a, self.vneg(b))

    def vmul(self, a: np.ndarray, b) -> np.ndarray:
        if self.k == 1:
            return a * b % self.p
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        s = (self._log[a] + self._log[b]) % (self.q - 1)
        return np.where((a == 0) | (b == 0), 0, self._exp[s])

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.k == 1:
            return (a @ b) % self.p
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for t in range(a.shape[1]):
            out = self.vadd(out, self.vmul(a[:, t : t + 1], b[t : t + 1, :]))
        return out

    # -- log/exp tables for extensions -----------------------------------

    def _poly_mulmod(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        prod = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % self.p
        _, rem = poly_divmod(prod, self.modulus, self.p)
        return rem + [0] * (self.k - len(rem))

    def _poly_pow(self, a: Sequence[int], n: int) -> list[int]:
        result, base = [1] + [0] * (self.k - 1), list(a)
        while n:
            if n & 1:
                result = self._poly_mulmod(result, base)
            base = self._poly_mulmod(base, base)
            n >>= 1
        return result

    @cached_property
    def _generator(self) -> int:
        one = [1] + [0] * (self.k - 1)
        factors = _prime_factors(self.q - 1)
        for g in range(2, self.q):
            coeffs = list(self.decode(g))
            if all(self._poly_pow(coeffs, (self.q - 1) // r) != one for r in factors):
                return g
        raise FieldError("no primitive element found")  # unreachable for a field

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.q
        exp = np.zeros(q, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        g = list(self.decode(self._generator))
        cur = [1] + [0] * (self.k - 1)
        for i in range(q - 1):
            code = self.encode(cur)
            exp[i] = code
            log[code] = i
            cur = self._poly_mulmod(cur, g)
        exp[q - 1] = exp[0]
        return log, exp

    @property
    def _log(self) -> np.ndarray:
        return self._tables[0]

    @property
    def _exp(self) -> np.ndarray:
        return self._tables[1]

    @cached_property
    def _log_list(self) -> list[int]:
        return self._tables[0].tolist()

    @cached_property
    def _exp_list(self) -> list[int]:
        return self._tables[1].tolist()

    # -- text --------------------------------------------------------------

    def format(self, code: int) -> str:
        if self.k == 1:
            return str(code)
        return "(" + ",".join(map(str, self.decode(code))) + ")"


@dataclass(frozen=True)
class FieldScalar:
    """An element of a finite field; compares by value within one field."""

    spec: FieldSpec
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.spec.decode(self.code)

    def is_zero(self) -> bool:
        return self.code == 0

    def _check(self, other: "FieldScalar") -> None:
        if not isinstance(other, FieldScalar) or other.spec != self.spec:
            raise FieldError("operands belong to different fields")

    def __add__(self, other):
        self._check(other)
        return FieldScalar(self.spec, self.spec.add(self.code, other.code))

    def __sub__(self, other):
        self._check(other)
        return FieldScalar(self.spec, self.spec.sub(self.code, other.code))

    def __mul__(self, other):
        self._check(other)
        return FieldScalar(self.spec, self.spec.mul(self.code, other.code))

    def __truediv__(self, other):
        self._check(other)
        return FieldScalar(self.spec, self.spec.mul(self.code, self.spec.inv(other.code)))

    def __neg__(self):
        return FieldScalar(self.spec, self.spec.neg(self.code))

    def __pow__(self, n: int):
        return field_pow(self, n)

    def __str__(self):
        return self.spec.format(self.code)

    def __repr__(self):
        return f"FieldScalar({self.spec}, {self.spec.format(self.code)})"


def field_make(spec: FieldSpec, coeffs: Iterable[int]) -> FieldScalar:
    return FieldScalar(spec, spec.encode(list(coeffs)))


def field_add(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    return a + b


def field_mul(a: FieldScalar, b: FieldScalar) -> FieldScalar:
    return a * b


def field_neg(a: FieldScalar) -> FieldScalar:
    return -a


def field_inv(a: FieldScalar) -> FieldScalar:
    return FieldScalar(a.spec, a.spec.inv(a.code))


def field_pow(a: FieldScalar, n: int) -> FieldScalar:
    """``a**n`` for ``n >= 0`` by square-and-multiply, with ``0**0 == 1``."""
    if n < 0:
        raise FieldError("negative exponent")
    return FieldScalar(a.spec, a.spec.pow(a.code, n))
