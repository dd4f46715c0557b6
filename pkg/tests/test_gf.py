import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieenv.gf import (
    FieldError,
    FieldScalar,
    FieldSpec,
    field_add,
    field_inv,
    field_make,
    field_mul,
    field_neg,
    field_pow,
    is_irreducible,
    poly_divmod,
)

SPECS = [FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(7),
         FieldSpec(3, 2, (1, 0, 1)), FieldSpec(2, 3, (1, 1, 0, 1)), FieldSpec(5, 2, (2, 0, 1))]


def test_make_reduces_integers(F3):
    assert field_make(F3, [5]).code == 2
    assert field_make(F3, [0]).is_zero()
    assert field_make(F3, [-1]).code == 2


def test_t_squared_is_minus_one(F9):
    t = field_make(F9, [0, 1])
    # t^2 reduced by t^2 + 1 by hand: remainder -1 = 2
    assert field_mul(t, t) == field_make(F9, [2])
    _, rem = poly_divmod([0, 0, 1], [1, 0, 1], 3)
    assert rem == [2]


def test_small_arithmetic(F3, F9):
    two = field_make(F3, [2])
    assert field_add(two, two).code == 1
    assert field_inv(two).code == 2
    assert field_pow(two, 3).code == 2
    assert field_pow(field_make(F3, [0]), 0).code == 1
    t = field_make(F9, [0, 1])
    assert field_pow(t, 9) == t
    assert field_neg(two).code == 1


def test_errors(F3, F9):
    with pytest.raises(FieldError):
        FieldSpec(4)
    with pytest.raises(FieldError):
        FieldSpec(3, 2, (2, 0, 1))  # t^2 + 2 = (t-1)(t+1)
    with pytest.raises(FieldError):
        field_make(F3, [1, 1])
    with pytest.raises(FieldError):
        field_inv(field_make(F3, [0]))
    with pytest.raises(FieldError):
        field_add(field_make(F3, [1]), field_make(F9, [1]))


def test_irreducibility_by_roots():
    # for degree 2 and 3, irreducible iff no root
    for p in (2, 3, 5):
        for c0 in range(p):
            for c1 in range(p):
                f = [c0, c1, 1]
                has_root = any((c0 + c1 * a + a * a) % p == 0 for a in range(p))
                assert is_irreducible(f, p) == (not has_root)


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_field_axioms_exhaustive(spec):
    q = spec.q
    els = list(spec.elements())
    assert els == list(range(q))
    for a in els:
        assert spec.add(a, spec.neg(a)) == 0
        assert spec.mul(a, 1) == a
        assert spec.pow(a, q) == a
        if a:
            assert spec.mul(a, spec.inv(a)) == 1
    # multiplicative group is cyclic of order q - 1
    orders = set()
    for a in els[1:]:
        k, x = 1, a
        while x != 1:
            x, k = spec.mul(x, a), k + 1
        orders.add(k)
    assert max(orders) == q - 1


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_vectorised_ops_match_scalar(spec):
    rng = np.random.default_rng(1)
    a = rng.integers(0, spec.q, size=50)
    b = rng.integers(0, spec.q, size=50)
    assert list(spec.vadd(a, b)) == [spec.add(int(x), int(y)) for x, y in zip(a, b)]
    assert list(spec.vmul(a, b)) == [spec.mul(int(x), int(y)) for x, y in zip(a, b)]
    assert list(spec.vsub(a, b)) == [spec.sub(int(x), int(y)) for x, y in zip(a, b)]
    assert list(spec.vneg(a)) == [spec.neg(int(x)) for x in a]
    A = rng.integers(0, spec.q, size=(4, 5))
    B = rng.integers(0, spec.q, size=(5, 3))
    C = spec.matmul(A, B)
    for i in range(4):
        for j in range(3):
            s = 0
            for k in range(5):
                s = spec.add(s, spec.mul(int(A[i, k]), int(B[k, j])))
            assert C[i, j] == s


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_distributive_and_associative(spec, data):
    el = st.integers(0, spec.q - 1)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert spec.mul(a, spec.add(b, c)) == spec.add(spec.mul(a, b), spec.mul(a, c))
    assert spec.mul(spec.mul(a, b), c) == spec.mul(a, spec.mul(b, c))
    assert spec.add(spec.add(a, b), c) == spec.add(a, spec.add(b, c))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(SPECS), st.data())
def test_frobenius_is_additive(spec, data):
    a = FieldScalar(spec, data.draw(st.integers(0, spec.q - 1)))
    b = FieldScalar(spec, data.draw(st.integers(0, spec.q - 1)))
    p = spec.p
    assert (a + b) ** p == a ** p + b ** p


def test_encode_decode_roundtrip(F9):
    for code in F9.elements():
        assert F9.encode(F9.decode(code)) == code
    assert F9.format(F9.encode([1, 2])) == "(1,2)"
