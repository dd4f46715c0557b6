import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieenv import linalg
from lieenv.gf import FieldSpec

SPECS = [FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(3, 2, (1, 0, 1)), FieldSpec(2, 2, (1, 1, 1))]


def rand(spec, r, c, seed):
    return np.random.default_rng(seed).integers(0, spec.q, size=(r, c)).astype(np.int64)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(SPECS), st.integers(1, 7), st.integers(1, 7), st.integers(0, 2**32))
def test_null_space_is_annihilated_and_rank_nullity(spec, r, c, seed):
    m = rand(spec, r, c, seed)
    N = linalg.null_space(spec, m)
    assert N.shape[0] + linalg.rank(spec, m) == c
    if N.shape[0]:
        assert not spec.matmul(m, N.T).any()


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SPECS), st.integers(1, 6), st.integers(0, 2**32))
def test_inverse(spec, n, seed):
    m = rand(spec, n, n, seed)
    if linalg.rank(spec, m) < n:
        with pytest.raises(ValueError):
            linalg.inverse(spec, m)
        return
    inv = linalg.inverse(spec, m)
    assert (spec.matmul(m, inv) == np.eye(n, dtype=np.int64)).all()


def test_eigenspace_of_identity():
    f = FieldSpec(5)
    eye = np.eye(4, dtype=np.int64)
    assert linalg.eigenspace(f, eye, 1).shape[0] == 4
    assert linalg.eigenspace(f, eye, 0).shape[0] == 0


def test_span_helpers():
    f = FieldSpec(3)
    basis, piv = linalg.rref(f, np.array([[1, 1, 0], [0, 1, 1]]))
    assert piv == [0, 1]
    assert linalg.in_span(f, basis, np.array([1, 2, 1]))
    assert not linalg.in_span(f, basis, np.array([0, 0, 1]))
    assert linalg.spans_equal(f, basis, np.array([[1, 2, 1], [2, 2, 0]]))
    assert linalg.pivots_of(basis) == piv


def test_empty_inputs():
    f = FieldSpec(3)
    rows, piv = linalg.rref(f, np.zeros((0, 4), dtype=np.int64))
    assert rows.shape == (0, 4) and piv == []
    assert linalg.stack([], 3).shape == (0, 3)
