import numpy as np
import pytest

from lieenv import linalg
from lieenv.env import EnvElement, env_mul, env_one
from lieenv.gf import FieldSpec
from lieenv.liealg import LieAlgebra
from lieenv.randalg import scrambled
from lieenv.weights import (
    FilteredBasis,
    WindowError,
    center_basis,
    check_product_semiinvariance,
    eigenspace,
    enumerate_weights,
    graded_monomials,
    is_semiinvariant,
    null_space,
    operator_matrix,
    semicenter_basis,
    verify_generation_at_degree,
)


def weight_map(reports):
    return {r.weight.values: r for r in reports}


def test_graded_monomials():
    mons = graded_monomials(2, 2)
    assert mons == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_operator_matrix_of_y(cyclic):
    _, L, H, _ = cyclic
    fb = FilteredBasis(H, 1)
    M = operator_matrix(L.basis_vec("y"), fb)
    # order: 1, y, e1, e2, e3; columns are images
    expected = np.zeros((5, 5), dtype=np.int64)
    expected[4, 2] = 1  # [y, e1] = e3
    expected[2, 3] = 1  # [y, e2] = e1
    expected[3, 4] = 1  # [y, e3] = e2
    assert (M == expected).all()
    assert not operator_matrix(L.zero(), fb).any()
    u_coords = fb.coords(EnvElement.generator(L, "e1") + EnvElement.generator(L, "e2") + EnvElement.generator(L, "e3"))
    assert linalg.in_span(L.field, eigenspace(L.field, M, 1), u_coords)


def test_operator_matrix_diagonal(stable):
    _, L, H, _ = stable
    M = operator_matrix(L.basis_vec("y"), FilteredBasis(H, 1))
    assert (M == np.diag([0, 0, 1, 1])).all()
    assert null_space(L.field, M).shape[0] == 2


def test_operator_must_normalise(cyclic):
    _, L, _, _ = cyclic
    fb = FilteredBasis(L.subspace_by_names(["e1", "e2", "e3"]), 1)
    fb.operator_matrix(L.basis_vec("y"))
    fb2 = FilteredBasis(L.subspace_by_names(["x"]), 1)
    with pytest.raises(WindowError):
        fb2.operator_matrix(L.basis_vec("y"))


def test_degree_two_weights(cyclic):
    af, L, H, _ = cyclic
    u, v = af.element(L, "u"), af.element(L, "v")
    reports = weight_map(enumerate_weights(H, 2))
    assert set(reports) == {(0, 0, 0, 0), (1, 0, 0, 0), (2, 0, 0, 0)}
    assert reports[(1, 0, 0, 0)].contains(u)
    assert reports[(2, 0, 0, 0)].contains(v)
    assert reports[(2, 0, 0, 0)].contains(env_mul(u, u))
    assert reports[(0, 0, 0, 0)].dim == 1


def test_abelian_single_weight():
    f = FieldSpec(5)
    A = LieAlgebra(f, ["a", "b", "c"], np.zeros((3, 3, 3), dtype=np.int64))
    reports = enumerate_weights(A.full(), 2)
    assert len(reports) == 1 and reports[0].weight.is_zero() and reports[0].dim == 10


def test_power_product_center(power):
    _, M, _, g = power
    rpt = center_basis(M.full(), 3)
    assert rpt.contains(g["y"] ** 3)
    assert not rpt.contains(g["y"])
    assert not rpt.contains(g["y"] ** 2)


def test_center_windows(cyclic):
    af, L, H, g = cyclic
    c3 = center_basis(H, 3)
    uv = env_mul(af.element(L, "u"), af.element(L, "v"))
    for a in (env_one(L), g["e1"] ** 3, g["e2"] ** 3, g["e3"] ** 3, uv):
        assert c3.contains(a)
    assert c3.dim == 5
    assert center_basis(H, 0).dim == 1


def test_center_degree_nine(cyclic):
    _, L, H, g = cyclic
    c9 = center_basis(H, 9)
    assert len(c9.window) == 715
    assert c9.contains(g["y"] ** 9 - g["y"] ** 3)


def test_window_cap(cyclic, monkeypatch):
    _, _, H, _ = cyclic
    with pytest.raises(WindowError):
        FilteredBasis(H, 9, cap=100)
    monkeypatch.setenv("LIEENV_WINDOW_CAP", "50")
    with pytest.raises(WindowError):
        enumerate_weights(H, 4)


def test_semiinvariants(cyclic):
    af, L, H, _ = cyclic
    u = af.element(L, "u")
    w = is_semiinvariant(u, H)
    assert w.values == (1, 0, 0, 0)
    assert is_semiinvariant(u, L.full()) is None
    assert is_semiinvariant(env_one(L).scale(2), L.full()).is_zero()
    with pytest.raises(ValueError):
        is_semiinvariant(EnvElement(L), H)


def test_product_check_on_cyclic(cyclic):
    """The product uv is central in U(H) but has no weight for all of L: [x, uv] is not a multiple of uv."""
    af, L, H, _ = cyclic
    u, v = af.element(L, "u"), af.element(L, "v")
    pc = check_product_semiinvariance(u, v, L.full())
    assert pc.left is None and pc.right is None
    assert pc.product is None
    assert check_product_semiinvariance(u, v, H).product.is_zero()


def test_product_check_on_power_product(power):
    _, M, _, g = power
    pc = check_product_semiinvariance(g["y"], g["y"] ** 2, M.full())
    assert pc.product is not None and pc.product.is_zero()
    assert pc.left is None and pc.right is None
    assert not pc.holds
    one = env_one(M)
    pc = check_product_semiinvariance(one, one, M.subspace_by_names(["y", "z", "t"]))
    assert pc.holds and pc.product.is_zero()


def test_generation(cyclic):
    af, L, H, g = cyclic
    u, v = af.element(L, "u"), af.element(L, "v")
    uv = env_mul(u, v)
    z = g["y"] ** 9 - g["y"] ** 3
    cubes = [g["e1"] ** 3, g["e2"] ** 3, g["e3"] ** 3]
    assert verify_generation_at_degree(cubes + [uv], H, "center", 3).equal
    assert verify_generation_at_degree(cubes + [uv, z, u, v], H, "all", 3).equal
    with pytest.raises(ValueError):
        verify_generation_at_degree([g["x"]], H, "all", 2)


def test_generation_degree_nine(cyclic):
    af, L, H, g = cyclic
    uv = env_mul(af.element(L, "u"), af.element(L, "v"))
    gens = [g["y"] ** 9 - g["y"] ** 3, g["e1"] ** 3, g["e2"] ** 3, g["e3"] ** 3, uv]
    chk = verify_generation_at_degree(gens, H, "center", 9)
    assert chk.equal and chk.target_dim == 35


def test_generation_deficit():
    f = FieldSpec(3)
    A = LieAlgebra(f, ["a", "b"], np.zeros((2, 2, 2), dtype=np.int64))
    chk = verify_generation_at_degree([env_one(A)], A.full(), "all", 1)
    assert not chk.equal and chk.target_dim - chk.generated_dim == 2


def test_semicenter_is_direct(cyclic):
    _, _, H, _ = cyclic
    reports = semicenter_basis(H, 3)
    spec = H.algebra.field
    rows = np.vstack([r.coords for r in reports])
    assert linalg.rank(spec, rows) == sum(r.dim for r in reports)


def test_non_coordinate_subalgebra(cyclic):
    """After a random change of basis H is no longer a coordinate subspace; weight dimensions persist."""
    _, L, H, _ = cyclic
    L2, H2, _ = scrambled(L, H, L.basis_vec("x"), np.random.default_rng(5))
    assert not H2.is_coordinate()
    dims = sorted(r.dim for r in enumerate_weights(H, 3))
    reports = enumerate_weights(H2, 3)
    assert sorted(r.dim for r in reports) == dims
    for r in reports:
        for b in r.basis:
            assert is_semiinvariant(b, H2) == r.weight
