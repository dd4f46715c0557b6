import numpy as np
import pytest

from lieenv.fileformat import parse_algebra_file
from lieenv.gf import FieldSpec
from lieenv.liealg import LieAlgebra, LieAlgebraError
from lieenv.properties import validator_sweep
from lieenv.randalg import cyclic_extension, random_decomposition, scrambled
from lieenv.stability import (
    Decomposition,
    ValidatorViolation,
    is_stable,
    lambda_on_bracket_with_H,
    lambda_on_derived,
    semicenter_window_stable,
    stability_report,
    validate_all,
    validate_derived_vanishing,
    validate_nilpotent_derived,
    validate_semicenter_stability,
    validate_weight_stability,
)
from lieenv.weights import Weight, enumerate_weights


def dec_of(fx):
    _, L, H, _ = fx
    return Decomposition(L, H, L.basis_vec("x"))


def by_value(reports):
    return {r.weight.values: r for r in reports}


def test_cyclic_verdicts(cyclic):
    dec = dec_of(cyclic)
    reports = by_value(enumerate_weights(dec.H, 2))
    v1 = is_stable(dec, reports[(1, 0, 0, 0)])
    assert not v1.stable
    assert str(v1.witness.image) == "e2 + 2*e3"
    assert not is_stable(dec, reports[(2, 0, 0, 0)]).stable
    assert is_stable(dec, reports[(0, 0, 0, 0)]).stable


def test_stable_window_verdict(stable):
    dec = dec_of(stable)
    rpt = by_value(enumerate_weights(dec.H, 2))[(1, 0, 0)]
    assert is_stable(dec, rpt).stable


def test_mismatched_ideal(cyclic, stable):
    rpt = enumerate_weights(stable[2], 1)[0]
    with pytest.raises(LieAlgebraError):
        is_stable(dec_of(cyclic), rpt)


def test_lambda_on_derived(cyclic, stable):
    dec = dec_of(cyclic)
    assert lambda_on_derived(dec, Weight(dec.H, (0, 0, 0, 0)))
    assert not lambda_on_derived(dec, Weight(dec.H, (1, 0, 0, 0)))
    dec2 = dec_of(stable)
    assert lambda_on_derived(dec2, Weight(dec2.H, (1, 0, 0)))


def test_decomposition_checks(cyclic):
    _, L, H, _ = cyclic
    with pytest.raises(LieAlgebraError):
        Decomposition(L, L.subspace_by_names(["x", "y"]), L.basis_vec("e1"))
    with pytest.raises(LieAlgebraError):
        Decomposition(L, H, L.basis_vec("y"))
    K = L.subspace_by_names(["e1", "e2", "e3"])
    with pytest.raises(LieAlgebraError):
        Decomposition(L, K, L.basis_vec("x"))
    assert Decomposition.standard(L, K).codimension == 2


def test_validators_on_cyclic(cyclic):
    dec = dec_of(cyclic)
    assert validate_weight_stability(dec, 2).holds
    sc = validate_semicenter_stability(dec, 2)
    assert sc.holds and sc.details[0] == {"semicenter_stable": False, "all_weights_stable": False}
    nil = validate_nilpotent_derived(dec, 2)
    assert not nil.hypothesis_met and nil.holds
    dv = validate_derived_vanishing(dec, 2)
    assert dv.holds and dv.details[0] == {"semicenter_stable": False, "all_vanish": False, "all_vanish_on_LH": False}


def test_validators_on_stable_window(stable):
    dec = dec_of(stable)
    assert validate_weight_stability(dec, 2).holds
    sc = validate_semicenter_stability(dec, 2)
    assert sc.details[0] == {"semicenter_stable": True, "all_weights_stable": True}
    nil = validate_nilpotent_derived(dec, 2)
    assert nil.hypothesis_met and nil.holds
    dv = validate_derived_vanishing(dec, 2)
    assert dv.details[0] == {"semicenter_stable": True, "all_vanish": True, "all_vanish_on_LH": True}


def test_abelian_and_nilpotent():
    f = FieldSpec(3)
    A = LieAlgebra(f, ["a", "b", "c"], np.zeros((3, 3, 3), dtype=np.int64))
    dec = Decomposition(A, A.subspace_by_names(["b", "c"]), A.basis_vec("a"))
    reps = validate_all(dec, 2)
    assert all(r.holds for r in reps.values())
    assert semicenter_window_stable(dec, enumerate_weights(dec.H, 2))
    sc = np.zeros((3, 3, 3), dtype=np.int64)
    sc[0, 1, 2], sc[1, 0, 2] = 1, 2  # Heisenberg
    N = LieAlgebra(f, ["p", "q", "c"], sc)
    dec = Decomposition(N, N.subspace_by_names(["q", "c"]), N.basis_vec("p"))
    rep = stability_report(dec, 3)
    assert all(r.weight.is_zero() for r in enumerate_weights(dec.H, 3))
    assert all(v.stable for v in rep.verdicts)


def test_derived_vanishing_requires_containment(cyclic):
    _, L, _, _ = cyclic
    K = L.subspace_by_names(["e1", "e2", "e3"])
    dec = Decomposition.standard(L, K)
    with pytest.raises(LieAlgebraError):
        validate_derived_vanishing(dec, 1)
    assert "derived_vanishing" not in validate_all(dec, 2)


CODIM_TWO = """
[field]
p = 2
[basis]
b0, b1, b2, b3, b4
[brackets]
b0, b1 = b2 + b3
b0, b2 = b3 + b4
b0, b3 = b3 + b4
b0, b4 = b3 + b4
b1, b2 = b4
b1, b3 = b4
b2, b3 = b3
b2, b4 = b4
"""


def _codim_two_counterexample():
    L = parse_algebra_file(CODIM_TWO).algebra()
    return Decomposition.standard(L, L.subspace_by_names(["b2", "b3", "b4"]))


def test_derived_vanishing_fails_in_codimension_two():
    """[b0, b1] has a b2 component, so weight b2* is nonzero on [L, L] yet every weight space is stable."""
    dec = _codim_two_counterexample()
    assert dec.codimension == 2 and dec.derived() == dec.H
    reports = enumerate_weights(dec.H, 1)
    lam = by_value(reports)[(1, 0, 0)]
    assert is_stable(dec, lam).stable
    assert not lambda_on_derived(dec, lam.weight)
    assert lambda_on_bracket_with_H(dec, lam.weight)
    assert semicenter_window_stable(dec, reports)
    rep = validate_derived_vanishing(dec, 1, strict=False)
    assert not rep.holds and rep.violations[0]["all_vanish_on_LH"] is True
    with pytest.raises(ValidatorViolation):
        validate_derived_vanishing(dec, 1)
    others = validate_all(dec, 3, strict=False)
    assert others["semicenter_stability"].holds and others["nilpotent_derived"].holds


@pytest.mark.parametrize("p", [2, 3])
def test_cyclic_family(p):
    L, H, x = cyclic_extension(FieldSpec(p))
    for dec in (Decomposition(L, H, x), Decomposition(*scrambled(L, H, x, np.random.default_rng(p)))):
        rep = stability_report(dec, 2)
        assert any(not v.stable for v in rep.verdicts)
        assert all(c is not False for c in rep.theorem_checks.values())


def test_violation_bundle(cyclic, monkeypatch):
    """A forced disagreement raises in strict mode with a serialisable bundle."""
    import json

    from lieenv import stability

    dec = dec_of(cyclic)
    monkeypatch.setattr(stability, "lambda_on_derived", lambda dec, lam: True)
    with pytest.raises(ValidatorViolation) as exc:
        stability.validate_weight_stability(dec, 2)
    bundle = exc.value.bundle
    json.dumps(bundle)
    assert bundle["brackets"]["x,y"] == "2*y"
    assert bundle["witness"] is not None
    rep = stability.validate_weight_stability(dec, 2, strict=False)
    assert not rep.holds and rep.violations


def test_random_sweep_small():
    res = validator_sweep(40, seed=99, max_dim=4)
    assert res.ok, res.violations[:1]
    assert res.checked["semicenter_stability"] == 44


def test_random_scrambled_matches_plain():
    rng = np.random.default_rng(3)
    for _ in range(10):
        L, H, x = random_decomposition(FieldSpec(3), 4, rng)
        plain = sorted((r.dim, is_stable(Decomposition(L, H, x), r).stable) for r in enumerate_weights(H, 2))
        L2, H2, x2 = scrambled(L, H, x, rng)
        scr = sorted((r.dim, is_stable(Decomposition(L2, H2, x2), r).stable) for r in enumerate_weights(H2, 2))
        assert plain == scr
