import pytest

from fusionlab.algebra.element import Element
from fusionlab.algebra.model import is_zero_array
from fusionlab.exact_arith import parse_rat, rat
from fusionlab.fusion import (
    U,
    baxterized,
    fused_idempotent,
    fusion_verify,
    lemma_check,
    phi_chain,
    prefactor_regularity,
    q_factor,
    q_factor_terms,
    scalar_identities_check,
    unitarity_check,
)
from fusionlab.idempotents import idempotent_vector, tableaux
from fusionlab.updown import UpDownTableau, contents

E, ONE = ((),), ((1,),)


@pytest.mark.parametrize("variant,d", [("bmw", 1), ("nw", 1), ("hecke", 2), ("deg-hecke", 2)])
def test_unitarity(model_for, variant, d):
    m = model_for(variant, d, 2)
    assert unitarity_check(m).ok


def test_unitarity_fails_for_wrong_function(model_for):
    m = model_for("bmw", 1, 2)
    v = rat(3)
    lhs = baxterized(m, 1, U, v)
    assert not lhs.equals(Element.one(m))


@pytest.mark.parametrize("variant", ["bmw", "nw"])
def test_scalar_identities(params_for, variant):
    checks = scalar_identities_check(params_for(variant, 1, 2), variant)
    assert len(checks) == 2 and all(c.ok for c in checks)


def test_scalar_identities_other_params(params_for):
    # any ρ works, including the negative branch at level two
    p = params_for("bmw", 2, 2, 7, -1)
    assert all(c.ok for c in scalar_identities_check(p, "bmw"))


def test_q_factor_middle_coefficient(model_for):
    m = model_for("bmw", 1, 2)
    p = m.params
    u, v = rat(5, 2), rat(-3)
    coef = q_factor_terms(m, 1, u, v)[1][0]
    z = p.q - 1 / p.q
    assert coef == z / (-(1 / p.rho) * (1 / p.q) * u * v - 1)


def _at(el, a):
    return el.eval_regular(a).vector


@pytest.mark.parametrize("variant", ["bmw", "nw"])
def test_chain_two_ways(model_for, variant):
    # φ̄_2(c_1, u) by right action against Q_1·φ̄_1·T_1 multiplied as matrices
    m = model_for(variant, 1, 2)
    c1 = contents(UpDownTableau((ONE,), 1), m.params, variant)[0]
    chain = phi_chain(m, [c1])
    for a in (rat(7, 3), rat(-5, 2), rat(11)):
        qa = Element.from_vector(m, _at(q_factor(m, 1, c1, U), a)).matrix()
        pa = Element.from_vector(m, _at(phi_chain(m, []), a)).matrix()
        ta = _at(baxterized(m, 1, c1, U), a)
        assert is_zero_array(qa.dot(pa).dot(ta) - _at(chain, a))


@pytest.mark.parametrize("variant", ["bmw", "nw"])
def test_lemma_n2(model_for, variant):
    m = model_for(variant, 1, 2)
    for k in range(2):
        for U_ in {t.prefix(k) for t in tableaux(m)}:
            assert lemma_check(m, U_)


@pytest.mark.parametrize("variant,d", [("bmw", 1), ("nw", 1), ("hecke", 2), ("deg-hecke", 2)])
def test_fusion_n2(model_for, variant, d):
    rep = fusion_verify(model_for(variant, d, 2))
    assert rep.ok, rep.failures()
    for v in rep.verdicts:
        assert all(x["value"] == "1/1" for x in v.prefactor_values)


def test_literal_weights_break_fusion(model_for):
    m = model_for("bmw", 1, 3)
    t = UpDownTableau((ONE, E, ONE), 1)
    v = m.params.v[0]
    ok, vals = prefactor_regularity(t, m.params, "bmw", literal=True)
    assert not ok
    assert [parse_rat(x["value"]) for x in vals] == [1, 1, v * v]
    lit = fused_idempotent(m, t, literal=True).vector
    cor = fused_idempotent(m, t).vector
    target = idempotent_vector(m, t)
    assert is_zero_array(cor - target)
    # the literal weight is off by v², so the fused element is v²·E_T
    assert is_zero_array(lit - target * (v * v))


def test_step_diagnostics(model_for):
    m = model_for("nw", 1, 3)
    t = UpDownTableau((ONE, E, ONE), 1)
    diags = []
    fused_idempotent(m, t, diagnostics=diags)
    assert [d["p"] for d in diags] == [0, 1, 2]
    assert all("cancelled_order" in d for d in diags)
