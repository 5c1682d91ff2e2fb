import numpy as np
import pytest

from fusionlab.algebra.admissible import admissible_solutions, consistency_constraints, solve_admissible
from fusionlab.algebra.model import DimensionMismatch, build_model, identity, is_zero_array
from fusionlab.algebra.params import ParameterError, ParamSet, bmw_delta0, check_generic, make_params
from fusionlab.algebra.relations import exact_inverse, exact_rank, faithfulness_check, jm_checks, jm_elements, relation_matrix, verify_relations
from fusionlab.exact_arith import rat


# -- parameters -------------------------------------------------------------------
def test_check_generic_examples():
    assert check_generic(ParamSet("bmw", 1, (rat(5),), q=rat(2)), 3).ok
    v1 = rat(5)
    cert = check_generic(ParamSet("bmw", 2, (v1, v1 * 4), q=rat(2)), 3)
    assert not cert.ok and cert.reason == "v1v2⁻¹ = q^-2"
    cert = check_generic(ParamSet("nw", 1, (rat(3, 2),)), 2)
    assert not cert.ok and "2v1 = 3" in cert.reason


def test_step_denominator_condition():
    # c·c_k² = 1 makes the Hecke evaluation step divide by zero
    p = ParamSet("hecke", 3, (rat(2, 7), rat(-1), rat(3, 7)), q=rat(2), c=rat(1))
    assert not check_generic(p, 3).ok


def test_make_params_dependent_values():
    p = make_params("bmw", 1, 7, n=3)
    assert p.rho in (p.v[0], -p.v[0])
    assert p.delta[0] == bmw_delta0(p.q, p.rho)
    assert p.c == -1 / p.q
    z = p.q - 1 / p.q
    assert p.rho - 1 / p.rho == z * (p.delta[0] - 1)
    assert make_params("bmw", 1, 7, n=3, rho_sign=-1).rho == -p.rho
    w = make_params("nw", 1, 7, n=3)
    assert w.omega[0] == 2 * w.v[0] + 1 and w.c == 1 - w.omega[0] / 2
    h = make_params("hecke", 2, 7, n=3, c=rat(-3))
    assert h.c == -3 and h.certificate.ok


def test_make_params_deterministic():
    assert make_params("nw", 2, 11, n=2) == make_params("nw", 2, 11, n=2)


def test_c_override_rejected_for_bmw():
    with pytest.raises(ParameterError):
        make_params("bmw", 1, 7, n=2, c=rat(2))


def test_solver_d1():
    cons, syms = consistency_constraints(ParamSet("bmw", 1, (rat(5),), q=rat(2)))
    assert any(str(c) == "rho**2 - 25" for c in cons)
    sols = admissible_solutions(ParamSet("bmw", 1, (rat(5),), q=rat(2)))
    assert sorted(s.rho for s in sols) == [-5, 5]
    sols = admissible_solutions(ParamSet("nw", 1, (rat(2, 7),)))
    assert [s.omega for s in sols] == [(rat(11, 7),)]


def test_solver_d2_regression():
    # values frozen from the first solver run; no closed form is asserted
    v, q = (rat(6, 7), rat(-8, 3)), rat(3)
    base = ParamSet("bmw", 2, v, q=q, certificate=check_generic(ParamSet("bmw", 2, v, q=q), 2))
    plus = solve_admissible(base, rho_sign=1)
    assert plus.rho == rat(48, 7)
    assert plus.delta == (rat(3151, 896), rat(-1311, 196))
    assert plus.delta[0] == bmw_delta0(q, plus.rho)
    minus = solve_admissible(base, rho_sign=-1)
    assert minus.rho == rat(-16, 21)
    assert minus.delta == (rat(1081, 896), rat(437, 588))
    nw = make_params("nw", 2, 7, n=2)
    assert nw.v == (rat(5, 3), rat(-4, 5))
    assert nw.omega == (rat(26, 15), rat(143, 225))
    assert nw.c == rat(2, 15)


def test_solver_rejects_non_level_variants():
    with pytest.raises(ParameterError):
        solve_admissible(ParamSet("hecke", 2, (rat(2), rat(3)), q=rat(5)))


# -- models -----------------------------------------------------------------------
@pytest.mark.parametrize(
    "variant,d,n,dim",
    [("bmw", 1, 2, 3), ("bmw", 1, 3, 15), ("nw", 1, 2, 3), ("nw", 1, 3, 15), ("hecke", 2, 2, 8), ("deg-hecke", 2, 2, 8), ("hecke", 2, 3, 48), ("bmw", 2, 2, 12), ("nw", 2, 2, 12)],
)
def test_dimensions(model_for, variant, d, n, dim):
    assert model_for(variant, d, n).dimension == dim


def test_bmw_n2_basis(model_for):
    m = model_for("bmw", 1, 2)
    assert {m.word_names(w) for w in m.basis_words} == {"1", "T1", "E1"}


@pytest.mark.parametrize("variant,d,n", [("bmw", 1, 3), ("nw", 1, 3), ("hecke", 2, 3), ("deg-hecke", 2, 2), ("bmw", 2, 2), ("nw", 2, 2)])
def test_relations_vanish(model_for, variant, d, n):
    m = model_for(variant, d, n)
    checks = verify_relations(m) + jm_checks(m) + [faithfulness_check(m)]
    assert checks and all(c.ok for c in checks), [c.id for c in checks if not c.ok]
    labels = {c.id for c in checks}
    if variant == "bmw":
        assert "T1 - T1⁻¹ = (q-q⁻¹)(1-E1)" in labels
    assert "(X1-v1)…(X1-vd) = 0" in labels


def test_relation_check_detects_corruption(params_for):
    m = build_model("bmw", 1, 2, params_for("bmw", 1, 2))
    rel = next(r for r in m.presentation.relations if r.label.startswith("E1T1"))
    ops = {x: m.op("left", x) for x in m.letters}
    assert is_zero_array(relation_matrix(m, rel.difference, ops))
    from fusionlab.algebra.model import SparseOp

    bad = m.left["E1"].copy()
    bad[0, 0] += 1
    ops["E1"] = SparseOp(bad)
    assert not is_zero_array(relation_matrix(m, rel.difference, ops))


def test_wrong_parameters_change_dimension():
    p = make_params("bmw", 1, 7, n=2)
    from dataclasses import replace

    with pytest.raises(DimensionMismatch):
        build_model("bmw", 1, 2, replace(p, rho=p.rho * 2, delta=(bmw_delta0(p.q, p.rho * 2),)))


def test_jm_elements(model_for):
    m = model_for("bmw", 1, 3)
    xs = jm_elements(m)
    assert len(xs) == 3
    v1 = m.params.v[0]
    assert is_zero_array(xs[0] - identity(m.dimension) * v1)
    for a in xs:
        for b in xs:
            assert is_zero_array(a.dot(b) - b.dot(a))
    e1 = m.left["E1"]
    assert is_zero_array(e1.dot(xs[0]).dot(xs[1]) - e1)


def test_determinism(params_for):
    p = params_for("nw", 1, 3)
    a, b = build_model("nw", 1, 3, p), build_model("nw", 1, 3, p)
    assert a.basis_words == b.basis_words
    for x in a.letters:
        assert (a.left[x] == b.left[x]).all() and (a.right[x] == b.right[x]).all()


def test_exact_linear_algebra():
    m = np.array([[rat(2), rat(1)], [rat(1), rat(1)]], dtype=object)
    inv = exact_inverse(m)
    assert is_zero_array(m.dot(inv) - identity(2))
    assert exact_rank(np.array([[rat(1), rat(2)], [rat(2), rat(4)]], dtype=object)) == 1
