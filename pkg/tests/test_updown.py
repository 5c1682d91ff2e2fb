import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionlab.algebra.params import ParamSet, make_params
from fusionlab.exact_arith import rat
from fusionlab.multipartitions import LevelShape, size
from fusionlab.updown import (
    UpDownTableau,
    all_tableaux,
    content_set,
    contents,
    diagonal_profile,
    enumerate_updown,
    g_indexes,
    lambda_plus_square_sum,
    p_range,
    p_sequence,
    standard_square_sum,
    step_weight,
    weight,
)

V, Q = rat(5), rat(2)
BMW1 = ParamSet("bmw", 1, (V,), q=Q)
NW1 = ParamSet("nw", 1, (rat(2, 7),))


def tab(*shapes, d=1):
    return UpDownTableau(tuple(shapes), d)


E, ONE, TWO, ONEONE = ((),), ((1,),), ((2,),), ((1, 1),)


def test_enumerate_updown_counts():
    assert len(enumerate_updown(LevelShape(0, ONE), 1, 1)) == 1
    ts = enumerate_updown(LevelShape(1, ONE), 3, 1)
    assert len(ts) == 3
    assert {t.steps[1] for t in ts} == {E, TWO, ONEONE}
    assert len(enumerate_updown(LevelShape(0, ((2, 1),)), 3, 1)) == 2
    with pytest.raises(ValueError):
        enumerate_updown(LevelShape(0, TWO), 3, 1)


def test_invalid_step_rejected():
    with pytest.raises(ValueError):
        tab(ONE, ((3,),))


def test_contents_examples():
    q2 = Q * Q
    assert contents(tab(ONE, TWO), BMW1, "bmw") == [V, V * q2]
    assert contents(tab(ONE, E), BMW1, "bmw") == [V, 1 / V]
    assert contents(tab(ONE, E), NW1, "nw") == [NW1.v[0], -NW1.v[0]]


def test_content_sets():
    q2 = Q * Q
    assert content_set(1, 1, 2, BMW1, "bmw") == [V]
    assert sorted(content_set(2, 1, 2, BMW1, "bmw")) == sorted([V * q2, V / q2, 1 / V])
    v = NW1.v[0]
    assert sorted(content_set(2, 1, 2, NW1, "nw")) == sorted([v + 1, v - 1, -v])


def test_diagonal_profile_examples():
    p = diagonal_profile(tab())
    assert p.added == () and p.removed == ()
    p = diagonal_profile(tab(ONE))
    assert p.add_count(1, 0) == 1 and p.removed == ()
    p = diagonal_profile(tab(ONE, E))
    assert p.add_count(1, 0) == 1 and p.remove_count(1, 0) == 1


def test_g_indexes_examples():
    g, gbar = g_indexes(diagonal_profile(tab()))
    assert g[1] == {0: 1} and gbar[1] == {}
    g, gbar = g_indexes(diagonal_profile(tab(ONE)))
    assert g[1] == {0: -1, 1: 1, -1: 1} and gbar[1] == {}
    g, gbar = g_indexes(diagonal_profile(tab(ONE, E)))
    assert g[1] == {0: -1, 1: 1, -1: 1} and gbar[1] == {0: -2, 1: 1, -1: 1}


def test_p_sequence_examples():
    assert p_sequence(tab(ONE, E)) == [0, 1]
    assert p_sequence(tab(ONE, E, ONE)) == [0, 1, 2]
    for d in (1, 2):
        for n in range(1, 5):
            for t in all_tableaux(d, n):
                if size(t.shape) == n:
                    assert not any(p_sequence(t))


def test_p_can_be_negative():
    assert p_range(1, 3) == (0, 2)
    assert p_range(1, 4) == (-1, 3)
    assert p_range(2, 3, "hecke") == (0, 0)


def test_step_weight_examples():
    q2 = Q * Q
    assert step_weight(tab(), ONE, BMW1, "bmw") == 1
    assert step_weight(tab(), ONE, NW1, "nw") == 1
    assert step_weight(tab(ONE), TWO, BMW1, "bmw") == (q2 - 1 / q2) / (q2 - 1)
    v = NW1.v[0]
    assert step_weight(tab(ONE), E, NW1, "nw") == (4 * v * v - 1) / (-2 * v)


def test_first_step_weight_level_two():
    # for d ≥ 2 the empty profile still has g_0^t = 1 in the other components
    p = ParamSet("bmw", 2, (rat(5), rat(-7, 3)), q=Q)
    assert step_weight(tab(d=2), (((1,), ())), p, "bmw") == p.v[0] - p.v[1]
    assert step_weight(tab(d=2), (((), (1,))), p, "bmw") == p.v[1] - p.v[0]
    n = ParamSet("nw", 2, (rat(2, 7), rat(-4, 5)))
    assert step_weight(tab(d=2), (((1,), ())), n, "nw") == n.v[0] - n.v[1]


def test_weight_examples():
    q2 = Q * Q
    assert weight(tab(ONE), BMW1, "bmw") == 1
    assert weight(tab(ONE, E), BMW1, "bmw") == (1 / V - V * q2) * (1 / V - V / q2) / (1 / V - V)
    assert weight(tab(ONE, TWO), NW1, "nw") == 2


def test_literal_weight_differs_only_when_p_nonzero():
    for t in all_tableaux(1, 4):
        for k in range(t.n):
            lit = step_weight(t.prefix(k), t.steps[k], BMW1, "bmw", literal=True)
            cor = step_weight(t.prefix(k), t.steps[k], BMW1, "bmw")
            p = p_sequence(t)[k]
            move = t.moves()[k][1]
            factor = V**p if move == "add" else V ** (-(p - 1))
            assert cor == lit * factor
    t = tab(ONE, E, ONE)
    assert weight(t, BMW1, "bmw") / weight(t, BMW1, "bmw", literal=True) == V * V


def test_dimension_oracles():
    assert lambda_plus_square_sum(1, 2) == 3
    assert lambda_plus_square_sum(1, 3) == 15
    assert lambda_plus_square_sum(2, 2) == 12
    for d in (1, 2, 3):
        for n in (1, 2, 3):
            import math

            assert standard_square_sum(d, n) == d**n * math.factorial(n)
    assert standard_square_sum(2, 2) == 8


@pytest.mark.parametrize("variant", ["bmw", "nw"])
@pytest.mark.parametrize("d", [1, 2])
def test_weights_nonzero(variant, d):
    params = make_params(variant, d, n=4)
    for n in range(1, 5):
        for t in all_tableaux(d, n, variant):
            assert weight(t, params, variant) != 0


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 2), st.integers(0, 4), st.data())
def test_profile_and_index_identities(d, n, data):
    ts = all_tableaux(d, n) if n else (UpDownTableau((), d),)
    t = data.draw(st.sampled_from(ts))
    prof = diagonal_profile(t)
    assert sum(c for _, c in prof.added) - sum(c for _, c in prof.removed) == size(t.shape)
    g, gbar = g_indexes(prof)
    for s in range(1, d + 1):
        for k in range(-6, 7):
            dk = lambda j: prof.add_count(s, j)
            assert g[s].get(k, 0) == (k == 0) + dk(k - 1) + dk(k + 1) - 2 * dk(k)
            rk = lambda j: prof.remove_count(s, j)
            assert gbar[s].get(k, 0) == rk(k - 1) + rk(k + 1) - 2 * rk(k)
