from hypothesis import given, settings
from hypothesis import strategies as st

from fusionlab.algebra.params import ParamSet
from fusionlab.exact_arith import rat
from fusionlab.multipartitions import (
    ADD,
    REMOVE,
    Box,
    LevelShape,
    box_content,
    empty,
    enumerate_lambda_plus,
    multipartitions,
    neighbors,
    partitions,
)

BMW = ParamSet("bmw", 2, (rat(5), rat(-7, 3)), q=rat(2))
NW = ParamSet("nw", 2, (rat(2, 7), rat(-4, 5)))


def test_lambda_plus_small():
    assert enumerate_lambda_plus(1, 1) == [LevelShape(0, ((1,),))]
    assert enumerate_lambda_plus(2, 1) == [LevelShape(0, ((1,), ())), LevelShape(0, ((), (1,)))]
    assert set(enumerate_lambda_plus(1, 2)) == {LevelShape(0, ((2,),)), LevelShape(0, ((1, 1),)), LevelShape(1, ((),))}


def test_lambda_plus_count_d1():
    for n in range(1, 7):
        expected = sum(len(list(partitions(m))) for m in range(n % 2, n + 1, 2))
        shapes = enumerate_lambda_plus(1, n)
        assert len(shapes) == expected == len(set(shapes))


def test_neighbors_examples():
    assert [(b, dr) for b, dr, _ in neighbors(empty(2))] == [(Box(1, 1, 1), ADD), (Box(2, 1, 1), ADD)]
    nb = neighbors(((1,), ()))
    assert len(nb) == 4
    assert {(b, dr) for b, dr, _ in nb} == {(Box(1, 1, 2), ADD), (Box(1, 2, 1), ADD), (Box(2, 1, 1), ADD), (Box(1, 1, 1), REMOVE)}
    nb = neighbors(((2,),))
    assert {(b, dr) for b, dr, _ in nb} == {(Box(1, 1, 3), ADD), (Box(1, 2, 1), ADD), (Box(1, 1, 2), REMOVE)}


def test_neighbors_involution():
    shapes = [mu for m in range(5) for mu in multipartitions(m, 2)]
    for mu in shapes:
        for box, dr, nu in neighbors(mu):
            back = {(b, d, x) for b, d, x in neighbors(nu)}
            assert (box, REMOVE if dr == ADD else ADD, mu) in back


def test_contents_examples():
    v1, q = BMW.v[0], BMW.q
    assert box_content(Box(1, 1, 1), ADD, BMW, "bmw") == v1
    assert box_content(Box(1, 1, 2), REMOVE, BMW, "bmw") == 1 / (v1 * q * q)
    assert box_content(Box(2, 2, 1), ADD, NW, "nw") == NW.v[1] - 1


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 2), st.integers(1, 5), st.integers(1, 5))
def test_add_remove_contents_inverse(s, row, col):
    box = Box(s, row, col)
    assert box_content(box, ADD, BMW, "bmw") * box_content(box, REMOVE, BMW, "bmw") == 1
    assert box_content(box, ADD, NW, "nw") + box_content(box, REMOVE, NW, "nw") == 0
