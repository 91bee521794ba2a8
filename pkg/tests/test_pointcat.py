import random

from stm.laurent import LaurentPoly
from stm.pointcat import (
    BigradedVS,
    degrade,
    hom_dims,
    koszul_point,
    motive_of_P1,
    random_object,
    shift,
    tensor,
    twist,
    w_levine_truncate,
    weight,
    weight_truncate,
    weights,
)

Q = BigradedVS.tate()


def T(p=0, q=0, n=1):
    return BigradedVS.tate(p, q, n)


def test_hom_diagonal_law():
    assert hom_dims(Q, Q)[(0, 0)] == 1
    assert hom_dims(Q, T(1, 2))[(0, 0)] == 0
    assert hom_dims(Q + T(1), T(1))[(0, 0)] == 1
    rng = random.Random(3)
    for _ in range(50):
        a, b = random_object(rng), random_object(rng)
        expected = sum(n * b[k] for k, n in a.dims.items())
        assert hom_dims(a, b)[(0, 0)] == expected


def test_tensor_twist_shift():
    assert tensor(T(1, 2), T(1, 2)) == T(2, 4)
    assert tensor(motive_of_P1(), motive_of_P1()) == BigradedVS({(0, 0): 1, (2, 1): 2, (4, 2): 1})
    assert twist(Q, 3) == T(3)
    assert shift(Q, -2) == T(0, -2)


def test_weights():
    assert weight(0, 0) == 0
    assert weight(2, 1) == 0
    assert weight_truncate(T(0, 1) + T(1, 0), le=0) == T(1, 0)
    assert weights(motive_of_P1()) == {0}


def test_levine_truncation():
    assert w_levine_truncate(Q, "gr", 0) == Q
    assert w_levine_truncate(T(-1, 3), "gr", 1) == T(-1, 3)
    assert w_levine_truncate(Q + T(-2), "W", 0) == Q
    rng = random.Random(5)
    for _ in range(30):
        a = random_object(rng)
        assert w_levine_truncate(a, "W", 1) + w_levine_truncate(a, "above", 1) == a


def test_koszul_point():
    assert koszul_point(Q) == Q
    assert koszul_point(T(1)) == T(-1, -2)
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(-5, 5)
        assert koszul_point(T(n)) == T(-n, -2 * n)
        a = random_object(rng)
        assert koszul_point(koszul_point(a)) == a


def test_degrade():
    assert degrade(T(5)) == LaurentPoly.one("t")
    assert degrade(motive_of_P1()) == LaurentPoly({0: 1, 2: 1}, "t")


def test_json_roundtrip():
    a = motive_of_P1() + T(-3, 1, 2)
    assert BigradedVS.from_triples(a.triples()) == a
