import itertools

import pytest
from flint import fmpq as Q

from stm.coinv import (
    coinvariant_algebra,
    demazure,
    demazure_poly,
    expected_hilbert,
    fundamental_invariants,
    invariant_subring,
    p_add,
    p_mul,
    partial_coinvariants,
    reflect_poly,
    var,
)
from stm.laurent import LaurentPoly, q_integer

TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2)]


def _deg(f):
    return sum(next(iter(f)))


@pytest.mark.parametrize("t,n,degs", [("A", 1, [2]), ("A", 2, [2, 3]), ("B", 2, [2, 4]), ("G", 2, [2, 6])])
def test_fundamental_invariant_degrees(rs, t, n, degs):
    R = rs(t, n)
    inv = fundamental_invariants(R)
    assert sorted(_deg(f) for f in inv) == degs
    for f in inv:
        for s in range(n):
            assert reflect_poly(R, s, f) == f


def test_a1_invariant_is_x_squared(rs):
    (f,) = fundamental_invariants(rs("A", 1))
    assert list(f) == [(2,)]


@pytest.mark.parametrize("t,n", TYPES)
def test_dimension_and_hilbert(rs, t, n):
    R = rs(t, n)
    C = coinvariant_algebra(R)
    assert C.dim == R.weyl.order
    expected = LaurentPoly.one()
    for d in R.fundamental_degrees:
        expected = expected * q_integer(d, step=2)
    assert C.hilbert == expected


@pytest.mark.parametrize("t,n", [("A", 2), ("B", 2)])
def test_associative(rs, t, n):
    C = coinvariant_algebra(rs(t, n))
    e = [{i: Q(1)} for i in range(C.dim)]
    for a, b, c in itertools.product(e, e, e):
        assert C.multiply(C.multiply(a, b), c) == C.multiply(a, C.multiply(b, c))


@pytest.mark.parametrize("t,n", [("A", 2), ("B", 2), ("A", 3)])
def test_demazure_square_zero_and_leibniz(rs, t, n):
    R = rs(t, n)
    C = coinvariant_algebra(R)
    e = [{i: Q(1)} for i in range(C.dim)]
    for s in range(n):
        for a in e:
            assert C.demazure(s, C.demazure(s, a)) == {}
        for a, b in itertools.product(e, e):
            lhs = C.demazure(s, C.multiply(a, b))
            rhs = C.multiply(C.demazure(s, a), b)
            other = C.multiply(C.reflect(s, a), C.demazure(s, b))
            for k, v in other.items():
                rhs[k] = rhs.get(k, Q(0)) + v
            assert lhs == {k: v for k, v in rhs.items() if v != 0}


def test_divided_difference_of_P_is_one(rs):
    for t, n in TYPES:
        C = coinvariant_algebra(rs(t, n))
        for s in range(n):
            assert C.demazure(s, C.P(s)) == C.reduce({(0,) * n: Q(1)})


def test_divided_difference_by_hand_a1(rs):
    R = rs("A", 1)
    x = var(0, 1)
    # x is the simple root, s(x) = -x, so d(x) = (x - s(x)) / x = 2
    assert demazure_poly(R, 0, x) == {(0,): Q(2)}
    assert demazure(R, 0, p_mul(x, x)) == {}


def _braid(C, word, a):
    for s in reversed(word):
        a = C.demazure(s, a)
    return a


@pytest.mark.parametrize("t,n,m", [("A", 2, 3), ("B", 2, 4), ("G", 2, 6)])
def test_braid_relations(rs, t, n, m):
    C = coinvariant_algebra(rs(t, n))
    w1 = tuple((0, 1)[k % 2] for k in range(m))
    w2 = tuple((1, 0)[k % 2] for k in range(m))
    for i in range(C.dim):
        assert _braid(C, w1, {i: Q(1)}) == _braid(C, w2, {i: Q(1)})


def test_invariant_subring_and_split(rs):
    R = rs("A", 2)
    C = coinvariant_algebra(R)
    for s in range(2):
        sub = invariant_subring(R, s)
        assert sub.dim * 2 == C.dim
        for i in range(C.dim):
            a, b = C.split(s, {i: Q(1)})
            assert sub.contains(a) and sub.contains(b)
            back = dict(a)
            for k, v in C.multiply(b, C.P(s)).items():
                back[k] = back.get(k, Q(0)) + v
            assert {k: v for k, v in back.items() if v != 0} == {i: Q(1)}


@pytest.mark.parametrize("t,n,P", [("A", 2, (0,)), ("A", 3, (0, 2)), ("B", 2, (1,)), ("A", 3, (0, 1, 2))])
def test_partial_flag_hilbert(rs, t, n, P):
    R = rs(t, n)
    assert partial_coinvariants(R, P).hilbert == expected_hilbert(R, P)
