import itertools

import pytest

from stm.errors import UnsupportedType
from stm.laurent import LaurentPoly, q_integer
from stm.rootdata import (
    bruhat_leq,
    build_root_system,
    demazure_product,
    element,
    enumerate_weyl,
    normalize_word,
    parabolic_quotient,
    parse_word,
    poincare_polynomial,
    serialize_word,
)

SUPPORTED = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)]
CLASSICAL_ROOT_COUNT = {"A1": 2, "A2": 6, "A3": 12, "A4": 20, "B2": 8, "B3": 18, "C3": 18, "D4": 24, "G2": 12}


@pytest.mark.parametrize("t,n", SUPPORTED)
def test_root_counts_and_degrees(rs, t, n):
    R = rs(t, n)
    assert 2 * len(R.positive_roots) == CLASSICAL_ROOT_COUNT[R.name]
    prod = 1
    for d in R.fundamental_degrees:
        prod *= d
    assert prod == R.weyl.order


@pytest.mark.parametrize("t,n,roots,degrees", [("A", 1, 2, [2]), ("A", 2, 6, [2, 3]), ("G", 2, 12, [2, 6])])
def test_build_examples(rs, t, n, roots, degrees):
    R = rs(t, n)
    assert 2 * len(R.positive_roots) == roots
    assert list(R.fundamental_degrees) == degrees


@pytest.mark.parametrize("t,n", [("A", 5), ("E", 6), ("B", 1), ("C", 2)])
def test_unsupported(t, n):
    with pytest.raises(UnsupportedType):
        build_root_system(t, n)


def test_enumerate_small(rs):
    assert [e.length for e in enumerate_weyl(rs("A", 1))] == [0, 1]
    lens = [e.length for e in enumerate_weyl(rs("A", 2))]
    assert lens == [0, 1, 1, 2, 2, 3]
    B2 = enumerate_weyl(rs("B", 2))
    assert len(B2) == 8 and max(e.length for e in B2) == 4


@pytest.mark.parametrize("t,n", SUPPORTED)
def test_poincare_factorizes(rs, t, n):
    R = rs(t, n)
    prod = LaurentPoly.one()
    for d in R.fundamental_degrees:
        prod = prod * q_integer(d)
    assert poincare_polynomial(R) == prod
    W = enumerate_weyl(R)
    assert sum(1 for e in W if e.length == 0) == 1
    assert sum(1 for e in W if e.length == len(R.positive_roots)) == 1


def test_poincare_examples(rs):
    assert str(poincare_polynomial(rs("A", 1))) == "1+q"
    assert poincare_polynomial(rs("B", 2)) == LaurentPoly.from_list([1, 2, 2, 2, 1])


def test_bruhat_examples(rs):
    R = rs("A", 2)
    e, s, st, ts, sts = (element(R, w) for w in [(), (0,), (0, 1), (1, 0), (0, 1, 0)])
    assert all(bruhat_leq(e, x) for x in enumerate_weyl(R))
    assert bruhat_leq(s, sts)
    assert not bruhat_leq(st, ts)


@pytest.mark.parametrize("t,n", [("A", 2), ("B", 2), ("A", 3)])
def test_bruhat_is_partial_order_with_unit_covers(rs, t, n):
    W = enumerate_weyl(rs(t, n))
    for x, y in itertools.product(W, W):
        if bruhat_leq(x, y) and bruhat_leq(y, x):
            assert x == y
        if bruhat_leq(x, y) and x != y:
            assert x.length < y.length
    # a covering relation has length difference one
    for x, y in itertools.product(W, W):
        if bruhat_leq(x, y) and x != y:
            between = [z for z in W if z not in (x, y) and bruhat_leq(x, z) and bruhat_leq(z, y)]
            if not between:
                assert y.length - x.length == 1


def test_demazure_product(rs):
    A1, A2 = rs("A", 1), rs("A", 2)
    assert demazure_product(A1, ()).length == 0
    assert demazure_product(A1, (0, 0)) == element(A1, (0,))
    top = demazure_product(A2, (0, 1, 0, 1))
    assert top == element(A2, (0, 1, 0)) == element(A2, (1, 0, 1))
    B3 = rs("B", 3)
    word = (0, 1, 2, 1)
    assert demazure_product(B3, word) == element(B3, word)


@pytest.mark.parametrize("t,n", [("A", 2), ("A", 3), ("B", 3), ("G", 2)])
def test_canonical_word_independent_of_reduced_word(rs, t, n):
    R = rs(t, n)
    W = R.weyl
    for w in range(W.order):
        L = W.lengths[w]
        words = [wd for wd in itertools.product(range(n), repeat=L) if W.from_word(wd) == w]
        canon = {normalize_word(R, wd) for wd in words}
        assert canon == {W.words[w]}
        assert min(words) == W.words[w]
        assert normalize_word(R, W.words[w]) == W.words[w]


def test_parabolic_quotients(rs):
    assert len(parabolic_quotient(rs("A", 2), ())) == 6
    reps = parabolic_quotient(rs("A", 2), (0,))
    assert sorted(e.length for e in reps) == [0, 1, 2]
    assert len(parabolic_quotient(rs("A", 3), (0, 2))) == 6


def test_word_serialization():
    assert serialize_word(()) == "e"
    assert serialize_word((1, 0, 2, 1)) == "2,1,3,2"
    assert parse_word("2,1,3,2") == (1, 0, 2, 1)
    assert parse_word("e") == ()
    with pytest.raises(ValueError):
        parse_word("4", rank=3)
