import itertools

import pytest

from stm.hecke import (
    HeckeElt,
    bs_character,
    bs_character_raw,
    hecke_multiply,
    hom_pairing,
    kl_basis_element,
    kl_polynomial,
    kl_table,
)
from stm.laurent import LaurentPoly
from stm.rootdata import bruhat_leq, element, enumerate_weyl

v = LaurentPoly.monomial(1, var="v")
vinv = LaurentPoly.monomial(-1, var="v")


def test_kl_a3_singular_example(rs):
    A3 = rs("A", 3)
    assert kl_polynomial(element(A3, (1,)), element(A3, (1, 0, 2, 1))) == LaurentPoly.from_list([1, 1])


@pytest.mark.parametrize("t,n", [("A", 2), ("B", 2), ("G", 2)])
def test_dihedral_kl_trivial(rs, t, n):
    W = enumerate_weyl(rs(t, n))
    for x, w in itertools.product(W, W):
        expected = LaurentPoly.one() if bruhat_leq(x, w) else LaurentPoly.zero()
        assert kl_polynomial(x, w) == expected


@pytest.mark.parametrize("t,n", [("A", 3), ("B", 3), ("C", 3)])
def test_kl_degree_bound_and_positivity(rs, t, n):
    R = rs(t, n)
    T = kl_table(R)
    W = R.weyl
    for w in range(W.order):
        for x, P in T.column(w).items():
            assert P.nonnegative()
            if x == w:
                assert P == LaurentPoly.one()
            else:
                assert W.leq(x, w)
                assert 2 * P.degree() <= W.lengths[w] - W.lengths[x] - 1


def test_quadratic_relation(rs):
    R = rs("A", 2)
    Ts = HeckeElt.standard(R, 1)
    sq = hecke_multiply(Ts, Ts)
    # (T - v^-1)(T + v) = 0  <=>  T^2 = (v^-1 - v) T + 1
    assert sq.coefficient(1) == vinv - v
    assert sq.coefficient(0) == LaurentPoly.one("v")


def test_bs_character_examples(rs):
    A1, A2 = rs("A", 1), rs("A", 2)
    assert bs_character(A1, ()) == {0: LaurentPoly.one("v")}
    assert bs_character(A1, (0, 0)) == {1: v + vinv}
    W = A2.weyl
    sts, s = W.from_word((0, 1, 0)), W.from_word((0,))
    assert bs_character(A2, (0, 1, 0)) == {sts: LaurentPoly.one("v"), s: LaurentPoly.one("v")}


@pytest.mark.parametrize("word", [(0, 1, 0, 1), (1, 0, 2, 1), (0, 0, 1, 2, 1)])
def test_bs_character_mass(rs, word):
    R = rs("A", 3)
    assert bs_character_raw(R, word).specialize_one() == 2 ** len(word)


def test_kl_basis_matches_table(rs):
    R = rs("B", 2)
    w = R.weyl.longest
    b = kl_basis_element(w, R)
    for x in range(R.weyl.order):
        expected = LaurentPoly.monomial(R.weyl.lengths[w] - R.weyl.lengths[x], var="v")
        assert b.coefficient(x) == expected


def test_hom_pairing_examples(rs):
    A1, A2 = rs("A", 1), rs("A", 2)
    assert hom_pairing(A1, (0,), (0,)) == LaurentPoly.from_list([1, 0, 1])
    for t, n in [("A", 1), ("B", 2), ("G", 2)]:
        assert hom_pairing(rs(t, n), (), ()) == LaurentPoly.one()
    p = hom_pairing(A2, (0,), (1,))
    assert p[0] == 0 and not p.is_zero()


@pytest.mark.parametrize("t,n", [("A", 2), ("B", 2)])
def test_hom_pairing_swap_identity(rs, t, n):
    """Swapping arguments multiplies by q^(2(len a - len c)), from self-duality of BS(w) up to shift."""
    R = rs(t, n)
    words = [w for L in range(4) for w in itertools.product(range(n), repeat=L)]
    for a, c in itertools.product(words, words):
        assert hom_pairing(R, c, a) == hom_pairing(R, a, c).shift(2 * (len(a) - len(c)))


def test_hom_pairing_not_palindromic_in_general(rs):
    # Hom(Q, C) is concentrated in the top degree: no bar symmetry to hope for
    assert hom_pairing(rs("A", 1), (), (0,)) == LaurentPoly.monomial(2)
