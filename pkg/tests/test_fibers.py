import itertools

import pytest

from stm.fibers import (
    all_galleries,
    fiber_poincare,
    fiber_polynomials,
    galleries,
    global_sum,
    local_character,
    whitney_tate_witness,
)
from stm.hecke import bs_character
from stm.laurent import LaurentPoly
from stm.rootdata import element

ONE = LaurentPoly.one()
ONE_PLUS_Q = LaurentPoly.from_list([1, 1])


def test_empty_word(rs):
    R = rs("A", 2)
    (g,) = galleries(R, (), 0)
    assert g.cell_dim == 0
    rep = whitney_tate_witness(R, ())
    assert len(rep["cells"]) == 1 and rep["total_check"]


def test_rank_one(rs):
    R = rs("A", 1)
    assert fiber_poincare(R, (0,), 0) == ONE
    assert fiber_poincare(R, (0,), 1) == ONE
    assert len(galleries(R, (0,), 0)) == 1
    # BS(s,s) -> P^1 is a P^1-bundle: both fibers are P^1, and (1+q)^2 = F_e + q F_s
    assert fiber_poincare(R, (0, 0), 0) == ONE_PLUS_Q
    assert fiber_poincare(R, (0, 0), 1) == ONE_PLUS_Q


def test_b2_length_four_report(rs):
    R = rs("B", 2)
    rep = whitney_tate_witness(R, (0, 1, 0, 1))
    assert len(rep["cells"]) == 8
    assert rep["total_check"] and rep["support_check"]
    assert all(c["affine_paved"] for c in rep["cells"])


@pytest.mark.parametrize("t,n", [("A", 2), ("B", 2), ("G", 2), ("A", 3)])
def test_global_sum(rs, t, n):
    R = rs(t, n)
    for L in range(5):
        for word in itertools.product(range(n), repeat=L):
            assert global_sum(R, word) == ONE_PLUS_Q ** L


def test_gallery_count(rs):
    R = rs("B", 2)
    assert len(all_galleries(R, (0, 1, 1, 0))) == 16


def test_local_character_dihedral(rs):
    for t, n in [("A", 2), ("B", 2)]:
        R = rs(t, n)
        W = R.weyl
        for x, w in itertools.product(range(W.order), repeat=2):
            assert local_character(R, x, w) == (ONE if W.leq(w, x) else LaurentPoly.zero())


def test_local_character_singular_a3(rs):
    R = rs("A", 3)
    x, w = element(R, (1, 0, 2, 1)), element(R, (1,))
    assert local_character(R, x, w) == LaurentPoly.from_list([1, 0, 1])


@pytest.mark.parametrize("t,n", [("A", 2), ("A", 3), ("B", 3)])
def test_fibers_refine_hecke_character(rs, t, n):
    """F_{word,y}(q^2) = sum_x m_x P_{y,x}(q^2) with m_x the BS multiplicities in q."""
    R = rs(t, n)
    W = R.weyl
    for word in [(0, 1, 0), (1, 0, 1, 0), tuple(range(n)) + tuple(range(n))]:
        F = fiber_polynomials(R, word)
        m = {x: p.rename("q").shift(len(word) - W.lengths[x]) for x, p in bs_character(R, word).items()}
        for y in range(W.order):
            rhs = LaurentPoly.zero()
            for x, mx in m.items():
                rhs = rhs + mx * local_character(R, x, y)
            assert F.get(y, LaurentPoly.zero()).substitute_power(2) == rhs
