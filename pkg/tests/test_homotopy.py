import pytest

from stm.homotopy import (
    NABLA_OFFSET,
    StandardFamily,
    cone,
    costandard_object,
    degrade_complex,
    delta_flag_multiplicities,
    direct_sum,
    ext_generation,
    ext_purity,
    ext_table,
    family,
    gate,
    heart,
    hom_complex,
    identity_chain,
    koszul_dual_index,
    koszul_numerics,
    minimalize,
    orthogonality_check,
    orthogonality_table,
    shift,
    standard_object,
    tate,
    weight_range,
    weight_triangle,
    weight_truncate,
    zero_chain,
)
from stm.laurent import LaurentPoly
from stm.smod import catalog


@pytest.fixture
def a1(rs):
    R = rs("A", 1)
    return R, catalog(R)


def test_tate_of_shift_on_heart(a1):
    R, cat = a1
    X = heart(cat, 1)
    Y = tate(shift(X, 2), 1)
    assert Y.census() == {(0, 1, -2): 1}


def test_shift_moves_terms(a1):
    R, cat = a1
    assert shift(heart(cat, 1), 1).census() == {(-1, 1, 0): 1}


def test_cone_of_zero_is_sum(a1):
    R, cat = a1
    X, Y = heart(cat, 1), heart(cat, 0, 2)
    C = cone(zero_chain(X, Y))
    assert C.census() == direct_sum(Y, shift(X, 1)).census()
    assert not C.d


def test_minimalize_contractible(rs):
    for t, n in [("A", 1), ("A", 2)]:
        cat = catalog(rs(t, n))
        X = standard_object(rs(t, n), 1)
        assert minimalize(cone(identity_chain(X))).is_zero()
        Y = heart(cat, 0, 2)
        M = minimalize(direct_sum(Y, cone(identity_chain(X))))
        assert M.census() == Y.census()


def test_delta_and_nabla_in_rank_one(a1):
    R, cat = a1
    D = standard_object(R, 1)
    N = costandard_object(R, 1)
    assert D.check() and N.check()
    # Delta_s = (D_s -> D_e) in degrees 0, 1; nabla_s = (D_e<2> -> D_s) in degrees -1, 0
    assert D.census() == {(0, 1, 0): 1, (1, 0, 0): 1}
    assert N.census() == {(-1, 0, 2): 1, (0, 1, 0): 1}
    assert standard_object(R, 0).census() == costandard_object(R, 0).census() == {(0, 0, 0): 1}


def test_hom_delta_nabla_rank_one(a1):
    R, _ = a1
    assert hom_complex(standard_object(R, 1), costandard_object(R, 1)) == {(0, 0): 1}
    assert hom_complex(standard_object(R, 0), costandard_object(R, 0)) == {(0, 0): 1}
    assert hom_complex(standard_object(R, 0), costandard_object(R, 1)) == {}


def test_hom_heart_rank_one(a1):
    """Hom(D_e, D_e(m)[n]) = End^{2m}(Q) in degree n = 2m: just the identity."""
    R, cat = a1
    assert hom_complex(heart(cat, 0), heart(cat, 0)) == {(0, 0): 1}
    # Hom(C, C<2m>[..]) with C = D_s: degrees 0 and 2 of End(C)
    assert hom_complex(heart(cat, 1), heart(cat, 1)) == {(0, 0): 1, (2, 1): 1}


def test_gate_freezes_offset(rs):
    assert gate([rs("A", 1), rs("A", 2)]) == NABLA_OFFSET == (0, 0)


@pytest.mark.parametrize("offset", [(1, 0), (0, 2), (-1, 2)])
def test_wrong_offset_breaks_orthogonality(rs, offset):
    R = rs("A", 1)
    fam = StandardFamily(R, offset)
    assert orthogonality_table(fam, 1, 1) != {(0, 0): 1}


def test_orthogonality_examples(rs):
    A2, B2 = rs("A", 2), rs("B", 2)
    assert orthogonality_check(A2, 0, 0, 6, 3)["ok"]
    w0 = B2.weyl.longest
    assert orthogonality_check(B2, w0, 0, 8, 4)["table"] == {}
    assert orthogonality_check(B2, 0, w0, 8, 4)["full_ok"]


def test_orthogonality_all_pairs_a2(rs):
    R = rs("A", 2)
    for x in range(6):
        for y in range(6):
            assert orthogonality_check(R, x, y, 6, 3)["full_ok"]


def test_weights(rs):
    R = rs("A", 2)
    cat = catalog(R)
    assert weight_range(heart(cat, 3)) == (0, 0)
    for w in range(6):
        l = R.weyl.lengths[w]
        assert weight_range(standard_object(R, w)) == (-l, 0)
        assert weight_range(costandard_object(R, w)) == (0, l)


def test_weight_triangle(rs):
    R = rs("A", 2)
    X = standard_object(R, R.weyl.longest)
    inc, pr = weight_triangle(X, -2)
    assert inc.check() and pr.check()
    A, B = inc.src, pr.tgt
    assert weight_range(A)[1] <= -2 and weight_range(B)[0] >= -1
    total = dict(A.census())
    for k, v in B.census().items():
        total[k] = total.get(k, 0) + v
    assert total == X.census()
    assert weight_truncate(X, ge=1).is_zero()


def test_census_rank_one(rs):
    R = rs("A", 1)
    assert delta_flag_multiplicities(R, 0)["census"] == {(0, 0, 0): 1}
    res = delta_flag_multiplicities(R, 1)
    assert res["census"] == {(0, 1, 0): 1, (1, 0, 0): 1}
    assert res["matches"]


@pytest.mark.parametrize("t,n", [("A", 2), ("B", 2)])
def test_census_matches_inverse_kl(rs, t, n):
    R = rs(t, n)
    for w in range(R.weyl.order):
        for co in (False, True):
            res = delta_flag_multiplicities(R, w, costandard=co)
            assert res["matches"] and res["no_cancellation"]


def test_degrade_delta_s(rs):
    R = rs("A", 1)
    got = degrade_complex(standard_object(R, 1))
    assert {i: p.evaluate(1) for i, p in got.items()} == {0: 2, 1: 1}
    assert degrade_complex(standard_object(R, 0)) == {0: LaurentPoly.one()}


def test_koszul_index_is_involution():
    for d in range(4):
        for n in range(-6, 7):
            for m in range(-3, 4):
                assert koszul_dual_index(*koszul_dual_index(n, m, d), d) == (n, m)
    # normalized by lengths it is the point map (q, p) -> (q - 2p, -p)
    assert koszul_dual_index(2, 1, 0) == (0, -1)


@pytest.mark.parametrize("t,n", [("A", 1), ("A", 2)])
def test_koszul_numerics_and_ext(rs, t, n):
    R = rs(t, n)
    assert koszul_numerics(R)["matched"]
    table = ext_table(R)
    assert ext_purity(table)
    gen = ext_generation(R)
    assert gen["degree0_identities"] and gen["nonnegative"] and gen["generated_in_degree_1"]


def test_families_cached(rs):
    R = rs("A", 2)
    assert family(R) is family(R)
