"""Hecke algebra oracle: Kazhdan-Lusztig polynomials, KL basis, BS characters.

Normalization: standard generators satisfy (T_s - v^-1)(T_s + v) = 0 and the
KL basis is b_w = sum_x v^(l(w)-l(x)) P_{x,w}(v^-2) T_x, so b_s = T_s + v.
KL polynomials live in the geometric variable q = v^2.  Graded dimensions of
modules use the cohomological variable, which is identified with v.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import NegativeStructureConstant
from .laurent import LaurentPoly
from .rootdata import RootSystem, WeylElt, WeylGroup

V_MINUS_VINV = LaurentPoly({-1: 1, 1: -1}, "v")


class HeckeElt:
    """Finitely supported map (Weyl group index) -> Laurent polynomial in v."""

    __slots__ = ("rs", "terms")

    def __init__(self, rs: RootSystem, terms: Mapping[int, LaurentPoly] | None = None):
        self.rs = rs
        self.terms = {w: p for w, p in (terms or {}).items() if not p.is_zero()}

    @classmethod
    def standard(cls, rs: RootSystem, w: int) -> "HeckeElt":
        return cls(rs, {w: LaurentPoly.one("v")})

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        t = dict(self.terms)
        for w, p in other.terms.items():
            t[w] = t[w] + p if w in t else p
        return HeckeElt(self.rs, t)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + other.scale(LaurentPoly.monomial(0, -1, "v"))

    def scale(self, c: LaurentPoly) -> "HeckeElt":
        return HeckeElt(self.rs, {w: p * c for w, p in self.terms.items()})

    def right_mul_generator(self, s: int) -> "HeckeElt":
        W = self.rs.weyl
        t: dict[int, LaurentPoly] = {}
        for x, c in self.terms.items():
            xs = W.rmul[x][s]
            t[xs] = t[xs] + c if xs in t else c
            if W.lengths[xs] < W.lengths[x]:
                extra = c * V_MINUS_VINV
                t[x] = t[x] + extra if x in t else extra
        return HeckeElt(self.rs, t)

    def __mul__(self, other: "HeckeElt") -> "HeckeElt":
        return hecke_multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, HeckeElt) and self.terms == other.terms

    def coefficient(self, w: int) -> LaurentPoly:
        return self.terms.get(w, LaurentPoly.zero("v"))

    def specialize_one(self):
        return sum(p.evaluate(1) for p in self.terms.values())

    def __repr__(self):
        W = self.rs.weyl
        parts = [f"({p})T[{W.words[w]}]" for w, p in sorted(self.terms.items())]
        return " + ".join(parts) or "0"


def hecke_multiply(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    W = a.rs.weyl
    out = HeckeElt(a.rs)
    for y, c in b.terms.items():
        part = a
        for s in W.words[y]:
            part = part.right_mul_generator(s)
        out = out + part.scale(c)
    return out


# -- Kazhdan-Lusztig polynomials -------------------------------------------

class KLTable:
    """Memoized P_{x,w} for one Weyl group, via the left-descent recursion."""

    def __init__(self, rs: RootSystem, descent_choice=None):
        self.rs = rs
        self.W: WeylGroup = rs.weyl
        self._cache: dict[int, dict[int, LaurentPoly]] = {}
        # picks the left descent s of w used in the recursion (default: first letter)
        self._choice = descent_choice or (lambda W, w: W.words[w][0])

    def column(self, w: int) -> dict[int, LaurentPoly]:
        """{x: P_{x,w}} for all x <= w."""
        got = self._cache.get(w)
        if got is not None:
            return got
        W = self.W
        one = LaurentPoly.one("q")
        if W.lengths[w] == 0:
            col = {0: one}
            self._cache[w] = col
            return col
        s = self._choice(W, w)
        v = W.lmul[w][s]
        assert W.lengths[v] < W.lengths[w]
        Pv = self.column(v)
        # mu-correction terms: z < v with s z < z
        corrections = []
        for z, pzv in Pv.items():
            if z == v or W.lengths[W.lmul[z][s]] > W.lengths[z]:
                continue
            m = self.mu_from(pzv, W.lengths[v] - W.lengths[z])
            if m:
                corrections.append((z, m, (W.lengths[w] - W.lengths[z]) // 2))
        col: dict[int, LaurentPoly] = {}
        lower = W.lower_set(w)
        for x in range(W.order):
            if not (lower >> x & 1):
                continue
            sx = W.lmul[x][s]
            c = 1 if W.lengths[sx] < W.lengths[x] else 0
            p = Pv.get(sx, LaurentPoly.zero("q")).shift(1 - c) + Pv.get(x, LaurentPoly.zero("q")).shift(c)
            for z, m, e in corrections:
                pxz = self.column(z).get(x)
                if pxz is not None:
                    p = p - pxz.shift(e) * m
            if not p.is_zero():
                col[x] = p
        self._cache[w] = col
        return col

    @staticmethod
    def mu_from(p: LaurentPoly, length_diff: int) -> int:
        if length_diff % 2 == 0:
            return 0
        return p[(length_diff - 1) // 2]

    def P(self, x: int, w: int) -> LaurentPoly:
        return self.column(w).get(x, LaurentPoly.zero("q"))

    def mu(self, x: int, w: int) -> int:
        return self.mu_from(self.P(x, w), self.W.lengths[w] - self.W.lengths[x])


_TABLES: dict[tuple[str, int], KLTable] = {}


def kl_table(rs: RootSystem) -> KLTable:
    key = (rs.cartan_type, rs.rank)
    if key not in _TABLES:
        _TABLES[key] = KLTable(rs)
    return _TABLES[key]


def kl_polynomial(x: WeylElt, w: WeylElt) -> LaurentPoly:
    return kl_table(x.rs).P(x.index, w.index)


def kl_basis_element(w: WeylElt | int, rs: RootSystem | None = None) -> HeckeElt:
    if isinstance(w, WeylElt):
        rs, w = w.rs, w.index
    W = rs.weyl
    lw = W.lengths[w]
    terms = {}
    for x, p in kl_table(rs).column(w).items():
        terms[x] = p.substitute_power(-2, "v").shift(lw - W.lengths[x])
    return HeckeElt(rs, terms)


def bs_character_raw(rs: RootSystem, word: Sequence[int]) -> HeckeElt:
    """The product b_{s1} ... b_{sk} in the standard basis."""
    out = HeckeElt.standard(rs, 0)
    v = LaurentPoly.monomial(1, 1, "v")
    for s in word:
        out = out.right_mul_generator(s) + out.scale(v)
    return out


def kl_expand(h: HeckeElt, check_positive: bool = True) -> dict[int, LaurentPoly]:
    """Coefficients m_x with h = sum_x m_x b_x (peeling from the longest term)."""
    rs = h.rs
    W = rs.weyl
    rest = HeckeElt(rs, h.terms)
    out: dict[int, LaurentPoly] = {}
    while rest.terms:
        x = max(rest.terms, key=lambda i: (W.lengths[i], i))
        c = rest.terms[x]
        out[x] = c
        rest = rest - kl_basis_element(x, rs).scale(c)
    if check_positive:
        for x, c in out.items():
            if not c.nonnegative():
                raise NegativeStructureConstant(
                    f"coefficient {c} of b_{W.words[x]} is not positive"
                )
    return out


def bs_character(rs: RootSystem, word: Sequence[int]) -> dict[int, LaurentPoly]:
    """KL-basis expansion of b_{s1} ... b_{sk}; positivity is enforced."""
    return kl_expand(bs_character_raw(rs, word))


def standard_pairing(a: HeckeElt, b: HeckeElt) -> LaurentPoly:
    """Bilinear form with (T_x, T_y) = delta_{xy}."""
    out = LaurentPoly.zero("v")
    for w, p in a.terms.items():
        if w in b.terms:
            out = out + p * b.terms[w]
    return out


def hom_pairing(rs: RootSystem, word1: Sequence[int], word2: Sequence[int]) -> LaurentPoly:
    """Predicted graded dimension of Hom(BS(word1), BS(word2)) in q (= v).

    Bott-Samelson modules sit in degrees [0, 2k], i.e. they are the self-dual
    objects shifted up by their length, which contributes q^(len2 - len1).
    """
    p = standard_pairing(bs_character_raw(rs, word1), bs_character_raw(rs, word2))
    return p.rename("q").shift(len(word2) - len(word1))


def inverse_standard_expansion(rs: RootSystem, w: int, inverse: bool = False) -> dict[int, LaurentPoly]:
    """KL-basis expansion of T_w (or of T_{w^-1}^{-1} when ``inverse``)."""
    W = rs.weyl
    h = HeckeElt.standard(rs, 0)
    tinv = LaurentPoly({1: 1, -1: -1}, "v")  # T_s^-1 = T_s + v - v^-1
    if inverse:
        for s in W.words[w]:
            h = h.right_mul_generator(s) + h.scale(tinv)
    else:
        h = HeckeElt.standard(rs, w)
    return kl_expand(h, check_positive=False)
