"""Galleries and fiber polynomials of Bott-Samelson resolutions.

A gallery for a word (s_1..s_k) is a choice, letter by letter, of folding
(gamma_i = gamma_{i-1}) or crossing (gamma_i = gamma_{i-1} s_i).  The fiber of
the resolution over a point of the cell of w is paved by affine cells, one per
gallery ending at w.  A step contributes one affine direction exactly when
gamma_{i-1} s_i < gamma_{i-1}, whichever option is taken: over a point of the
cell of gamma_{i-1} the next P^1-factor then maps onto a line through the
point, and only one point of it stays in the smaller cell.
"""

from __future__ import annotations

import itertools
from math import comb
from dataclasses import dataclass
from typing import Sequence

from .hecke import kl_table
from .laurent import LaurentPoly
from .rootdata import RootSystem, WeylElt, demazure_product, serialize_word


@dataclass(frozen=True)
class Gallery:
    word: tuple[int, ...]
    choices: tuple[bool, ...]  # True = cross
    trajectory: tuple[int, ...]  # Weyl group indices, gamma_0 = e
    cell_dim: int

    @property
    def endpoint(self) -> int:
        return self.trajectory[-1]


def _walk(rs: RootSystem, word: Sequence[int], choices: Sequence[bool]) -> Gallery:
    W = rs.weyl
    g = 0
    traj = [0]
    dim = 0
    for s, cross in zip(word, choices):
        gs = W.rmul[g][s]
        if W.lengths[gs] < W.lengths[g]:
            dim += 1
        if cross:
            g = gs
        traj.append(g)
    return Gallery(tuple(word), tuple(choices), tuple(traj), dim)


def all_galleries(rs: RootSystem, word: Sequence[int]) -> list[Gallery]:
    return [_walk(rs, word, c) for c in itertools.product((False, True), repeat=len(word))]


def galleries(rs: RootSystem, word: Sequence[int], w: WeylElt | int) -> list[Gallery]:
    wi = w if isinstance(w, int) else w.index
    return [g for g in all_galleries(rs, word) if g.endpoint == wi]


def fiber_polynomials(rs: RootSystem, word: Sequence[int]) -> dict[int, LaurentPoly]:
    """w -> F_{word,w}(q) for all w with a nonempty fiber."""
    acc: dict[int, dict[int, int]] = {}
    for g in all_galleries(rs, word):
        d = acc.setdefault(g.endpoint, {})
        d[g.cell_dim] = d.get(g.cell_dim, 0) + 1
    return {w: LaurentPoly(c, "q") for w, c in sorted(acc.items())}


def fiber_poincare(rs: RootSystem, word: Sequence[int], w: WeylElt | int) -> LaurentPoly:
    wi = w if isinstance(w, int) else w.index
    return fiber_polynomials(rs, word).get(wi, LaurentPoly.zero("q"))


def global_sum(rs: RootSystem, word: Sequence[int]) -> LaurentPoly:
    W = rs.weyl
    total = LaurentPoly.zero("q")
    for w, f in fiber_polynomials(rs, word).items():
        total = total + f.shift(W.lengths[w])
    return total


def whitney_tate_witness(rs: RootSystem, word: Sequence[int]) -> dict:
    """Report per Bruhat cell: fiber polynomial and the global paving check."""
    W = rs.weyl
    polys = fiber_polynomials(rs, word)
    top = demazure_product(rs, word).index
    cells = [
        {"w": serialize_word(W.words[w]), "poly": p.serialize(), "affine_paved": True}
        for w, p in polys.items()
    ]
    expected = LaurentPoly({k: comb(len(word), k) for k in range(len(word) + 1)}, "q")
    return {
        "type": rs.name,
        "word": serialize_word(word),
        "cells": cells,
        "support_check": all(W.leq(w, top) for w in polys),
        "total_check": global_sum(rs, word) == expected,
    }


def local_character(rs: RootSystem, x: WeylElt | int, w: WeylElt | int) -> LaurentPoly:
    """Stalk dimension of D_x on the cell of w: P_{w,x}(q^2) (zero unless w <= x)."""
    xi = x if isinstance(x, int) else x.index
    wi = w if isinstance(w, int) else w.index
    return kl_table(rs).P(wi, xi).substitute_power(2)
