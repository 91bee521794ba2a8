"""Mixed Tate motives over a point as bigraded dimension tables.

An object is ``dims[(q, p)] = n`` meaning ``Q(p)[q]`` with multiplicity n.
The heart is semisimple, so a dimension table is all there is.
"""

from __future__ import annotations

import json
import random
from typing import Iterable, Mapping

from .laurent import LaurentPoly


class BigradedVS:
    __slots__ = ("dims",)

    def __init__(self, dims: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        for (q, p), n in (dims or {}).items():
            if n < 0:
                raise ValueError("negative multiplicity")
            if n:
                clean[(int(q), int(p))] = int(n)
        self.dims = clean

    @classmethod
    def tate(cls, p: int = 0, q: int = 0, n: int = 1) -> "BigradedVS":
        """n copies of Q(p)[q]."""
        return cls({(q, p): n})

    def __add__(self, other: "BigradedVS") -> "BigradedVS":
        d = dict(self.dims)
        for k, n in other.dims.items():
            d[k] = d.get(k, 0) + n
        return BigradedVS(d)

    def __eq__(self, other):
        return isinstance(other, BigradedVS) and self.dims == other.dims

    def __hash__(self):
        return hash(tuple(sorted(self.dims.items())))

    def __repr__(self):
        return f"BigradedVS({self.to_json()})"

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.dims.get(key, 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def triples(self) -> list[list[int]]:
        return [[q, p, n] for (q, p), n in sorted(self.dims.items())]

    def to_json(self) -> str:
        return json.dumps(self.triples())

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable[int]]) -> "BigradedVS":
        d: dict[tuple[int, int], int] = {}
        for q, p, n in triples:
            d[(q, p)] = d.get((q, p), 0) + n
        return cls(d)


def hom_dims(a: BigradedVS, b: BigradedVS) -> BigradedVS:
    """Hom(A, B) placed at (0, 0); only matching summands contribute.

    The result is indexed like an object: Hom(Q(p)[q], Q(p')[q'])[k](j) with
    a nonzero table only at (0,0), i.e. internal Homs are not produced.
    """
    n = sum(k * b[key] for key, k in a.dims.items())
    return BigradedVS({(0, 0): n})


def tensor(a: BigradedVS, b: BigradedVS) -> BigradedVS:
    d: dict[tuple[int, int], int] = {}
    for (q1, p1), n1 in a.dims.items():
        for (q2, p2), n2 in b.dims.items():
            k = (q1 + q2, p1 + p2)
            d[k] = d.get(k, 0) + n1 * n2
    return BigradedVS(d)


def twist(a: BigradedVS, n: int) -> BigradedVS:
    return BigradedVS({(q, p + n): k for (q, p), k in a.dims.items()})


def shift(a: BigradedVS, n: int) -> BigradedVS:
    return BigradedVS({(q + n, p): k for (q, p), k in a.dims.items()})


def weight(q: int, p: int) -> int:
    return q - 2 * p


def weight_truncate(a: BigradedVS, le: int | None = None, ge: int | None = None) -> BigradedVS:
    """Summands with weight <= le and/or >= ge."""
    return BigradedVS(
        {
            (q, p): n
            for (q, p), n in a.dims.items()
            if (le is None or weight(q, p) <= le) and (ge is None or weight(q, p) >= ge)
        }
    )


def weights(a: BigradedVS) -> set[int]:
    return {weight(q, p) for (q, p) in a.dims}


def w_levine_truncate(a: BigradedVS, kind: str, n: int) -> BigradedVS:
    """Levine's weight t-structure: ``"W"`` (W_n), ``"above"`` (W^{>n}) or ``"gr"``.

    Q(-a) lies in W_n exactly when a <= n, i.e. -p <= n.
    """
    if kind == "W":
        keep = lambda p: -p <= n
    elif kind == "above":
        keep = lambda p: -p > n
    elif kind == "gr":
        keep = lambda p: -p == n
    else:
        raise ValueError(f"unknown truncation {kind!r}")
    return BigradedVS({(q, p): k for (q, p), k in a.dims.items() if keep(p)})


def koszul_index(q: int, p: int) -> tuple[int, int]:
    """Q(p)[q] -> Q(-p)[q - 2p]; additive extension of Q(n) -> Q(-n)[-2n]."""
    return q - 2 * p, -p


def koszul_point(a: BigradedVS) -> BigradedVS:
    d: dict[tuple[int, int], int] = {}
    for (q, p), n in a.dims.items():
        k = koszul_index(q, p)
        d[k] = d.get(k, 0) + n
    return BigradedVS(d)


def degrade(a: BigradedVS) -> LaurentPoly:
    """Forget the twist: coefficient of t^q is the total dimension in degree q."""
    d: dict[int, int] = {}
    for (q, _p), n in a.dims.items():
        d[q] = d.get(q, 0) + n
    return LaurentPoly(d, "t")


def motive_of_P1() -> BigradedVS:
    return BigradedVS({(0, 0): 1, (2, 1): 1})


def random_object(rng: random.Random, size: int = 4, spread: int = 4, mult: int = 3) -> BigradedVS:
    d = {}
    for _ in range(rng.randint(0, size)):
        d[(rng.randint(-spread, spread), rng.randint(-spread, spread))] = rng.randint(1, mult)
    return BigradedVS(d)
