"""Root systems, Weyl groups, Bruhat order and parabolic quotients.

Simple reflections are 0-based internally (``s in range(rank)``); words are
serialized 1-based (Bourbaki numbering), with ``"e"`` for the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import UnsupportedType
from .laurent import LaurentPoly

SUPPORTED = {("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)}

_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: [2 * i for i in range(1, n + 1)],
    "C": lambda n: [2 * i for i in range(1, n + 1)],
    "D": lambda n: sorted([2 * i for i in range(1, n)] + [n]),
    "G": lambda n: [2, 6],
}


def _e(n: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


def _simple_roots(t: str, n: int) -> list[list[Fraction]]:
    if t == "A":
        return [_sub(_e(n + 1, i), _e(n + 1, i + 1)) for i in range(n)]
    if t in "BC":
        roots = [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)]
        last = _e(n, n - 1)
        roots.append(last if t == "B" else [2 * x for x in last])
        return roots
    if t == "D":
        roots = [_sub(_e(n, i), _e(n, i + 1)) for i in range(n - 1)]
        roots.append([a + b for a, b in zip(_e(n, n - 2), _e(n, n - 1))])
        return roots
    if t == "G":
        return [[Fraction(1), Fraction(-1), Fraction(0)], [Fraction(-2), Fraction(1), Fraction(1)]]
    raise UnsupportedType(f"{t}{n}")


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class RootSystem:
    cartan_type: str
    rank: int
    simple_roots: tuple[tuple[Fraction, ...], ...]
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]  # coordinates in the simple-root basis
    fundamental_degrees: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    def reflect(self, i: int, root: Sequence[int]) -> tuple[int, ...]:
        pairing = sum(self.cartan_matrix[i][j] * root[j] for j in range(self.rank))
        out = list(root)
        out[i] -= pairing
        return tuple(out)

    def reflection_matrix(self, i: int) -> tuple[tuple[int, ...], ...]:
        """Matrix of s_i on the simple-root basis (columns are s_i(alpha_j))."""
        n = self.rank
        m = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        for j in range(n):
            m[i][j] -= self.cartan_matrix[i][j]
        return tuple(tuple(r) for r in m)

    @cached_property
    def weyl(self) -> "WeylGroup":
        return WeylGroup(self)

    def __hash__(self):
        return hash((self.cartan_type, self.rank))

    def __eq__(self, other):
        return isinstance(other, RootSystem) and (self.cartan_type, self.rank) == (
            other.cartan_type,
            other.rank,
        )


def _positive_roots(cartan, n) -> list[tuple[int, ...]]:
    """Closure of the simple roots under simple reflections, positive half."""
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                pairing = sum(cartan[i][j] * r[j] for j in range(n))
                s = list(r)
                s[i] -= pairing
                s = tuple(s)
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
        frontier = nxt
    pos = [r for r in seen if all(c >= 0 for c in r)]
    return sorted(pos, key=lambda r: (sum(r), tuple(-c for c in r)))


@lru_cache(maxsize=None)
def build_root_system(cartan_type: str, rank: int) -> RootSystem:
    cartan_type = cartan_type.upper()
    if (cartan_type, rank) not in SUPPORTED:
        raise UnsupportedType(f"unsupported root system {cartan_type}{rank}")
    simple = _simple_roots(cartan_type, rank)
    cartan = tuple(
        tuple(int(2 * _dot(a, b) / _dot(a, a)) for b in simple) for a in simple
    )
    pos = _positive_roots(cartan, rank)
    return RootSystem(
        cartan_type=cartan_type,
        rank=rank,
        simple_roots=tuple(tuple(r) for r in simple),
        cartan_matrix=cartan,
        positive_roots=tuple(pos),
        fundamental_degrees=tuple(_DEGREES[cartan_type](rank)),
    )


def _matmul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def _apply(m, v):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) for i in range(len(m)))


class WeylGroup:
    """Finite Weyl group with elements indexed by position in (length, word) order."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = rs.rank
        gens = [rs.reflection_matrix(i) for i in range(n)]
        ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        mats = [ident]
        seen = {ident: 0}
        k = 0
        while k < len(mats):
            m = mats[k]
            for g in gens:
                p = _matmul(m, g)
                if p not in seen:
                    seen[p] = len(mats)
                    mats.append(p)
            k += 1
        pos = rs.positive_roots

        def length(m):
            return sum(1 for r in pos if any(c < 0 for c in _apply(m, r)))

        lengths = [length(m) for m in mats]
        tmp_index = seen
        lmul = [[tmp_index[_matmul(g, m)] for g in gens] for m in mats]

        def canonical(i):
            word = []
            while lengths[i] > 0:
                s = next(s for s in range(n) if lengths[lmul[i][s]] < lengths[i])
                word.append(s)
                i = lmul[i][s]
            return tuple(word)

        words = [canonical(i) for i in range(len(mats))]
        order = sorted(range(len(mats)), key=lambda i: (lengths[i], words[i]))
        remap = {old: new for new, old in enumerate(order)}
        self.matrices = [mats[i] for i in order]
        self.lengths = [lengths[i] for i in order]
        self.words = [words[i] for i in order]
        self.index = {m: i for i, m in enumerate(self.matrices)}
        self.word_index = {w: i for i, w in enumerate(self.words)}
        self.rmul = [[remap[seen[_matmul(mats[old], g)]] for g in gens] for old in order]
        self.lmul = [[remap[lmul[old][s]] for s in range(n)] for old in order]
        self.order = len(mats)
        self.longest = max(range(self.order), key=lambda i: self.lengths[i])
        self._lower: dict[int, int] = {}

    # -- basic element arithmetic on indices --------------------------------
    def from_word(self, word: Iterable[int]) -> int:
        i = 0
        for s in word:
            i = self.rmul[i][s]
        return i

    def mul(self, a: int, b: int) -> int:
        for s in self.words[b]:
            a = self.rmul[a][s]
        return a

    def inverse(self, a: int) -> int:
        return self.from_word(reversed(self.words[a]))

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.lengths[self.from_word(word)] == len(word)

    def lower_set(self, w: int) -> int:
        """Bitmask of {x : x <= w} via products of subwords of the canonical word."""
        got = self._lower.get(w)
        if got is not None:
            return got
        mask = 1
        for s in self.words[w]:
            add = 0
            m = mask
            while m:
                low = m & -m
                u = low.bit_length() - 1
                add |= 1 << self.rmul[u][s]
                m ^= low
            mask |= add
        self._lower[w] = mask
        return mask

    def leq(self, x: int, w: int) -> bool:
        return bool(self.lower_set(w) >> x & 1)

    def elt(self, i: int) -> "WeylElt":
        return WeylElt(self.words[i], self.lengths[i], self.matrices[i], self.rs)


@dataclass(frozen=True)
class WeylElt:
    word: tuple[int, ...]
    length: int
    matrix: tuple[tuple[int, ...], ...] = field(repr=False)
    rs: RootSystem = field(repr=False, compare=False)

    @property
    def index(self) -> int:
        return self.rs.weyl.word_index[self.word]

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        w = self.rs.weyl
        return w.elt(w.mul(self.index, other.index))

    def inverse(self) -> "WeylElt":
        w = self.rs.weyl
        return w.elt(w.inverse(self.index))

    def serialize(self) -> str:
        return serialize_word(self.word)

    def __str__(self):
        return self.serialize()


def serialize_word(word: Sequence[int]) -> str:
    if not word:
        return "e"
    return ",".join(str(s + 1) for s in word)


def parse_word(text: str, rank: int | None = None) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "e"):
        return ()
    word = tuple(int(t) - 1 for t in text.split(","))
    if rank is not None and any(s < 0 or s >= rank for s in word):
        raise ValueError(f"word {text!r} has letters outside 1..{rank}")
    return word


def element(rs: RootSystem, word: Sequence[int]) -> WeylElt:
    """The Weyl group element of any (not necessarily reduced) word."""
    w = rs.weyl
    return w.elt(w.from_word(word))


def normalize_word(rs: RootSystem, word: Sequence[int]) -> tuple[int, ...]:
    return element(rs, word).word


def enumerate_weyl(rs: RootSystem) -> list[WeylElt]:
    w = rs.weyl
    return [w.elt(i) for i in range(w.order)]


def bruhat_leq(x: WeylElt, y: WeylElt) -> bool:
    return x.rs.weyl.leq(x.index, y.index)


def demazure_product(rs: RootSystem, word: Sequence[int]) -> WeylElt:
    w = rs.weyl
    x = 0
    for s in word:
        xs = w.rmul[x][s]
        if w.lengths[xs] > w.lengths[x]:
            x = xs
    return w.elt(x)


def parabolic_quotient(rs: RootSystem, parabolic: Iterable[int] = ()) -> list[WeylElt]:
    """Minimal length representatives of the cosets w W_P."""
    P = sorted(set(parabolic))
    if any(s < 0 or s >= rs.rank for s in P):
        raise ValueError("parabolic subset out of range")
    w = rs.weyl
    return [
        w.elt(i)
        for i in range(w.order)
        if all(w.lengths[w.rmul[i][s]] > w.lengths[i] for s in P)
    ]


def parabolic_subgroup(rs: RootSystem, parabolic: Iterable[int]) -> list[int]:
    w = rs.weyl
    P = set(parabolic)
    return [i for i in range(w.order) if set(w.words[i]) <= P]


def poincare_polynomial(rs: RootSystem, parabolic: Iterable[int] = ()) -> LaurentPoly:
    c: dict[int, int] = {}
    for x in parabolic_quotient(rs, parabolic):
        c[x.length] = c.get(x.length, 0) + 1
    return LaurentPoly(c, "q")
