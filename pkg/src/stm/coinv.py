"""The coinvariant algebra C = Q[h]/(W-invariants of positive degree).

Polynomials are dicts ``exponent tuple -> fmpq`` in the simple roots
x_i = alpha_i.  Internal (cohomological) degree is twice the polynomial
degree.  C is materialized degree by degree: in each polynomial degree the
ideal is spanned by invariant x monomial products and the basis of C is the
lexicographically least set of monomials completing it.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import flint

from . import linalg as la
from .errors import DegenerateAveraging
from .laurent import LaurentPoly
from .rootdata import RootSystem, build_root_system, parabolic_quotient, poincare_polynomial

Poly = dict  # exponent tuple -> fmpq
Q = flint.fmpq


# -- polynomial arithmetic ---------------------------------------------------

def monomials(deg: int, n: int) -> list[tuple[int, ...]]:
    """Exponent tuples of total degree ``deg``, in ascending tuple order."""
    if n == 1:
        return [(deg,)]
    out = []
    for a in range(deg + 1):
        for rest in monomials(deg - a, n - 1):
            out.append((a,) + rest)
    return sorted(out)


def p_add(f: Poly, g: Poly, c=1) -> Poly:
    out = dict(f)
    for m, a in g.items():
        v = out.get(m, 0) + c * a
        if v == 0:
            out.pop(m, None)
        else:
            out[m] = v
    return out


def p_mul(f: Poly, g: Poly) -> Poly:
    out: dict = {}
    for m1, a1 in f.items():
        for m2, a2 in g.items():
            m = tuple(x + y for x, y in zip(m1, m2))
            out[m] = out.get(m, 0) + a1 * a2
    return {m: a for m, a in out.items() if a != 0}


def p_scale(f: Poly, c) -> Poly:
    if c == 0:
        return {}
    return {m: a * c for m, a in f.items()}


def p_degree_parts(f: Poly) -> dict[int, Poly]:
    parts: dict[int, Poly] = {}
    for m, a in f.items():
        parts.setdefault(sum(m), {})[m] = a
    return parts


def var(i: int, n: int) -> Poly:
    return {tuple(1 if j == i else 0 for j in range(n)): Q(1)}


def substitute(f: Poly, images: Sequence[Poly]) -> Poly:
    """f(x_1, ..., x_n) with x_j replaced by images[j]."""
    n = len(images)
    powers: dict[tuple[int, int], Poly] = {}

    def power(j, k):
        if (j, k) not in powers:
            powers[(j, k)] = {tuple([0] * n): Q(1)} if k == 0 else p_mul(power(j, k - 1), images[j])
        return powers[(j, k)]

    out: Poly = {}
    for m, a in f.items():
        term: Poly = {tuple([0] * n): a}
        for j, k in enumerate(m):
            if k:
                term = p_mul(term, power(j, k))
        out = p_add(out, term)
    return out


def act(matrix: Sequence[Sequence[int]], f: Poly) -> Poly:
    """Action of a Weyl group element given by its matrix on simple-root coordinates."""
    n = len(matrix)
    images = [{tuple(1 if t == k else 0 for t in range(n)): Q(matrix[k][j]) for k in range(n) if matrix[k][j] != 0} for j in range(n)]
    return substitute(f, images)


def derivative(f: Poly, i: int) -> Poly:
    out = {}
    for m, a in f.items():
        if m[i]:
            mm = list(m)
            mm[i] -= 1
            out[tuple(mm)] = a * m[i]
    return out


def evaluate(f: Poly, point: Sequence) -> flint.fmpq:
    total = Q(0)
    for m, a in f.items():
        t = a
        for x, k in zip(point, m):
            t *= Q(x) ** k
        total += t
    return total


def reflect_poly(rs: RootSystem, s: int, f: Poly) -> Poly:
    return act(rs.reflection_matrix(s), f)


def demazure_poly(rs: RootSystem, s: int, f: Poly) -> Poly:
    """(f - s f) / alpha_s; alpha_s is the variable x_s, so division is an exponent shift."""
    diff = p_add(f, reflect_poly(rs, s, f), -1)
    out = {}
    for m, a in diff.items():
        if m[s] == 0:
            raise ArithmeticError("divided difference is not exact")
        mm = list(m)
        mm[s] -= 1
        out[tuple(mm)] = a
    return out


# -- fundamental invariants ---------------------------------------------------

def reynolds(rs: RootSystem, f: Poly) -> Poly:
    W = rs.weyl
    total: Poly = {}
    for m in W.matrices:
        total = p_add(total, act(m, f))
    return p_scale(total, Q(1, W.order))


def _coords(f: Poly, index: dict) -> list:
    v = [Q(0)] * len(index)
    for m, a in f.items():
        v[index[m]] = a
    return v


@lru_cache(maxsize=None)
def _fundamental_invariants(cartan_type: str, rank: int, seed: int = 0) -> tuple:
    rs = build_root_system(cartan_type, rank)
    n = rs.rank
    degrees = sorted(rs.fundamental_degrees)
    chosen: list[tuple[int, Poly]] = []
    for d in sorted(set(degrees)):
        need = degrees.count(d)
        mons = monomials(d, n)
        index = {m: i for i, m in enumerate(mons)}
        rows = []
        # products of already chosen (lower degree) invariants landing in degree d
        lower = [(dd, f) for dd, f in chosen]
        for k in range(2, d // 2 + 1):
            for combo in itertools.combinations_with_replacement(range(len(lower)), k):
                if sum(lower[c][0] for c in combo) == d:
                    prod = {tuple([0] * n): Q(1)}
                    for c in combo:
                        prod = p_mul(prod, lower[c][1])
                    rows.append(_coords(prod, index))
        base_rank = la.rank(la.from_rows(rows, len(mons))) if rows else 0
        got = 0
        for m in mons:
            r = reynolds(rs, {m: Q(1)})
            if not r:
                continue
            trial = rows + [_coords(r, index)]
            rk = la.rank(la.from_rows(trial, len(mons)))
            if rk > base_rank:
                rows, base_rank = trial, rk
                chosen.append((d, r))
                got += 1
                if got == need:
                    break
        if got < need:
            raise DegenerateAveraging(f"{rs.name}: averaging produced too few invariants in degree {d}")
    polys = [f for _, f in chosen]
    _check_jacobian(polys, n, seed)
    return tuple(polys)


def _check_jacobian(polys: Sequence[Poly], n: int, seed: int, tries: int = 5) -> None:
    rng = random.Random(seed)
    for _ in range(tries):
        point = [Q(rng.randint(-50, 50), rng.randint(1, 20)) for _ in range(n)]
        jac = la.from_rows([[evaluate(derivative(f, i), point) for i in range(n)] for f in polys], n)
        if la.rank(jac) == n:
            return
    raise DegenerateAveraging("invariants look algebraically dependent (Jacobian rank deficient)")


def fundamental_invariants(rs: RootSystem) -> list[Poly]:
    """Homogeneous W-invariants of polynomial degrees d_1..d_r (internal 2 d_i)."""
    return [dict(f) for f in _fundamental_invariants(rs.cartan_type, rs.rank)]


# -- the coinvariant algebra ----------------------------------------------------

@dataclass
class _Piece:
    monomials: list[tuple[int, ...]]
    index: dict
    basis: list[tuple[int, ...]]
    reduce: flint.fmpq_mat  # len(basis) x len(monomials)


class CoinvariantAlgebra:
    """C with a monomial basis; elements are dicts ``basis index -> fmpq``."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.n = rs.rank
        self.invariants = fundamental_invariants(rs)
        self.top = len(rs.positive_roots)
        self.pieces: list[_Piece] = [self._piece(d) for d in range(self.top + 1)]
        self.basis: list[tuple[int, ...]] = []
        self.poly_degree: list[int] = []
        self._offset = []
        for d, piece in enumerate(self.pieces):
            self._offset.append(len(self.basis))
            self.basis.extend(piece.basis)
            self.poly_degree.extend([d] * len(piece.basis))
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.degrees = [2 * d for d in self.poly_degree]
        self.dim = len(self.basis)

    def _piece(self, d: int) -> _Piece:
        n = self.n
        mons = monomials(d, n)
        index = {m: i for i, m in enumerate(mons)}
        rows = []
        for f in self.invariants:
            fd = sum(next(iter(f)))
            if fd > d:
                continue
            for m in monomials(d - fd, n):
                rows.append(_coords(p_mul(f, {m: Q(1)}), index))
        if rows:
            ann = la.nullspace(la.from_rows(rows, len(mons)))
        else:
            ann = [[Q(1) if i == j else Q(0) for i in range(len(mons))] for j in range(len(mons))]
        if not ann:
            return _Piece(mons, index, [], la.zeros(0, len(mons)))
        K = la.from_rows(ann, len(mons))
        piv = la.pivot_columns(K)
        basis = [mons[j] for j in piv]
        red = la.submatrix(K, range(K.nrows()), piv).inv() * K
        return _Piece(mons, index, basis, red)

    # -- elements ---------------------------------------------------------
    def reduce(self, f: Poly) -> dict[int, flint.fmpq]:
        out: dict[int, flint.fmpq] = {}
        for d, part in p_degree_parts(f).items():
            if d > self.top:
                continue
            piece = self.pieces[d]
            if not piece.basis:
                continue
            col = la.Mat(len(piece.monomials), 1, _coords(part, piece.index))
            v = (piece.reduce * col).entries()
            off = self._offset[d]
            for k, c in enumerate(v):
                if c != 0:
                    out[off + k] = c
        return out

    def to_poly(self, c: dict[int, flint.fmpq]) -> Poly:
        return {self.basis[i]: a for i, a in c.items() if a != 0}

    def monomial(self, m: Sequence[int]) -> dict[int, flint.fmpq]:
        return self.reduce({tuple(m): Q(1)})

    def variable(self, i: int) -> dict[int, flint.fmpq]:
        return self.reduce(var(i, self.n))

    def multiply(self, a: dict, b: dict) -> dict:
        return self.reduce(p_mul(self.to_poly(a), self.to_poly(b)))

    def demazure(self, s: int, c: dict) -> dict:
        return self.reduce(demazure_poly(self.rs, s, self.to_poly(c)))

    def reflect(self, s: int, c: dict) -> dict:
        return self.reduce(reflect_poly(self.rs, s, self.to_poly(c)))

    def P(self, s: int) -> dict:
        """P_s = alpha_s / 2, so that the divided difference of P_s is 1."""
        return {self.index[tuple(1 if j == s else 0 for j in range(self.n))]: Q(1, 2)} if self.top else {}

    def split(self, s: int, c: dict) -> tuple[dict, dict]:
        """c = a + b P_s with a, b in C^s: b = d_s(c), a = c - d_s(c) P_s."""
        b = self.demazure(s, c)
        a = _add(c, self.multiply(b, self.P(s)), -1)
        return a, b

    # -- structure --------------------------------------------------------
    @cached_property
    def hilbert(self) -> LaurentPoly:
        c: dict[int, int] = {}
        for d in self.degrees:
            c[d] = c.get(d, 0) + 1
        return LaurentPoly(c, "q")

    @cached_property
    def mult_table(self) -> list[list[dict]]:
        return [[self.reduce(p_mul({a: Q(1)}, {b: Q(1)})) for b in self.basis] for a in self.basis]

    def indices_in_degree(self, internal: int) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == internal]

    def variable_action(self, i: int) -> flint.fmpq_mat:
        """Matrix of multiplication by x_i on C (dim x dim)."""
        m = la.zeros(self.dim, self.dim)
        for b, mono in enumerate(self.basis):
            mm = list(mono)
            mm[i] += 1
            for k, a in self.reduce({tuple(mm): Q(1)}).items():
                m[k, b] = a
        return m

    def reflection_action(self, s: int) -> flint.fmpq_mat:
        m = la.zeros(self.dim, self.dim)
        for b in range(self.dim):
            for k, a in self.reflect(s, {b: Q(1)}).items():
                m[k, b] = a
        return m

    def demazure_matrix(self, s: int) -> flint.fmpq_mat:
        m = la.zeros(self.dim, self.dim)
        for b in range(self.dim):
            for k, a in self.demazure(s, {b: Q(1)}).items():
                m[k, b] = a
        return m

    def serialize_element(self, c: dict) -> dict[str, str]:
        """Sparse monomial -> coefficient map with rational strings."""
        out = {}
        for i in sorted(c):
            if c[i] != 0:
                out["".join(f"x{j + 1}^{e}" for j, e in enumerate(self.basis[i]) if e) or "1"] = la.fmt(c[i])
        return out


def _add(a: dict, b: dict, c=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        x = out.get(k, 0) + c * v
        if x == 0:
            out.pop(k, None)
        else:
            out[k] = x
    return out


_ALGEBRAS: dict[tuple[str, int], CoinvariantAlgebra] = {}


def coinvariant_algebra(rs: RootSystem) -> CoinvariantAlgebra:
    key = (rs.cartan_type, rs.rank)
    if key not in _ALGEBRAS:
        _ALGEBRAS[key] = CoinvariantAlgebra(rs)
    return _ALGEBRAS[key]


def demazure(rs: RootSystem, s: int, f):
    """Divided difference on a polynomial (dict of monomials) or on an element of C."""
    if f and isinstance(next(iter(f)), tuple):
        return demazure_poly(rs, s, f)
    return coinvariant_algebra(rs).demazure(s, f)


# -- subalgebras ------------------------------------------------------------

@dataclass
class GradedSubalgebra:
    """A graded subalgebra of C given by a basis of C-elements."""

    ambient: CoinvariantAlgebra
    basis: list[dict]
    degrees: list[int]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def hilbert(self) -> LaurentPoly:
        c: dict[int, int] = {}
        for d in self.degrees:
            c[d] = c.get(d, 0) + 1
        return LaurentPoly(c, "q")

    def contains(self, c: dict) -> bool:
        C = self.ambient
        rows = [[v.get(i, Q(0)) for i in range(C.dim)] for v in self.basis]
        base = la.rank(la.from_rows(rows, C.dim)) if rows else 0
        rows.append([c.get(i, Q(0)) for i in range(C.dim)])
        return la.rank(la.from_rows(rows, C.dim)) == base


def _span_basis(C: CoinvariantAlgebra, columns: flint.fmpq_mat) -> tuple[list[dict], list[int]]:
    """Degree-wise basis of the column span of a degree-preserving operator image."""
    basis, degrees = [], []
    for d in sorted(set(C.degrees)):
        idx = C.indices_in_degree(d)
        vecs = []
        for j in range(columns.ncols()):
            v = [columns[i, j] for i in idx]
            if any(x != 0 for x in v):
                vecs.append(v)
        if not vecs:
            continue
        for k in la.independent_rows(vecs):
            basis.append({idx[t]: x for t, x in enumerate(vecs[k]) if x != 0})
            degrees.append(d)
    return basis, degrees


def invariant_subring(rs: RootSystem, s: int) -> GradedSubalgebra:
    """C^s as the image of the divided difference d_s (the image of R^s in C)."""
    C = coinvariant_algebra(rs)
    D = C.demazure_matrix(s)
    # columns of D have mixed degrees; split by the degree of the output
    basis, degrees = [], []
    for d in sorted(set(C.degrees)):
        idx = C.indices_in_degree(d)
        vecs = []
        for j in range(C.dim):
            v = [D[i, j] for i in idx]
            if any(x != 0 for x in v):
                vecs.append(v)
        for k in la.independent_rows(vecs):
            basis.append({idx[t]: x for t, x in enumerate(vecs[k]) if x != 0})
            degrees.append(d)
    return GradedSubalgebra(C, basis, degrees)


def partial_coinvariants(rs: RootSystem, parabolic: Iterable[int] = ()) -> GradedSubalgebra:
    """C^{W_P}: common fixed vectors of the simple reflections in P acting on C."""
    C = coinvariant_algebra(rs)
    P = sorted(set(parabolic))
    if not P:
        return GradedSubalgebra(C, [{i: Q(1)} for i in range(C.dim)], list(C.degrees))
    basis, degrees = [], []
    mats = [C.reflection_action(s) for s in P]
    for d in sorted(set(C.degrees)):
        idx = C.indices_in_degree(d)
        rows = []
        for m in mats:
            for a in idx:
                rows.append([m[a, b] - (1 if a == b else 0) for b in idx])
        for v in la.nullspace(la.from_rows(rows, len(idx))):
            basis.append({idx[t]: x for t, x in enumerate(v) if x != 0})
            degrees.append(d)
    return GradedSubalgebra(C, basis, degrees)


def expected_hilbert(rs: RootSystem, parabolic: Iterable[int] = ()) -> LaurentPoly:
    """Sum over W^P of q^(2 l(w)) -- the Poincare polynomial of G/P in q^2."""
    return poincare_polynomial(rs, parabolic).substitute_power(2)
