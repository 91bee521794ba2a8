"""Graded modules over the coinvariant algebra and the Soergel module toolkit.

A module stores, per internal degree d, the dimension of M_d and for each
variable x_i a matrix M_d -> M_{d+2}.  Everything is exact over Q.
``M.shift(k)`` is M<k> with (M<k>)_d = M_{d-k}.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import flint

from . import linalg as la
from .coinv import (
    Q,
    coinvariant_algebra,
    demazure_poly,
    p_add,
    p_mul,
    p_scale,
    var,
)
from .errors import NonSplitSemisimpleQuotient
from .laurent import LaurentPoly
from .rootdata import RootSystem, serialize_word

Mat = flint.fmpq_mat


def _zero(r, c):
    return Mat(r, c)


class GradedModule:
    """Finite-dimensional graded C-module given by variable actions."""

    def __init__(self, rs: RootSystem, dims: dict[int, int], actions: Sequence[dict[int, Mat]], label: str = ""):
        self.rs = rs
        self.dims = {d: n for d, n in sorted(dims.items()) if n}
        self.actions = tuple(
            {d: m for d, m in sorted(a.items()) if d in self.dims and d + 2 in self.dims} for a in actions
        )
        self.label = label

    # -- basic data --------------------------------------------------------
    @property
    def degrees(self) -> list[int]:
        return list(self.dims)

    @property
    def dim(self) -> int:
        return sum(self.dims.values())

    def n(self, d: int) -> int:
        return self.dims.get(d, 0)

    @cached_property
    def grdim(self) -> LaurentPoly:
        return LaurentPoly(self.dims, "q")

    def act(self, i: int, d: int) -> Mat:
        m = self.actions[i].get(d)
        if m is None:
            return _zero(self.n(d + 2), self.n(d))
        return m

    def low(self) -> int:
        return min(self.dims) if self.dims else 0

    def shift(self, k: int, label: str | None = None) -> "GradedModule":
        if k == 0 and label is None:
            return self
        return GradedModule(
            self.rs,
            {d + k: n for d, n in self.dims.items()},
            [{d + k: m for d, m in a.items()} for a in self.actions],
            self.label if label is None else label,
        )

    def poly_action(self, f: dict, d: int) -> Mat:
        """Matrix of a homogeneous polynomial acting M_d -> M_{d + 2 deg f}."""
        if not f:
            return None
        e = sum(next(iter(f)))
        out = _zero(self.n(d + 2 * e), self.n(d))
        for mono, c in f.items():
            m = la.identity(self.n(d))
            deg = d
            for i, k in enumerate(mono):
                for _ in range(k):
                    m = self.act(i, deg) * m
                    deg += 2
            out = out + m * c
        return out

    def check(self) -> bool:
        """Actions commute and every fundamental invariant acts by zero."""
        r = self.rs.rank
        for d in self.degrees:
            for i in range(r):
                for j in range(i + 1, r):
                    if self.act(i, d + 2) * self.act(j, d) != self.act(j, d + 2) * self.act(i, d):
                        return False
            for f in coinvariant_algebra(self.rs).invariants:
                m = self.poly_action(f, d)
                if m is not None and not la.is_zero(m):
                    return False
        return True

    def serialize(self) -> dict:
        return {
            "label": self.label,
            "dims": {str(d): n for d, n in self.dims.items()},
            "actions": [
                {str(d): [[la.fmt(x) for x in row] for row in m.tolist()] for d, m in a.items()}
                for a in self.actions
            ],
        }

    def content_hash(self) -> str:
        blob = json.dumps([self.rs.name, self.serialize()], sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()

    def __repr__(self):
        return f"GradedModule({self.label or '?'}, {self.grdim})"


def direct_sum(mods: Sequence[GradedModule], label: str = "") -> GradedModule:
    rs = mods[0].rs
    degrees = sorted({d for m in mods for d in m.dims})
    dims = {d: sum(m.n(d) for m in mods) for d in degrees}
    actions = []
    for i in range(rs.rank):
        a = {}
        for d in degrees:
            if d + 2 not in dims:
                continue
            blocks = {(k, k): m.act(i, d) for k, m in enumerate(mods)}
            a[d] = la.block_matrix([m.n(d + 2) for m in mods], [m.n(d) for m in mods], blocks)
        actions.append(a)
    return GradedModule(rs, dims, actions, label)


@dataclass
class ModuleMap:
    """Homogeneous module map of internal degree ``degree``: blocks[d]: src_d -> tgt_{d+degree}."""

    src: GradedModule
    tgt: GradedModule
    degree: int
    blocks: dict[int, Mat] = field(default_factory=dict)

    def block(self, d: int) -> Mat:
        b = self.blocks.get(d)
        if b is None:
            return _zero(self.tgt.n(d + self.degree), self.src.n(d))
        return b

    def compose(self, first: "ModuleMap") -> "ModuleMap":
        """self o first."""
        out = {}
        for d in first.src.degrees:
            mid = d + first.degree
            if self.tgt.n(mid + self.degree) and first.src.n(d):
                out[d] = self.block(mid) * first.block(d)
        return ModuleMap(first.src, self.tgt, first.degree + self.degree, out)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.src, self.tgt, self.degree, {d: self.block(d) + other.block(d) for d in self.src.degrees if self.tgt.n(d + self.degree)})

    def scale(self, c) -> "ModuleMap":
        return ModuleMap(self.src, self.tgt, self.degree, {d: b * c for d, b in self.blocks.items()})

    def is_zero(self) -> bool:
        return all(la.is_zero(b) for b in self.blocks.values())

    def check(self) -> bool:
        for i in range(self.src.rs.rank):
            for d in self.src.degrees:
                lhs = self.tgt.act(i, d + self.degree) * self.block(d)
                rhs = self.block(d + 2) * self.src.act(i, d)
                if lhs != rhs:
                    return False
        return True

    def is_iso(self) -> bool:
        if self.degree != 0 or self.src.dims != self.tgt.dims:
            return False
        return all(self.block(d).det() != 0 for d in self.src.degrees)


def identity_map(M: GradedModule) -> ModuleMap:
    return ModuleMap(M, M, 0, {d: la.identity(n) for d, n in M.dims.items()})


def zero_map(M: GradedModule, N: GradedModule, degree: int = 0) -> ModuleMap:
    return ModuleMap(M, N, degree, {})


# -- constructions ------------------------------------------------------------

def point_module(rs: RootSystem) -> GradedModule:
    return GradedModule(rs, {0: 1}, [{} for _ in range(rs.rank)], "Q")


def regular_module(rs: RootSystem) -> GradedModule:
    """C acting on itself."""
    C = coinvariant_algebra(rs)
    dims: dict[int, int] = {}
    for d in C.degrees:
        dims[d] = dims.get(d, 0) + 1
    actions = []
    for i in range(rs.rank):
        full = C.variable_action(i)
        a = {}
        for d in dims:
            if d + 2 in dims:
                a[d] = la.submatrix(full, C.indices_in_degree(d + 2), C.indices_in_degree(d))
        actions.append(a)
    return GradedModule(rs, dims, actions, "C")


@dataclass(frozen=True)
class _ThetaData:
    b: list  # d_s(x_i), rational
    a: list  # x_i - b P_s (polynomials)
    a2: list  # x_i P_s - b2 P_s
    b2: list  # d_s(x_i P_s)


def _theta_data(rs: RootSystem, s: int) -> _ThetaData:
    n = rs.rank
    Ps = p_scale(var(s, n), Q(1, 2))
    bs, as_, a2s, b2s = [], [], [], []
    for i in range(n):
        xi = var(i, n)
        b = demazure_poly(rs, s, xi)
        bval = b.get(tuple([0] * n), Q(0))
        bs.append(bval)
        as_.append(p_add(xi, p_scale(Ps, bval), -1))
        xp = p_mul(xi, Ps)
        b2 = demazure_poly(rs, s, xp)
        b2s.append(b2)
        a2s.append(p_add(xp, p_mul(b2, Ps), -1))
    return _ThetaData(bs, as_, a2s, b2s)


def theta(s: int, M: GradedModule, label: str | None = None) -> GradedModule:
    """C tensor_{C^s} M with basis (1 (x) m) in degree d, (P_s (x) m) in degree d+2."""
    rs = M.rs
    td = _theta_data(rs, s)
    degrees = sorted(set(M.degrees) | {d + 2 for d in M.degrees})
    dims = {d: M.n(d) + M.n(d - 2) for d in degrees}

    def pa(f, d, rows):
        m = M.poly_action(f, d) if f else None
        return m if m is not None else _zero(rows, M.n(d))

    actions = []
    for i in range(rs.rank):
        a = {}
        for d in degrees:
            if d + 2 not in dims:
                continue
            blocks = {
                (0, 0): pa(td.a[i], d, M.n(d + 2)),
                (0, 1): pa(td.a2[i], d - 2, M.n(d + 2)),
                (1, 0): la.identity(M.n(d)) * td.b[i],
                (1, 1): pa(td.b2[i], d - 2, M.n(d)),
            }
            a[d] = la.block_matrix([M.n(d + 2), M.n(d)], [M.n(d), M.n(d - 2)], blocks)
        actions.append(a)
    name = label if label is not None else f"theta{s + 1}({M.label})"
    return GradedModule(rs, dims, actions, name)


def theta_map(s: int, f: ModuleMap, src: GradedModule | None = None, tgt: GradedModule | None = None) -> ModuleMap:
    """id_C (x) f between theta_s(src) and theta_s(tgt)."""
    src = src or theta(s, f.src)
    tgt = tgt or theta(s, f.tgt)
    k = f.degree
    out = {}
    for d in src.degrees:
        if not tgt.n(d + k):
            continue
        out[d] = la.block_matrix(
            [f.tgt.n(d + k), f.tgt.n(d + k - 2)],
            [f.src.n(d), f.src.n(d - 2)],
            {(0, 0): f.block(d), (1, 1): f.block(d - 2)},
        )
    return ModuleMap(src, tgt, k, out)


def counit(s: int, M: GradedModule, TM: GradedModule | None = None) -> ModuleMap:
    """theta_s M -> M, 1 (x) m -> m, P_s (x) m -> P_s m."""
    TM = TM or theta(s, M)
    Ps = p_scale(var(s, M.rs.rank), Q(1, 2))
    out = {}
    for d in TM.degrees:
        if not M.n(d):
            continue
        ps = M.poly_action(Ps, d - 2) if M.n(d - 2) else _zero(M.n(d), 0)
        out[d] = la.hstack([la.identity(M.n(d)), ps], M.n(d))
    return ModuleMap(TM, M, 0, out)


def unit(s: int, M: GradedModule, TM: GradedModule | None = None) -> ModuleMap:
    """M<2> -> theta_s M, m -> 1 (x) P_s m + P_s (x) m."""
    TM = TM or theta(s, M)
    src = M.shift(2)
    Ps = p_scale(var(s, M.rs.rank), Q(1, 2))
    out = {}
    for d in src.degrees:
        # m in M_{d-2}; image in (theta M)_d = M_d + M_{d-2}
        top = M.poly_action(Ps, d - 2) if M.n(d) else _zero(0, M.n(d - 2))
        out[d] = la.vstack([top, la.identity(M.n(d - 2))], M.n(d - 2))
    return ModuleMap(src, TM, 0, out)


def bott_samelson(rs: RootSystem, word: Sequence[int]) -> GradedModule:
    M = point_module(rs)
    for s in word:
        M = theta(s, M)
    M.label = f"BS({serialize_word(word)})"
    return M


# -- homs ---------------------------------------------------------------------

def _hom_system(M: GradedModule, N: GradedModule, k: int):
    """Unknown layout and constraint matrix for degree-k maps M -> N."""
    layout = {}
    off = 0
    for d in M.degrees:
        rows = N.n(d + k)
        if rows:
            layout[d] = (off, rows, M.n(d))
            off += rows * M.n(d)
    eqs: list[dict[int, flint.fmpq]] = []
    if not off:
        return layout, off, None
    for i in range(M.rs.rank):
        for d in M.degrees:
            t = d + k + 2
            nt = N.n(t)
            if not nt:
                continue
            ms = M.n(d)
            left = layout.get(d)
            right = layout.get(d + 2)
            if left is None and right is None:
                continue
            XN = N.act(i, d + k).tolist() if left else None
            XM = M.act(i, d).tolist() if right else None
            for r in range(nt):
                for c in range(ms):
                    row: dict[int, flint.fmpq] = {}
                    if left:
                        o, nr, nc = left
                        for j, x in enumerate(XN[r]):
                            if x != 0:
                                key = o + j * nc + c
                                row[key] = row.get(key, 0) + x
                    if right:
                        o, nr, nc = right
                        for j in range(nc):
                            x = XM[j][c]
                            if x != 0:
                                key = o + r * nc + j
                                row[key] = row.get(key, 0) - x
                    row = {a: b for a, b in row.items() if b != 0}
                    if row:
                        eqs.append(row)
    if not eqs:
        return layout, off, None
    A = Mat(len(eqs), off)
    for r, row in enumerate(eqs):
        for c, x in row.items():
            A[r, c] = x
    return layout, off, A


def hom_degree_range(M: GradedModule, N: GradedModule) -> range:
    if not M.dims or not N.dims:
        return range(0)
    return range(min(N.dims) - max(M.dims), max(N.dims) - min(M.dims) + 1)


def hom_dim(M: GradedModule, N: GradedModule, k: int) -> int:
    layout, nvars, A = _hom_system(M, N, k)
    if not nvars:
        return 0
    return nvars - (la.rank(A) if A is not None else 0)


def hom_basis(M: GradedModule, N: GradedModule, k: int = 0) -> list[ModuleMap]:
    layout, nvars, A = _hom_system(M, N, k)
    if not nvars:
        return []
    if A is None:
        vecs = [[Q(1) if i == j else Q(0) for i in range(nvars)] for j in range(nvars)]
    else:
        vecs = la.nullspace(A)
    out = []
    for v in vecs:
        blocks = {d: Mat(nr, nc, v[o : o + nr * nc]) for d, (o, nr, nc) in layout.items()}
        out.append(ModuleMap(M, N, k, blocks))
    return out


def graded_hom(M: GradedModule, N: GradedModule) -> LaurentPoly:
    """Graded dimension of Hom(M, N): coefficient of q^k counts maps raising degree by k."""
    return LaurentPoly({k: hom_dim(M, N, k) for k in hom_degree_range(M, N)}, "q")


# -- endomorphism algebra and Krull-Schmidt ----------------------------------------

@dataclass
class EndRing:
    module: GradedModule
    basis: list[dict[int, Mat]]  # degree-0 endomorphisms as per-degree blocks

    @property
    def dim(self) -> int:
        return len(self.basis)

    def structure_constants(self) -> list[list[list[flint.fmpq]]]:
        """c[i][j] = coordinates of basis[i] * basis[j]."""
        flat = [self._flat(b) for b in self.basis]
        coords = la.Coordinates(flat)
        return [[coords(self._flat(_mul(a, b))) for b in self.basis] for a in self.basis]

    def _flat(self, e: dict[int, Mat]) -> list:
        out = []
        for d in self.module.degrees:
            out.extend(e[d].entries())
        return out

    def radical_dim(self) -> int:
        return self.dim - la.rank(self.trace_form())

    def trace_form(self) -> Mat:
        """(a, b) -> trace of ab on the module; its radical is the Jacobson radical."""
        r = self.dim
        G = Mat(r, r)
        for i in range(r):
            for j in range(i, r):
                t = sum((_trace(self.basis[i][d] * self.basis[j][d]) for d in self.module.degrees), Q(0))
                G[i, j] = t
                G[j, i] = t
        return G


def _mul(a: dict[int, Mat], b: dict[int, Mat]) -> dict[int, Mat]:
    return {d: a[d] * b[d] for d in a}


def _trace(m: Mat):
    return sum((m[i, i] for i in range(m.nrows())), Q(0))


def end_ring(M: GradedModule) -> EndRing:
    basis = []
    for f in hom_basis(M, M, 0):
        basis.append({d: f.block(d) for d in M.degrees})
    return EndRing(M, basis)


@dataclass
class Summand:
    """A direct summand S of a module M with incl: S -> M and proj: M -> S, proj o incl = id."""

    module: GradedModule
    incl: ModuleMap
    proj: ModuleMap


def _restrict(M: GradedModule, cols: dict[int, Mat], rows: dict[int, Mat], label: str) -> GradedModule:
    dims = {d: c.ncols() for d, c in cols.items() if c.ncols()}
    actions = []
    for i in range(M.rs.rank):
        a = {}
        for d in dims:
            if d + 2 in dims:
                a[d] = rows[d + 2] * M.act(i, d) * cols[d]
        actions.append(a)
    return GradedModule(M.rs, dims, actions, label)


def _fitting_split(M: GradedModule, b: dict[int, Mat]):
    """Image and kernel of b^N (N large): two complementary submodules."""
    img, ker = {}, {}
    for d, n in M.dims.items():
        p = b[d]
        for _ in range(n.bit_length()):  # b^(2^k) with 2^k >= n: kernel and image have stabilized
            p = p * p
        piv = la.pivot_columns(p)
        img[d] = la.submatrix(p, range(n), piv)
        kv = la.nullspace(p)
        ker[d] = Mat(n, len(kv), [kv[j][i] for i in range(n) for j in range(len(kv))]) if kv else Mat(n, 0)
    return img, ker


def _split(M: GradedModule, b: dict[int, Mat]) -> tuple[Summand, Summand]:
    img, ker = _fitting_split(M, b)
    inv = {}
    for d, n in M.dims.items():
        basis = la.hstack([img[d], ker[d]], n)
        inv[d] = basis.inv()
    rows_img, rows_ker = {}, {}
    for d, n in M.dims.items():
        ki = img[d].ncols()
        rows_img[d] = la.submatrix(inv[d], range(ki), range(n))
        rows_ker[d] = la.submatrix(inv[d], range(ki, n), range(n))
    out = []
    for cols, rows in ((img, rows_img), (ker, rows_ker)):
        S = _restrict(M, cols, rows, "")
        incl = ModuleMap(S, M, 0, {d: cols[d] for d in S.degrees})
        proj = ModuleMap(M, S, 0, {d: rows[d] for d in S.degrees})
        out.append(Summand(S, incl, proj))
    return out[0], out[1]


def _charpoly(e: dict[int, Mat]) -> flint.fmpq_poly:
    out = flint.fmpq_poly([1])
    for m in e.values():
        if m.nrows():
            out = out * m.charpoly()
    return out


def _poly_eval(p: flint.fmpq_poly, e: dict[int, Mat]) -> dict[int, Mat]:
    coeffs = p.coeffs()
    out = {}
    for d, m in e.items():
        n = m.nrows()
        acc = Mat(n, n)
        for c in reversed(coeffs):
            acc = acc * m + la.identity(n) * c
        out[d] = acc
    return out


def is_indecomposable(M: GradedModule) -> bool:
    E = end_ring(M)
    if E.dim <= 1:
        return E.dim == 1
    return la.rank(E.trace_form()) == 1


def _splitting_element(M: GradedModule, E: EndRing, seed: int = 0) -> dict[int, Mat] | None:
    """An endomorphism with at least two distinct irreducible factors in its characteristic polynomial."""
    rng = random.Random(seed)
    candidates = (list(E.basis[i] for i in range(E.dim)))
    for _ in range(60):
        coeffs = [rng.randint(-5, 5) for _ in range(E.dim)]
        candidates.append({d: la.lin_comb(coeffs, [b[d] for b in E.basis]) for d in M.degrees})
    for a in candidates:
        cp = _charpoly(a)
        _, factors = cp.factor()
        if len(factors) >= 2:
            f = min((fac for fac, _ in factors), key=lambda p: (p.degree(), str(p)))
            return _poly_eval(f, a)
    return None


def decompose_summands(M: GradedModule) -> list[Summand]:
    """Split M into indecomposable summands with explicit inclusions and projections."""
    if not M.dims:
        return []
    E = end_ring(M)
    if E.dim == 1 or la.rank(E.trace_form()) == 1:
        return [Summand(M, identity_map(M), identity_map(M))]
    b = _splitting_element(M, E)
    if b is None:
        raise NonSplitSemisimpleQuotient(f"no rational splitting found for {M.label or 'module'}")
    out = []
    for part in _split(M, b):
        for sub in decompose_summands(part.module):
            out.append(Summand(sub.module, part.incl.compose(sub.incl), sub.proj.compose(part.proj)))
    return out


def find_iso(M: GradedModule, N: GradedModule, tries: int = 4, seed: int = 0) -> ModuleMap | None:
    """An invertible degree-0 map M -> N, or None.

    Equal graded dimensions are necessary; a generic element of Hom^0 is then
    invertible exactly when some element is.
    """
    if M.dims != N.dims:
        return None
    basis = hom_basis(M, N, 0)
    if not basis:
        return None
    rng = random.Random(seed)
    for t in range(tries):
        coeffs = [1] * len(basis) if t == 0 else [rng.randint(-20, 20) for _ in basis]
        f = basis[0].scale(coeffs[0])
        for c, g in zip(coeffs[1:], basis[1:]):
            f = f + g.scale(c)
        if f.is_iso():
            return f
    return None


def isomorphic(M: GradedModule, N: GradedModule) -> bool:
    return find_iso(M, N) is not None


def inverse_map(f: ModuleMap) -> ModuleMap:
    return ModuleMap(f.tgt, f.src, 0, {d: f.block(d).inv() for d in f.src.degrees})


# -- indecomposable catalog ------------------------------------------------------

@dataclass
class Piece:
    """A summand of some module T identified as D_x<shift>.

    ``incl``: D_x -> T of degree ``shift`` and ``proj``: T -> D_x of degree
    ``-shift`` are maps of the catalog module itself, with proj o incl = id.
    """

    x: int
    shift: int
    incl: ModuleMap
    proj: ModuleMap


def _to_base(sm: Summand, D: GradedModule, k: int, iso: ModuleMap) -> tuple[ModuleMap, ModuleMap]:
    """Transport incl/proj of a summand S = D<k> (iso: S<-k> -> D) to maps of D."""
    T = sm.incl.tgt
    inv = {e: iso.block(e).inv() for e in D.degrees}
    incl = ModuleMap(D, T, k, {e: sm.incl.block(e + k) * inv[e] for e in D.degrees})
    proj = ModuleMap(T, D, -k, {d: iso.block(d - k) * sm.proj.block(d) for d in T.degrees if D.n(d - k)})
    return incl, proj


class Catalog:
    """The indecomposables D_x (lowest degree 0), built by induction on length.

    D_x is the summand of theta_s D_{x'} (x' s = x along the canonical word)
    not isomorphic to a shift of any D_y with y < x.  Splittings of
    theta_s D_x are memoized and reused for Bott-Samelson multiplicities.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.W = rs.weyl
        self.D: dict[int, GradedModule] = {0: point_module(rs)}
        self.D[0].label = "D_e"
        self._theta: dict[tuple[int, int], list[tuple[int, int]]] = {}
        self._theta_pieces: dict[tuple[int, int], list[Piece]] = {}

    def label(self, x: int) -> str:
        return f"D_{serialize_word(self.W.words[x])}"

    def ensure(self, max_length: int) -> None:
        W = self.W
        for x in range(W.order):
            if W.lengths[x] <= max_length:
                self.get(x)

    def get(self, x: int) -> GradedModule:
        if x in self.D:
            return self.D[x]
        W = self.W
        word = W.words[x]
        prev, s = W.from_word(word[:-1]), word[-1]
        self.get(prev)
        # all shorter elements must exist before identification
        for y in range(W.order):
            if W.lengths[y] < W.lengths[x] and W.leq(y, x):
                self.get(y)
        pieces = self._split_theta(prev, s, new=x)
        self._theta_pieces[(prev, s)] = pieces
        self._theta[(prev, s)] = sorted((p.x, p.shift) for p in pieces)
        return self.D[x]

    def identify(self, S: GradedModule, candidates: Iterable[int]):
        """(y, k, iso) with iso: S<-k> -> D_y, or None."""
        k = S.low()
        base = S.shift(-k)
        for y in candidates:
            D = self.D.get(y)
            if D is None or D.dims != base.dims:
                continue
            iso = find_iso(base, D)
            if iso is not None:
                return y, k, iso
        return None

    def _piece(self, sm: Summand, y: int, k: int, iso: ModuleMap) -> Piece:
        incl, proj = _to_base(sm, self.D[y], k, iso)
        return Piece(y, k, incl, proj)

    def _split_theta(self, x: int, s: int, new: int | None = None) -> list[Piece]:
        W = self.W
        T = theta(s, self.get(x))
        xs = W.rmul[x][s]
        top = max(x, xs, key=lambda i: W.lengths[i])
        cands = [y for y in range(W.order) if W.leq(y, top) and y in self.D]
        cands.sort(key=lambda y: (-W.lengths[y], y))
        out = []
        for sm in decompose_summands(T):
            got = self.identify(sm.module, cands)
            if got is None:
                if new is None or new in self.D:
                    raise NonSplitSemisimpleQuotient("unidentified summand in a translated indecomposable")
                k = sm.module.low()
                D = sm.module.shift(-k, self.label(new))
                self.D[new] = D
                got = (new, k, identity_map(D))
            out.append(self._piece(sm, *got))
        out.sort(key=lambda p: (p.x, p.shift))
        return out

    def theta_split(self, x: int, s: int) -> list[tuple[int, int]]:
        """theta_s D_x = sum of D_y<k>, as a sorted list of (y, k)."""
        key = (x, s)
        if key not in self._theta:
            self.get(x)
            xs = self.W.rmul[x][s]
            if self.W.lengths[xs] > self.W.lengths[x]:
                self.get(xs)
            pieces = self._split_theta(x, s)
            self._theta_pieces[key] = pieces
            self._theta[key] = sorted((p.x, p.shift) for p in pieces)
        return self._theta[key]

    def theta_pieces(self, x: int, s: int) -> list[Piece]:
        self.theta_split(x, s)
        return self._theta_pieces[(x, s)]

    def bs_multiplicities(self, word: Sequence[int]) -> dict[int, LaurentPoly]:
        """BS(word) = sum_x m_x(q) D_x, computed through memoized theta splits."""
        cur: dict[tuple[int, int], int] = {(0, 0): 1}
        for s in word:
            nxt: dict[tuple[int, int], int] = {}
            for (x, k), c in cur.items():
                for y, j in self.theta_split(x, s):
                    nxt[(y, k + j)] = nxt.get((y, k + j), 0) + c
            cur = nxt
        out: dict[int, dict[int, int]] = {}
        for (x, k), c in cur.items():
            out.setdefault(x, {})[k] = out.get(x, {}).get(k, 0) + c
        return {x: LaurentPoly(d, "q") for x, d in sorted(out.items())}

    def decompose(self, M: GradedModule) -> list[Piece]:
        """Direct Krull-Schmidt decomposition of M, summands matched against the catalog."""
        W = self.W
        out = []
        for sm in decompose_summands(M):
            cands = sorted(
                (y for y in range(W.order) if self._could_match(sm.module, y)),
                key=lambda y: (-W.lengths[y], y),
            )
            got = self.identify(sm.module, cands)
            if got is None:
                raise NonSplitSemisimpleQuotient("summand outside the catalog")
            out.append(self._piece(sm, *got))
        out.sort(key=lambda p: (p.x, p.shift))
        return out

    def _could_match(self, S: GradedModule, y: int) -> bool:
        D = self.get(y)
        return D.dim == S.dim


_CATALOGS: dict[tuple[str, int], Catalog] = {}


def catalog(rs: RootSystem) -> Catalog:
    key = (rs.cartan_type, rs.rank)
    if key not in _CATALOGS:
        _CATALOGS[key] = Catalog(rs)
    return _CATALOGS[key]


def indecomposable_catalog(rs: RootSystem, max_length: int) -> dict[int, GradedModule]:
    cat = catalog(rs)
    cat.ensure(max_length)
    return {x: D for x, D in sorted(cat.D.items()) if rs.weyl.lengths[x] <= max_length}


def decompose(M: GradedModule) -> list[tuple[GradedModule, int]]:
    """Indecomposable summands normalized to lowest degree 0, with their shifts."""
    out = []
    for sm in decompose_summands(M):
        k = sm.module.low()
        out.append((sm.module.shift(-k), k))
    out.sort(key=lambda t: (t[1], t[0].dim))
    return out


def multiplicities(pieces: Sequence[Piece]) -> dict[int, LaurentPoly]:
    out: dict[int, dict[int, int]] = {}
    for p in pieces:
        d = out.setdefault(p.x, {})
        d[p.shift] = d.get(p.shift, 0) + 1
    return {x: LaurentPoly(d, "q") for x, d in sorted(out.items())}
