"""Exact rational matrix helpers on top of ``flint.fmpq_mat``.

Everything downstream (homs, radicals, idempotents, chain maps) is exact, so
this module only wraps the handful of operations flint does not expose
directly: nullspaces, stacking, slicing and a coordinate solver.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint

Mat = flint.fmpq_mat
fmpq = flint.fmpq


def to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    return fmpq(x)


def zeros(r: int, c: int) -> Mat:
    return Mat(r, c)


def identity(n: int) -> Mat:
    m = Mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def from_rows(rows: Sequence[Sequence], ncols: int | None = None) -> Mat:
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    flat = [to_fmpq(x) for row in rows for x in row]
    return Mat(len(rows), ncols, flat)


def rows_of(m: Mat) -> list[list[flint.fmpq]]:
    return m.tolist()


def submatrix(m: Mat, rows: Sequence[int], cols: Sequence[int]) -> Mat:
    out = Mat(len(rows), len(cols))
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            v = m[i, j]
            if v != 0:
                out[a, b] = v
    return out


def hstack(blocks: Sequence[Mat], nrows: int | None = None) -> Mat:
    if not blocks:
        return Mat(nrows or 0, 0)
    r = blocks[0].nrows()
    out = Mat(r, sum(b.ncols() for b in blocks))
    off = 0
    for b in blocks:
        for i in range(r):
            for j in range(b.ncols()):
                v = b[i, j]
                if v != 0:
                    out[i, off + j] = v
        off += b.ncols()
    return out


def vstack(blocks: Sequence[Mat], ncols: int | None = None) -> Mat:
    if not blocks:
        return Mat(0, ncols or 0)
    c = blocks[0].ncols()
    out = Mat(sum(b.nrows() for b in blocks), c)
    off = 0
    for b in blocks:
        for i in range(b.nrows()):
            for j in range(c):
                v = b[i, j]
                if v != 0:
                    out[off + i, j] = v
        off += b.nrows()
    return out


def block_matrix(rows: Sequence[int], cols: Sequence[int], blocks: dict) -> Mat:
    """Assemble a matrix from ``blocks[(i, j)]`` with row/column block sizes."""
    roff = [0]
    for r in rows:
        roff.append(roff[-1] + r)
    coff = [0]
    for c in cols:
        coff.append(coff[-1] + c)
    out = Mat(roff[-1], coff[-1])
    for (i, j), b in blocks.items():
        for a in range(b.nrows()):
            for c in range(b.ncols()):
                v = b[a, c]
                if v != 0:
                    out[roff[i] + a, coff[j] + c] = v
    return out


def is_zero(m: Mat) -> bool:
    return all(x == 0 for x in m.entries())


def rank(m: Mat) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def nullspace(m: Mat) -> list[list[flint.fmpq]]:
    """Basis of {v : m v = 0}, one vector per free column of the rref."""
    n = m.ncols()
    if m.nrows() == 0:
        return [[fmpq(1) if i == j else fmpq(0) for i in range(n)] for j in range(n)]
    r, rk = m.rref()
    pivots = []
    row = 0
    for col in range(n):
        if row < rk and r[row, col] != 0:
            pivots.append(col)
            row += 1
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        v = [fmpq(0)] * n
        v[free] = fmpq(1)
        for k, p in enumerate(pivots):
            v[p] = -r[k, free]
        basis.append(v)
    return basis


def pivot_columns(m: Mat) -> list[int]:
    if m.nrows() == 0:
        return []
    r, rk = m.rref()
    pivots = []
    row = 0
    for col in range(m.ncols()):
        if row < rk and r[row, col] != 0:
            pivots.append(col)
            row += 1
    return pivots


def independent_rows(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a greedy maximal independent subset (earliest wins)."""
    if not vectors:
        return []
    m = from_rows(vectors).transpose()
    return pivot_columns(m)


class Coordinates:
    """Coordinates of vectors in the span of fixed basis vectors.

    Picks rows where the basis matrix has full rank once, so that each later
    lookup is a single small matrix-vector product.
    """

    def __init__(self, basis: Sequence[Sequence]):
        self.size = len(basis)
        if self.size == 0:
            self.rows: list[int] = []
            self.inv = Mat(0, 0)
            return
        b = from_rows(basis).transpose()  # ambient x size
        self.rows = pivot_columns(b.transpose())
        if len(self.rows) != self.size:
            raise ValueError("basis vectors are linearly dependent")
        self.inv = submatrix(b, self.rows, range(self.size)).inv()

    def __call__(self, v: Sequence) -> list[flint.fmpq]:
        if self.size == 0:
            return []
        col = Mat(self.size, 1, [to_fmpq(v[i]) for i in self.rows])
        return (self.inv * col).entries()


def flatten(m: Mat) -> list[flint.fmpq]:
    return m.entries()


def reshape(v: Sequence, r: int, c: int) -> Mat:
    return Mat(r, c, [to_fmpq(x) for x in v])


def lin_comb(coeffs: Iterable, mats: Sequence[Mat]) -> Mat:
    out = None
    for c, m in zip(coeffs, mats):
        if c == 0:
            continue
        out = m * c if out is None else out + m * c
    if out is None:
        return Mat(mats[0].nrows(), mats[0].ncols())
    return out


def fmt(x) -> str:
    """Canonical rational formatting: ``p`` or ``p/q``."""
    x = to_fmpq(x)
    if x.q == 1:
        return str(x.p)
    return f"{x.p}/{x.q}"
