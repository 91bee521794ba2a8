"""Integer/rational Laurent polynomials in one variable."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Finitely supported map exponent -> coefficient, no stored zeros.

    Instances are immutable; arithmetic returns new objects.
    """

    __slots__ = ("_c", "var", "_hash")

    def __init__(self, coeffs: Mapping[int, object] | None = None, var: str = "q"):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                if a != 0:
                    c[int(e)] = _norm(a)
        self._c = c
        self.var = var
        self._hash = None

    @classmethod
    def monomial(cls, e: int, c=1, var: str = "q") -> "LaurentPoly":
        return cls({e: c}, var)

    @classmethod
    def one(cls, var: str = "q") -> "LaurentPoly":
        return cls({0: 1}, var)

    @classmethod
    def zero(cls, var: str = "q") -> "LaurentPoly":
        return cls({}, var)

    @classmethod
    def from_list(cls, coeffs: Iterable, var: str = "q", start: int = 0) -> "LaurentPoly":
        return cls({start + i: c for i, c in enumerate(coeffs)}, var)

    # -- access ---------------------------------------------------------
    @property
    def coeffs(self) -> dict[int, object]:
        return dict(self._c)

    def __getitem__(self, e: int):
        return self._c.get(e, 0)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def degree(self) -> int:
        return max(self._c) if self._c else -(10**9)

    def low_degree(self) -> int:
        return min(self._c) if self._c else 10**9

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly({0: other}, self.var)

    def __add__(self, other):
        other = self._coerce(other)
        c = dict(self._c)
        for e, a in other._c.items():
            c[e] = c.get(e, 0) + a
        return LaurentPoly(c, self.var)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -a for e, a in self._c.items()}, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({e: a * other for e, a in self._c.items()}, self.var)
        c: dict[int, object] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + a1 * a2
        return LaurentPoly(c, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only for monomials; use shift")
        out = LaurentPoly.one(self.var)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by var**k."""
        return LaurentPoly({e + k: a for e, a in self._c.items()}, self.var)

    def bar(self) -> "LaurentPoly":
        return LaurentPoly({-e: a for e, a in self._c.items()}, self.var)

    def substitute_power(self, k: int, var: str | None = None) -> "LaurentPoly":
        """f(x) -> f(x**k), optionally renaming the variable."""
        return LaurentPoly({e * k: a for e, a in self._c.items()}, var or self.var)

    def rename(self, var: str) -> "LaurentPoly":
        return LaurentPoly(self._c, var)

    def evaluate(self, x):
        return sum(a * Fraction(x) ** e for e, a in self._c.items())

    def divmod_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError if there is a remainder."""
        if other.is_zero():
            raise ZeroDivisionError
        rem = dict(self._c)
        top_o = other.degree()
        lead = Fraction(other[top_o])
        lo_o = other.low_degree()
        bound = self.low_degree() - lo_o
        quot: dict[int, object] = {}
        while rem:
            top = max(rem)
            if top - top_o < bound:
                raise ValueError("inexact Laurent division")
            q = Fraction(rem[top]) / lead
            e = top - top_o
            quot[e] = q
            for oe, oa in other._c.items():
                k = oe + e
                rem[k] = rem.get(k, 0) - q * oa
                if rem[k] == 0:
                    del rem[k]
        return LaurentPoly(quot, self.var)

    # -- comparison / hashing --------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if other == 0:
            return not self._c
        return self._c == ({0: other} if other != 0 else {})

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def nonnegative(self) -> bool:
        return all(a >= 0 for a in self._c.values())

    def is_even(self) -> bool:
        return all(e % 2 == 0 for e in self._c)

    # -- formatting -------------------------------------------------------
    def serialize(self) -> str:
        """Sorted ``exp:coeff`` pairs, e.g. ``0:1,1:1`` for 1+q."""
        if not self._c:
            return ""
        return ",".join(f"{e}:{a}" for e, a in sorted(self._c.items()))

    @classmethod
    def parse(cls, text: str, var: str = "q") -> "LaurentPoly":
        c = {}
        if text.strip():
            for part in text.split(","):
                e, a = part.split(":")
                c[int(e)] = Fraction(a)
        return cls(c, var)

    def __str__(self):
        if not self._c:
            return "0"
        out = []
        for e, a in sorted(self._c.items()):
            sign = "-" if a < 0 else "+"
            mag = -a if a < 0 else a
            if e == 0:
                body = f"{mag}"
            else:
                mono = self.var if e == 1 else f"{self.var}^{e}"
                body = mono if mag == 1 else f"{mag}{mono}"
            out.append((sign, body))
        s = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            s += sign + body
        return s

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"


def q_integer(n: int, var: str = "q", step: int = 1) -> LaurentPoly:
    """1 + x^step + ... + x^(step*(n-1))."""
    return LaurentPoly({step * i: 1 for i in range(n)}, var)
