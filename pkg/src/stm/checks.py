"""Acceptance suites shared by the command line and the test-suite.

Each suite returns a ``CheckResult`` whose ``details`` are deterministic
(no timings), so that serialized check output is reproducible byte for byte.
"""

from __future__ import annotations

import itertools
import logging
import os
import random
import subprocess
import sys
import tempfile
import time
from dataclasses import dataclass, field
from typing import Callable

from .laurent import LaurentPoly, q_integer

SUITES = ("point", "coinv", "hom", "decomp", "fibers", "orthogonality", "census", "koszul", "determinism")
CORE = SUITES[:-1]


@dataclass
class CheckResult:
    criterion: int
    suite: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"criterion": self.criterion, "suite": self.suite, "passed": self.passed, "details": self.details}

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.criterion} ({self.suite}) {self.seconds:.2f}s"


def _words(rank: int, max_len: int):
    for L in range(max_len + 1):
        yield from itertools.product(range(rank), repeat=L)


def _rs(t, r):
    from .rootdata import build_root_system

    return build_root_system(t, r)


# -- 1: point category -------------------------------------------------------------

def check_point(max_len: int | None = None) -> CheckResult:
    from . import pointcat as pc

    fails = []
    pure = [(q, p) for q in range(-3, 4) for p in range(-3, 4)]
    for a in pure:
        for b in pure:
            got = pc.hom_dims(pc.BigradedVS({a: 1}), pc.BigradedVS({b: 1}))
            if got != pc.BigradedVS({(0, 0): 1} if a == b else {}):
                fails.append(f"hom {a} {b}")
    for n in range(-5, 6):
        if pc.koszul_point(pc.BigradedVS.tate(p=n)) != pc.BigradedVS.tate(p=-n, q=-2 * n):
            fails.append(f"K(Q({n}))")
    rng = random.Random(20240601)
    for _ in range(100):
        A = pc.random_object(rng)
        n = rng.randint(-4, 4)
        if pc.koszul_point(pc.koszul_point(A)) != A:
            fails.append("K K != id")
        if pc.koszul_point(pc.twist(A, n)) != pc.shift(pc.twist(pc.koszul_point(A), -n), -2 * n):
            fails.append("K twist")
        if pc.weight_truncate(A, le=0) + pc.weight_truncate(A, ge=1) != A:
            fails.append("weight split")
        if pc.degrade(pc.twist(A, n)) != pc.degrade(A):
            fails.append("degrade twist")
        if pc.hom_dims(A, A)[(0, 0)] != sum(k * k for k in A.dims.values()):
            fails.append("semisimple end")
    for q, p in pure:
        if pc.weights(pc.BigradedVS({(q, p): 1})) != {q - 2 * p}:
            fails.append(f"weight {q},{p}")
    if pc.weights(pc.motive_of_P1()) != {0}:
        fails.append("P1 weight")
    return CheckResult(1, "point", not fails, {"failures": fails[:20], "pure_pairs": len(pure) ** 2, "random_objects": 100})


# -- 2: coinvariant algebra ----------------------------------------------------------

def _braid_order(rs, s, t) -> int:
    prod = rs.cartan_matrix[s][t] * rs.cartan_matrix[t][s]
    return {0: 2, 1: 3, 2: 4, 3: 6}[prod]


def check_coinv(max_len: int | None = None) -> CheckResult:
    from .coinv import coinvariant_algebra, invariant_subring

    report = {}
    ok_all = True
    for t, r in (("A", 1), ("A", 2), ("A", 3), ("B", 2), ("G", 2)):
        rs = _rs(t, r)
        C = coinvariant_algebra(rs)
        expected = LaurentPoly.one("q")
        for d in rs.fundamental_degrees:
            expected = expected * q_integer(d, "q", 2)
        entry = {"dim": C.dim, "order": rs.weyl.order, "hilbert": str(C.hilbert)}
        ok = C.dim == rs.weyl.order and C.hilbert == expected
        basis = [{i: 1} for i in range(C.dim)]
        D = {s: [C.demazure(s, b) for b in basis] for s in range(r)}

        def apply_word(word, i):
            v = basis[i]
            for s in reversed(word):
                v = C.demazure(s, v)
            return v

        sq = all(not C.demazure(s, D[s][i]) for s in range(r) for i in range(C.dim))
        leib = True
        for s in range(r):
            refl = [C.reflect(s, b) for b in basis]
            for i in range(C.dim):
                for j in range(i, C.dim):
                    lhs = C.demazure(s, C.multiply(basis[i], basis[j]))
                    rhs = _sum(C.multiply(D[s][i], basis[j]), C.multiply(refl[i], D[s][j]))
                    if lhs != rhs:
                        leib = False
        braid = True
        for s in range(r):
            for u in range(s + 1, r):
                m = _braid_order(rs, s, u)
                w1 = [s if k % 2 == 0 else u for k in range(m)]
                w2 = [u if k % 2 == 0 else s for k in range(m)]
                for i in range(C.dim):
                    if apply_word(w1, i) != apply_word(w2, i):
                        braid = False
        free = True
        for s in range(r):
            Cs = invariant_subring(rs, s)
            if Cs.hilbert * LaurentPoly({0: 1, 2: 1}, "q") != C.hilbert:
                free = False
            for i in range(C.dim):
                a, b = C.split(s, basis[i])
                if C.demazure(s, a) or C.demazure(s, b):
                    free = False
                if _sum(a, C.multiply(b, C.P(s))) != {k: v for k, v in basis[i].items()}:
                    free = False
        entry.update(dd_zero=sq, leibniz=leib, braid=braid, free_rank_two=free)
        ok = ok and sq and leib and braid and free
        ok_all = ok_all and ok
        report[rs.name] = entry
    return CheckResult(2, "coinv", ok_all, report)


def _sum(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        x = out.get(k, 0) + v
        if x == 0:
            out.pop(k, None)
        else:
            out[k] = x
    return out


# -- 3: hom formula ------------------------------------------------------------------

def check_hom(max_len: int | None = None) -> CheckResult:
    from .hecke import hom_pairing
    from .smod import bott_samelson, graded_hom

    L = 4 if max_len is None else max_len
    report = {}
    ok_all = True
    for t, r in (("A", 1), ("A", 2), ("B", 2)):
        rs = _rs(t, r)
        words = list(_words(r, L))
        mods = {w: bott_samelson(rs, w) for w in words}
        bad = []
        for w1 in words:
            for w2 in words:
                if graded_hom(mods[w1], mods[w2]) != hom_pairing(rs, w1, w2):
                    bad.append([list(w1), list(w2)])
        report[rs.name] = {"pairs": len(words) ** 2, "mismatches": bad[:10]}
        ok_all = ok_all and not bad
    return CheckResult(3, "hom", ok_all, report)


# -- 4: decomposition = KL -------------------------------------------------------------

def expected_shifts(rs, word) -> dict[int, LaurentPoly]:
    """KL-basis expansion of the BS character, converted to internal shifts of D_x."""
    from .hecke import bs_character

    W = rs.weyl
    return {x: p.rename("q").shift(len(word) - W.lengths[x]) for x, p in bs_character(rs, word).items()}


def check_decomp(max_len: int | None = None) -> CheckResult:
    from .hecke import kl_table
    from .rootdata import serialize_word
    from .smod import bott_samelson, catalog, multiplicities

    L = 4 if max_len is None else max_len
    report = {}
    ok_all = True
    for t, r in (("A", 2), ("B", 2)):
        rs = _rs(t, r)
        cat = catalog(rs)
        bad = []
        n = 0
        for w in _words(r, L):
            n += 1
            got = multiplicities(cat.decompose(bott_samelson(rs, w)))
            if got != expected_shifts(rs, w):
                bad.append(list(w))
        report[rs.name] = {"words": n, "mismatches": bad[:10]}
        ok_all = ok_all and not bad
    # the A3 word whose Schubert variety is singular
    rs = _rs("A", 3)
    W = rs.weyl
    cat = catalog(rs)
    word = (1, 0, 2, 1)
    got = multiplicities(cat.decompose(bott_samelson(rs, word)))
    w = W.from_word(word)
    s2 = W.from_word((1,))
    P = kl_table(rs).P(s2, w)
    grdim = LaurentPoly.zero("q")
    for y, p in kl_table(rs).column(w).items():
        grdim = grdim + p.bar().substitute_power(2).shift(2 * (W.lengths[w] - W.lengths[y]))
    entry = {
        "word": serialize_word(word),
        "summands": {serialize_word(W.words[x]): str(m) for x, m in got.items()},
        "kl_s2": str(P),
        "grdim_D_w": str(cat.get(w).grdim),
        "grdim_predicted": str(grdim),
    }
    ok = got == expected_shifts(rs, word) and P == LaurentPoly({0: 1, 1: 1}) and cat.get(w).grdim == grdim
    report["A3"] = entry
    return CheckResult(4, "decomp", ok_all and ok, report)


# -- 5: fibers -------------------------------------------------------------------------

def check_fibers(max_len: int | None = None) -> CheckResult:
    from .fibers import fiber_polynomials, global_sum, local_character
    from .smod import catalog

    L = 5 if max_len is None else max(max_len, 5)
    report = {}
    ok_all = True
    for t, r in (("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3), ("B", 3), ("C", 3)):
        rs = _rs(t, r)
        W = rs.weyl
        cat = catalog(rs)
        lc = {(x, y): local_character(rs, x, y) for x in range(W.order) for y in range(W.order)}
        even = all(p.is_even() and p.nonnegative() for p in lc.values())
        total_bad, cons_bad, n = [], [], 0
        for w in _words(r, L):
            n += 1
            if global_sum(rs, w) != LaurentPoly({0: 1, 1: 1}) ** len(w):
                total_bad.append(list(w))
            F = fiber_polynomials(rs, w)
            m = cat.bs_multiplicities(w)
            for y in range(W.order):
                lhs = F.get(y, LaurentPoly.zero()).substitute_power(2)
                rhs = LaurentPoly.zero()
                for x, mx in m.items():
                    rhs = rhs + mx * lc[(x, y)]
                if lhs != rhs:
                    cons_bad.append([list(w), y])
        report[rs.name] = {
            "words": n,
            "global_sum_failures": total_bad[:10],
            "consistency_failures": cons_bad[:10],
            "local_characters_even": even,
        }
        ok_all = ok_all and not total_bad and not cons_bad and even
    return CheckResult(5, "fibers", ok_all, report)


# -- 6: orthogonality ---------------------------------------------------------------------

def check_orthogonality(max_len: int | None = None) -> CheckResult:
    from .homotopy import NABLA_OFFSET, family, gate, orthogonality_check

    report = {}
    ok_all = True
    frozen = gate([_rs("A", 1), _rs("A", 2)]) == NABLA_OFFSET
    for t, r in (("A", 2), ("B", 2)):
        rs = _rs(t, r)
        W = rs.weyl
        l0 = W.lengths[W.longest]
        bad = []
        for x in range(W.order):
            for y in range(W.order):
                res = orthogonality_check(rs, x, y, 2 * l0, l0)
                if not res["ok"]:
                    bad.append([x, y])
        report[rs.name] = {"pairs": W.order ** 2, "n_range": 2 * l0, "a_range": l0, "failures": bad}
        ok_all = ok_all and not bad
    report["gate_offset"] = list(NABLA_OFFSET)
    report["gate_reproduced"] = frozen
    return CheckResult(6, "orthogonality", ok_all and frozen, report)


# -- 7: Delta-flag census -----------------------------------------------------------------

def check_census(max_len: int | None = None) -> CheckResult:
    from .homotopy import delta_flag_multiplicities

    report = {}
    ok_all = True
    for t, r in (("A", 2), ("B", 2)):
        rs = _rs(t, r)
        bad = []
        for w in range(rs.weyl.order):
            for co in (False, True):
                res = delta_flag_multiplicities(rs, w, costandard=co)
                if not (res["matches"] and res["no_cancellation"]):
                    bad.append([w, co])
        report[rs.name] = {"elements": rs.weyl.order, "failures": bad}
        ok_all = ok_all and not bad
    return CheckResult(7, "census", ok_all, report)


# -- 8: Koszulity ----------------------------------------------------------------------------

def check_koszul(max_len: int | None = None) -> CheckResult:
    from .homotopy import ext_generation, ext_purity, ext_table, koszul_numerics

    report = {}
    ok_all = True
    for t, r in (("A", 1), ("A", 2)):
        rs = _rs(t, r)
        table = ext_table(rs)
        pure = ext_purity(table)
        gen = ext_generation(rs)
        num = koszul_numerics(rs)
        ok = pure and gen["degree0_identities"] and gen["nonnegative"] and gen["generated_in_degree_1"] and num["matched"]
        report[rs.name] = {
            "ext_entries": len(table),
            "pure": pure,
            "degree0_identities": gen["degree0_identities"],
            "generated_in_degree_1": gen["generated_in_degree_1"],
            "koszul_rows": len(num["rows"]),
            "koszul_matched": num["matched"],
        }
        ok_all = ok_all and ok
    return CheckResult(8, "koszul", ok_all, report)


# -- 9: determinism --------------------------------------------------------------------------

def _run_cli(args: list[str]) -> bytes:
    env = dict(os.environ)
    env.pop("STM_CACHE_DIR", None)
    proc = subprocess.run([sys.executable, "-m", "stm", *args], capture_output=True, env=env, check=False)
    return proc.stdout


def check_determinism(max_len: int | None = None) -> CheckResult:
    from .cache import SCHEMA_VERSION, Cache, cache_key

    args = ["check", "--suite", "core", "--format", "json"]
    if max_len is not None:
        args += ["--max-len", str(max_len)]
    first = _run_cli(args)
    second = _run_cli(args)
    same = first == second and len(first) > 0
    with tempfile.TemporaryDirectory() as tmp:
        c = Cache(tmp)
        key = cache_key("A", 2, "kl", {"x": "1", "w": "1,2,1"})
        value = {"P": "0:1", "nested": [1, "1/2", {"k": None}]}
        c.put(key, value)
        roundtrip = c.get(key) == value
        path = c._path(key)
        raw_before = path.read_bytes()
        c.put(key, value)
        stable = path.read_bytes() == raw_before
        bumped = cache_key("A", 2, "kl", {"x": "1", "w": "1,2,1"}, SCHEMA_VERSION + 1)
        miss = c.get(bumped) is None
        path.write_text(path.read_text().replace("0:1", "0:2"))
        quiet = logging.getLogger("stm.cache")
        level = quiet.level
        quiet.setLevel(logging.ERROR)  # the corruption warning is expected here
        try:
            corrupt_miss = c.get(key) is None
        finally:
            quiet.setLevel(level)
    details = {
        "runs_identical": same,
        "output_bytes": len(first),
        "cache_roundtrip": roundtrip,
        "cache_bytes_stable": stable,
        "schema_bump_miss": miss,
        "corruption_miss": corrupt_miss,
    }
    return CheckResult(9, "determinism", same and roundtrip and stable and miss and corrupt_miss, details)


RUNNERS: dict[str, Callable[[int | None], CheckResult]] = {
    "point": check_point,
    "coinv": check_coinv,
    "hom": check_hom,
    "decomp": check_decomp,
    "fibers": check_fibers,
    "orthogonality": check_orthogonality,
    "census": check_census,
    "koszul": check_koszul,
    "determinism": check_determinism,
}


def run_suite(name: str, max_len: int | None = None) -> CheckResult:
    start = time.perf_counter()
    res = RUNNERS[name](max_len)
    res.seconds = time.perf_counter() - start
    return res


def expand(suite: str) -> tuple[str, ...]:
    if suite == "all":
        return SUITES
    if suite == "core":
        return CORE
    if suite not in RUNNERS:
        raise KeyError(suite)
    return (suite,)
