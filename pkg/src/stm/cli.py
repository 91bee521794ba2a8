"""Command line entry point: ``stm <command> --type A --rank 2 ...``.

Exit status: 0 on success, 1 on a computation error, 2 on a usage error.
Words are comma-separated 1-based simple reflection indices, ``e`` is the
identity.  JSON output uses sorted keys and ``p/q`` rationals.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from .cache import Cache, cache_key
from .errors import STMError

COMMANDS = ("weyl", "kl", "hecke", "coinv", "bs", "hom", "decompose", "fiber", "delta", "ext", "koszul", "check")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stm", description="Soergel modules, Hecke algebras and mixed Tate numerics.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--type", dest="cartan_type", default="A")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--word", default=None, help="comma-separated word, e.g. 1,2,1")
    p.add_argument("--x", default=None, help="element (word) or first word")
    p.add_argument("--w", default=None, help="element (word) or second word")
    p.add_argument("--parabolic", default=None, help="comma-separated simple reflections")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--cache-dir", default=os.environ.get("STM_CACHE_DIR"))
    p.add_argument("--suite", default="all")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--decompose", action="store_true", help="with bs: also decompose")
    return p


# -- argument helpers ------------------------------------------------------------------

def _root_system(args):
    from .rootdata import build_root_system

    try:
        return build_root_system(args.cartan_type.upper(), args.rank)
    except ValueError as exc:
        raise UsageError(f"--type/--rank: {exc}") from exc


def _word(args, flag: str, required: bool = True):
    from .rootdata import parse_word

    text = getattr(args, flag.replace("-", "_"))
    if text is None:
        if required:
            raise UsageError(f"--{flag} is required for {args.command}")
        return None
    try:
        return parse_word(text, args.rank)
    except ValueError as exc:
        raise UsageError(f"--{flag}: {exc}") from exc


def _parabolic(args):
    if not args.parabolic:
        return ()
    try:
        P = tuple(sorted({int(t) - 1 for t in args.parabolic.split(",")}))
    except ValueError as exc:
        raise UsageError(f"--parabolic: {exc}") from exc
    if any(s < 0 or s >= args.rank for s in P):
        raise UsageError(f"--parabolic: indices must lie in 1..{args.rank}")
    return P


# -- commands ----------------------------------------------------------------------------

def cmd_weyl(args) -> dict:
    from .rootdata import parabolic_quotient, poincare_polynomial, serialize_word

    rs = _root_system(args)
    P = _parabolic(args)
    elts = parabolic_quotient(rs, P)
    return {
        "type": rs.name,
        "order": rs.weyl.order,
        "parabolic": [s + 1 for s in P],
        "elements": [{"word": serialize_word(e.word), "length": e.length} for e in elts],
        "poincare": str(poincare_polynomial(rs, P)),
        "positive_roots": [list(r) for r in rs.positive_roots],
    }


def cmd_kl(args) -> dict:
    from .hecke import kl_table

    rs = _root_system(args)
    W = rs.weyl
    x, w = W.from_word(_word(args, "x")), W.from_word(_word(args, "w"))
    from .rootdata import serialize_word

    P = kl_table(rs).P(x, w)
    return {"type": rs.name, "x": serialize_word(W.words[x]), "w": serialize_word(W.words[w]), "P": str(P), "coeffs": P.serialize()}


def cmd_hecke(args) -> dict:
    from .hecke import bs_character
    from .rootdata import serialize_word

    rs = _root_system(args)
    word = _word(args, "word")
    W = rs.weyl
    exp = bs_character(rs, word)
    return {"type": rs.name, "word": serialize_word(word), "kl_expansion": {serialize_word(W.words[x]): str(p) for x, p in exp.items()}}


def cmd_coinv(args) -> dict:
    from .coinv import coinvariant_algebra, partial_coinvariants

    rs = _root_system(args)
    P = _parabolic(args)
    C = coinvariant_algebra(rs)
    sub = partial_coinvariants(rs, P)
    return {
        "type": rs.name,
        "parabolic": [s + 1 for s in P],
        "dim": sub.dim,
        "hilbert": str(sub.hilbert),
        "basis": [C.serialize_element(b) for b in sub.basis] if P else [C.serialize_element({i: 1}) for i in range(C.dim)],
        "degrees": sub.degrees,
    }


def _decomposition(rs, word) -> dict:
    from .rootdata import serialize_word
    from .smod import bott_samelson, catalog, multiplicities

    W = rs.weyl
    cat = catalog(rs)
    pieces = cat.decompose(bott_samelson(rs, word))
    return {
        "summands": [{"x": serialize_word(W.words[p.x]), "shift": p.shift} for p in pieces],
        "multiplicities": {serialize_word(W.words[x]): str(m) for x, m in multiplicities(pieces).items()},
    }


def cmd_bs(args) -> dict:
    from .rootdata import serialize_word
    from .smod import bott_samelson

    rs = _root_system(args)
    word = _word(args, "word")
    M = bott_samelson(rs, word)
    out = {"type": rs.name, "word": serialize_word(word), "grdim": str(M.grdim), "dim": M.dim}
    if args.decompose:
        out["decomposition"] = _decomposition(rs, word)
    return out


def cmd_decompose(args) -> dict:
    from .rootdata import serialize_word

    rs = _root_system(args)
    word = _word(args, "word")
    return {"type": rs.name, "word": serialize_word(word), **_decomposition(rs, word)}


def cmd_hom(args) -> dict:
    from .hecke import hom_pairing
    from .rootdata import serialize_word
    from .smod import bott_samelson, graded_hom

    rs = _root_system(args)
    w1, w2 = _word(args, "x"), _word(args, "w")
    got = graded_hom(bott_samelson(rs, w1), bott_samelson(rs, w2))
    pred = hom_pairing(rs, w1, w2)
    return {"type": rs.name, "x": serialize_word(w1), "w": serialize_word(w2), "graded_hom": str(got), "hecke": str(pred), "agree": got == pred}


def cmd_fiber(args) -> dict:
    from .fibers import whitney_tate_witness

    rs = _root_system(args)
    return whitney_tate_witness(rs, _word(args, "word"))


def cmd_delta(args) -> dict:
    from .homotopy import delta_flag_multiplicities, family, weight_range
    from .rootdata import serialize_word

    rs = _root_system(args)
    W = rs.weyl
    w = W.from_word(_word(args, "w"))
    fam = family(rs)
    out = {"type": rs.name, "w": serialize_word(W.words[w])}
    for name, X, co in (("delta", fam.delta(w), False), ("nabla", fam.nabla(w), True)):
        census = delta_flag_multiplicities(rs, w, costandard=co)
        out[name] = {
            "complex": X.serialize(),
            "weights": list(weight_range(X)),
            "census": [
                {"degree": i, "x": serialize_word(W.words[x]), "shift": k, "mult": c}
                for (i, x, k), c in sorted(census["census"].items())
            ],
            "matches_hecke": census["matches"],
        }
    return out


def cmd_ext(args) -> dict:
    from .homotopy import ext_csv, ext_generation, ext_purity, ext_table

    rs = _root_system(args)
    table = ext_table(rs, args.max_len)
    gen = ext_generation(rs, args.max_len)
    return {
        "type": rs.name,
        "csv": ext_csv(rs, table),
        "pure": ext_purity(table),
        "generated_in_degree_1": gen["generated_in_degree_1"],
        "degree0_identities": gen["degree0_identities"],
    }


def cmd_koszul(args) -> dict:
    from .homotopy import koszul_numerics
    from .rootdata import serialize_word

    rs = _root_system(args)
    W = rs.weyl
    rep = koszul_numerics(rs)
    lab = lambda x: serialize_word(W.words[x])
    return {
        "type": rs.name,
        "matched": rep["matched"],
        "rows": [
            {"x": lab(x), "y": lab(y), "n": n, "m": m, "dim": d, "dual_n": n2, "dual_m": m2, "dual_dim": dd}
            for x, y, n, m, d, n2, m2, dd in rep["rows"]
        ],
    }


def _suite_job(name: str, max_len):
    from .checks import run_suite

    return run_suite(name, max_len)


def cmd_check(args) -> tuple[dict, bool, list[str]]:
    from .checks import expand

    try:
        names = expand(args.suite)
    except KeyError:
        raise UsageError(f"--suite: unknown suite {args.suite!r}")
    if args.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_suite_job, names, [args.max_len] * len(names)))
    else:
        results = [_suite_job(n, args.max_len) for n in names]
    results.sort(key=lambda r: r.criterion)
    payload = {"suite": args.suite, "results": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    return payload, payload["passed"], [r.line() for r in results]


HANDLERS = {
    "weyl": cmd_weyl,
    "kl": cmd_kl,
    "hecke": cmd_hecke,
    "coinv": cmd_coinv,
    "bs": cmd_bs,
    "hom": cmd_hom,
    "decompose": cmd_decompose,
    "fiber": cmd_fiber,
    "delta": cmd_delta,
    "ext": cmd_ext,
    "koszul": cmd_koszul,
}


def _render_table(command: str, result: dict) -> str:
    if command == "kl":
        return result["P"]
    if command == "ext":
        return result["csv"].rstrip("\n")
    lines = []
    for k in sorted(result):
        v = result[k]
        if isinstance(v, (dict, list)):
            v = json.dumps(v, sort_keys=True)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def _cache_args(args) -> dict:
    return {k: getattr(args, k) for k in ("word", "x", "w", "parabolic", "max_len", "decompose")}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "check":
            payload, ok, lines = cmd_check(args)
            if args.format == "json":
                print(json.dumps(payload, sort_keys=True, indent=1))
            else:
                print("\n".join(lines))
            return 0 if ok else 1
        cache = Cache(args.cache_dir)
        key = cache_key(args.cartan_type.upper(), args.rank, args.command, _cache_args(args))
        result = cache.get(key)
        if result is None:
            result = HANDLERS[args.command](args)
            result = json.loads(json.dumps(result, sort_keys=True))
            cache.put(key, result)
        if args.format == "json":
            print(json.dumps(result, sort_keys=True, indent=1))
        else:
            print(_render_table(args.command, result))
        return 0
    except UsageError as exc:
        print(f"stm: usage error: {exc}", file=sys.stderr)
        return 2
    except STMError as exc:
        print(f"stm: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
