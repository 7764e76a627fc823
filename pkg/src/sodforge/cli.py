"""Command line entry point.

Exit codes: 0 success, 1 verification failure (certificate on stdout),
2 usage or input error, 3 search budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence as Seq

from . import golay as gl
from .cod_family import format_unit_term, theorem_s2_pipeline, variable_names
from .constructions import (
    SECTION4_EQUATING,
    hadamard_design,
    hurwitz_radon_design,
    sod_power2,
    sod_section4,
)
from .design import DesignMatrix, equate_variables
from .formats import design_to_json, iter_design_lines, load_design
from .nonexistence import search_full_sh, search_sod, search_sw
from .remrep import RemrepError, cod_to_od, expand_sod, remrep_by_name
from .verify import verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit_lines(lines, out_path: Optional[str]) -> None:
    if out_path and out_path != "-":
        with open(out_path, "w", encoding="utf-8") as fh:
            for ln in lines:
                fh.write(ln + "\n")
    else:
        w = sys.stdout.write
        for ln in lines:
            w(ln + "\n")


def _emit_design(x: DesignMatrix, args) -> None:
    if args.format == "json":
        _emit_lines([json.dumps(design_to_json(x))], args.out)
    else:
        _emit_lines(iter_design_lines(x), args.out)


def _emit_obj(obj: dict, text: str, args) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(text)


def _read_design(path: str) -> DesignMatrix:
    try:
        if path == "-":
            return load_design(sys.stdin)
        return load_design(path)
    except OSError as e:
        raise UsageError(str(e)) from None


def _type_label(x: DesignMatrix) -> str:
    return ",".join(map(str, x.claimed_type))


# -- subcommands --------------------------------------------------------------


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "sod2n":
        x = sod_power2(args.n)
    elif kind == "section4":
        x = sod_section4()
        if args.equate:
            x = equate_variables(x, SECTION4_EQUATING)
    elif kind == "hr-family":
        x = hurwitz_radon_design(args.t)
    elif kind == "hadamard":
        x = hadamard_design(args.t)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(kind)
    _emit_design(x, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    x = _read_design(args.file)
    res = verify(
        x,
        mode=args.mode,
        trials=args.trials,
        prime=args.prime,
        seed=args.seed,
        both_sides=args.both_sides,
    )
    obj = {
        "ok": res.ok,
        "method": res.method,
        "order": x.order,
        "group": x.presentation.name,
        "type": list(x.claimed_type),
    }
    obj.update(res.details)
    if res.ok:
        text = f"ok: order {x.order}, type ({_type_label(x)}) over {x.presentation.name} [{res.method}]"
    else:
        text = f"FAIL: order {x.order}, type ({_type_label(x)}) over {x.presentation.name} [{res.method}]"
        if res.certificate is not None:
            c = res.certificate
            obj["certificate"] = {"row": c.row, "col": c.col, "side": c.side, "residual": str(c.residual)}
            text += f"\n{c}"
        else:
            text += "\n" + ", ".join(f"{k}={v}" for k, v in sorted(res.details.items()))
    _emit_obj(obj, text, args)
    return EXIT_OK if res.ok else EXIT_FAIL


def _infer_clifford_n(x: DesignMatrix) -> Optional[int]:
    name = x.presentation.name
    for prefix in ("Sprime", "S"):
        if name.startswith(prefix) and name[len(prefix):].isdigit():
            return int(name[len(prefix):])
    return None


def cmd_expand(args) -> int:
    x = _read_design(args.design)
    if args.remrep == "SC":
        y = cod_to_od(x)
    else:
        n = args.n if args.n is not None else _infer_clifford_n(x)
        if n is None:
            raise UsageError("cannot infer n from the design's group; pass --n")
        y = expand_sod(x, remrep_by_name(args.remrep, n))
    _emit_design(y, args)
    return EXIT_OK


def _pair_from_args(a: str, b: str) -> tuple[gl.Sequence, gl.Sequence]:
    return gl.Sequence.parse(a), gl.Sequence.parse(b)


def cmd_golay(args) -> int:
    if args.action == "verify":
        a, b = _pair_from_args(args.a, args.b)
        ok = len(a) == len(b) and gl.is_complementary([a, b])
        _emit_obj({"complementary": ok, "length": len(a)}, "complementary" if ok else "not complementary", args)
        return EXIT_OK if ok else EXIT_FAIL
    if args.action == "double":
        a, b = _pair_from_args(args.a, args.b)
        alphabet = "real" if a.is_real() and b.is_real() else "complex"
        p = gl.golay_double(gl.GolayPair(a, b, alphabet))
        _emit_obj({"a": p.a.format(), "b": p.b.format()}, f"{p.a.format()}\n{p.b.format()}", args)
        return EXIT_OK
    pairs = gl.search_golay(args.length, args.alphabet, first_only=not args.all)
    nodes = gl.search_golay.last_nodes
    obj = {
        "length": args.length,
        "alphabet": args.alphabet,
        "result": "found" if pairs else "none",
        "nodes": nodes,
        "normalization": "first entry of each sequence is 1",
        "pairs": [[p.a.format(), p.b.format()] for p in pairs],
    }
    lines = [f"{len(pairs)} pair(s), {nodes} nodes"] + [f"{p.a.format()} ; {p.b.format()}" for p in pairs]
    _emit_obj(obj, "\n".join(lines), args)
    return EXIT_OK


def _parse_lengths(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"bad length list {text!r}") from None


def cmd_cod_family(args) -> int:
    ks = _parse_lengths(args.complex_lengths)
    need = (1 << (args.n - 3)) - 1 if args.n >= 3 else -1
    if need < 0 or len(ks) != need:
        raise UsageError(f"n={args.n} needs exactly {max(need, 0)} complex lengths (n >= 3)")
    try:
        golay_pair = gl.catalog_pair(args.golay_length, "real")
        cpairs = [gl.catalog_pair(k, "complex") for k in ks]
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None
    full = args.emit == "full"
    res = theorem_s2_pipeline(args.n, golay_pair, cpairs, materialize=full or None)
    if full:
        _emit_design(res.cod, args)
        return EXIT_OK
    names = variable_names(len(ks))
    manifest = {
        "n": args.n,
        "q": res.q,
        "m": res.m,
        "order": res.order,
        "type": list(res.claimed_type),
        "variables": names,
        "golay_pair": [golay_pair.a.format(), golay_pair.b.format()],
        "complex_pairs": [[p.a.format(), p.b.format()] for p in cpairs],
        "hadamard": f"sylvester order {1 << (args.n - 2)}",
        "od": f"expand_sod(sod_power2({args.n}), canonical remrep of S({args.n}), sylvester H)",
        "omega": [[format_unit_term(e, names) for e in w.entries] for w in res.omega.members],
        "checks": res.checks,
    }
    if res.cod is not None:
        v = verify(res.cod, seed=args.seed)
        manifest["checks"]["cod_verified"] = v.ok
    text = "\n".join(
        [
            f"COD({res.order}; {','.join(map(str, res.claimed_type))}) n={args.n} q={res.q} m={res.m}",
            *(f"omega[{i}]: {','.join(row)}" for i, row in enumerate(manifest["omega"])),
            *(f"check {k}: {v}" for k, v in sorted(manifest["checks"].items())),
        ]
    )
    _emit_obj(manifest, text, args)
    return EXIT_OK


def cmd_nonexist(args) -> int:
    kw = {"budget": args.budget, "jobs": args.jobs}
    if args.kind == "sw":
        if args.w is None:
            raise UsageError("nonexist sw needs --w")
        rep = search_sw(args.n, args.w, args.group, allow_quaternion=args.allow_quaternion, **kw)
    elif args.kind == "sh":
        rep = search_full_sh(args.n, args.group, allow_quaternion=args.allow_quaternion, **kw)
    else:
        if not args.type:
            raise UsageError("nonexist sod needs --type")
        rep = search_sod(args.n, _parse_lengths(args.type), args.group, **kw)
    d = rep.to_dict()
    if args.format == "json":
        print(json.dumps(d, indent=2))
    else:
        print(f"{rep.problem} over {rep.group}: {rep.result} ({rep.nodes} nodes, {rep.elapsed:.3f}s)")
        print(f"normalization: {rep.normalization}")
        if rep.witness is not None:
            for row in d["witness"]:
                print(",".join(row))
    return EXIT_OK


def cmd_catalog(args) -> int:
    cat = gl.catalog()
    entries = [
        {"alphabet": alpha, "length": n, "a": p.a.format(), "b": p.b.format()}
        for (alpha, n), p in sorted(cat.items())
    ]
    text = "\n".join(f"{e['alphabet']} {e['length']}: {e['a']} ; {e['b']}" for e in entries)
    _emit_obj({"pairs": entries}, text, args)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    # accepted both before and after the subcommand
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    p.add_argument("--out", default=argparse.SUPPRESS, help="output file for designs (default stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="sodforge", description="Signed group orthogonal designs.")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="emit a known design")
    c.add_argument("kind", choices=("sod2n", "section4", "hr-family", "hadamard"))
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--t", type=int, default=2)
    c.add_argument("--equate", action="store_true", help="section4: equate to type 1,1,1,9,9,11")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="verify a design file ('-' for stdin)")
    v.add_argument("file")
    v.add_argument(
        "--mode",
        choices=("auto", "exact", "randomized"),
        default="auto",
        help="auto is exact up to order 512; exact on larger designs is slow",
    )
    v.add_argument("--trials", type=int, default=3)
    v.add_argument("--prime", type=int, default=None)
    v.add_argument("--both-sides", action="store_true")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("expand", parents=[common], help="expand an SOD to an OD through a remrep")
    e.add_argument("design")
    e.add_argument("--remrep", choices=("S", "Sprime", "SC"), required=True)
    e.add_argument("--n", type=int, default=None)
    e.set_defaults(func=cmd_expand)

    g = sub.add_parser("golay", parents=[common], help="Golay pair tools")
    gsub = g.add_subparsers(dest="action", required=True)
    for name in ("verify", "double"):
        gp = gsub.add_parser(name, parents=[common])
        gp.add_argument("a")
        gp.add_argument("b")
    gs = gsub.add_parser("search", parents=[common])
    gs.add_argument("--length", type=int, required=True)
    gs.add_argument("--alphabet", choices=("real", "complex"), default="real")
    gs.add_argument("--all", action="store_true", help="list every normalized pair")
    g.set_defaults(func=cmd_golay)

    cf = sub.add_parser("cod-family", parents=[common], help="Hermitian circulant COD pipeline")
    cf.add_argument("--n", type=int, required=True)
    cf.add_argument("--golay-length", type=int, required=True)
    cf.add_argument("--complex-lengths", default="")
    cf.add_argument("--emit", choices=("components", "full"), default="components")
    cf.set_defaults(func=cmd_cod_family)

    ne = sub.add_parser("nonexist", parents=[common], help="exhaustive small searches")
    ne.add_argument("kind", choices=("sw", "sh", "sod"))
    ne.add_argument("--n", type=int, required=True)
    ne.add_argument("--w", type=int, default=None)
    ne.add_argument("--type", default=None, help="comma-separated weights for sod")
    ne.add_argument("--group", choices=("SR", "SC", "SQ"), default="SR")
    ne.add_argument("--budget", type=int, default=None)
    ne.add_argument("--allow-quaternion", action="store_true")
    ne.set_defaults(func=cmd_nonexist)

    ct = sub.add_parser("catalog", parents=[common], help="list the seed Golay pairs")
    ct.set_defaults(func=cmd_catalog)
    return ap


def run(argv: Optional[Seq[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except gl.BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, RemrepError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head)
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
