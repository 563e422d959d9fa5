"""Batch command line front end.

Subcommands cover the pipeline: describe/normalize a quiver file, emit
its doubled quiver, list closed words, build generators, verify
invariance, run span checks against the derivation oracle, contract a
permutation, and build a supermixed reduction.  Output is deterministic
for a fixed (input, seed, version): reports embed the configuration and
are serialized with sorted keys and no timestamps.

The environment variable QTL_THREADS caps worker threads for the
verification sweep; each generator owns a seed derived from the global
one, so results do not depend on scheduling.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys

from . import __version__, perms
from .engine import (CoordinateContext, contract, enumerate_generators,
                     tr_star_direct, verify_invariance)
from .errors import BudgetExceeded, QtlError
from .fields import GF, QQ, field_from_name
from .oracle import span_check
from .quiver import arrow_classes, double_quiver, eliminate_fourth_case
from .specfile import parse_spec, quiver_to_dict
from .supermixed import build_reduction
from .words import (enumerate_closed_words, format_trace_product, format_word,
                    right_record)

SCHEMA = "qtl.report/1"


def _base_report(args, command: str) -> dict:
    return {
        "schema": SCHEMA,
        "version": __version__,
        "command": command,
        "config": {
            "input": getattr(args, "file", None),
            "field": getattr(args, "field", None),
            "seed": getattr(args, "seed", None),
            "format": args.format,
        },
    }


def _emit(report: dict, args, rows=None):
    """Render a report as json, text, or csv (rows fall back to key lines)."""
    if args.format == "json":
        print(json.dumps(report, sort_keys=True, default=str))
        return
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows:
            for row in rows:
                writer.writerow(row)
        else:
            for key in sorted(report):
                if key in ("schema", "version", "config", "command"):
                    continue
                writer.writerow([key, json.dumps(report[key], sort_keys=True, default=str)])
        sys.stdout.write(buf.getvalue())
        return
    # text
    for key in sorted(report):
        if key in ("schema", "version"):
            continue
        val = report[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True, default=str)
        print(f"{key}: {val}")


def _parse_multidegree(text: str) -> dict:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        name, _, deg = part.partition("=")
        if not deg:
            raise QtlError(f"multidegree entries look like arrow=deg, got {part!r}")
        out[name.strip()] = int(deg)
    return out


def _threads() -> int:
    raw = os.environ.get("QTL_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# -- subcommands ---------------------------------------------------------------


def cmd_describe(args):
    quiver, t, sm = parse_spec(args.file)
    cases = arrow_classes(quiver, t)
    normalized, transposed = eliminate_fourth_case(quiver, t)
    report = _base_report(args, "describe")
    report.update({
        "quiver": quiver_to_dict(quiver, t),
        "arrow_cases": {aid: case.name for aid, case in sorted(cases.items())},
        "fourth_case_arrows": sorted(aid for aid, tr in transposed.items() if tr),
        "normalized": quiver_to_dict(normalized, t),
        "supermixed": bool(sm),
    })
    rows = [["arrow", "case"]] + [[aid, case.name] for aid, case in sorted(cases.items())]
    _emit(report, args, rows)
    return 0


def cmd_double(args):
    quiver, t, _ = parse_spec(args.file)
    quiver, _ = eliminate_fourth_case(quiver, t)
    dq = double_quiver(quiver, t)

    def vname(v):
        return f"{v[0]}*" if v[1] else str(v[0])

    letters = [{"id": l.id, "from": vname(dq.origin(l)), "to": vname(dq.end(l))}
               for l in dq.letters()]
    report = _base_report(args, "double")
    report.update({
        "vertices": [vname(v) for v in sorted({p for ends in dq.endpoints.values() for p in ends})],
        "arrows": letters,
    })
    rows = [["id", "from", "to"]] + [[l["id"], l["from"], l["to"]] for l in letters]
    _emit(report, args, rows)
    return 0


def cmd_paths(args):
    quiver, t, _ = parse_spec(args.file)
    quiver, _ = eliminate_fourth_case(quiver, t)
    dq = double_quiver(quiver, t)
    words = enumerate_closed_words(dq, args.max_len, args.dedupe)
    report = _base_report(args, "paths")
    report["config"]["max_len"] = args.max_len
    report["config"]["dedupe"] = args.dedupe
    report["count"] = len(words)
    report["words"] = [format_word(w) for w in words]
    rows = [["word"]] + [[format_word(w)] for w in words]
    _emit(report, args, rows)
    return 0


def cmd_generate(args):
    quiver, t, _ = parse_spec(args.file)
    quiver, _ = eliminate_fourth_case(quiver, t)
    field = field_from_name(args.field)
    ctx = CoordinateContext(quiver, t, field)
    gens = enumerate_generators(quiver, t, args.max_len, args.max_j, field, ctx)
    total_terms = sum(len(inv.poly.terms) for _, _, inv in gens)
    if total_terms > args.max_monomials:
        raise BudgetExceeded(
            f"generators hold {total_terms} monomials, budget is {args.max_monomials}")
    report = _base_report(args, "generate")
    report["config"].update({"max_len": args.max_len, "max_j": args.max_j,
                             "max_monomials": args.max_monomials})
    report["generators"] = [
        {"word": format_word(w), "j": j, "poly": inv.poly.render()}
        for w, j, inv in gens]
    report["count"] = len(gens)
    rows = [["word", "j", "poly"]] + [[g["word"], g["j"], g["poly"]]
                                      for g in report["generators"]]
    _emit(report, args, rows)
    return 0


def cmd_verify(args):
    quiver, t, _ = parse_spec(args.file)
    quiver, _ = eliminate_fourth_case(quiver, t)
    field = field_from_name(args.field)
    ctx = CoordinateContext(quiver, t, field)
    gens = enumerate_generators(quiver, t, args.max_len, args.max_j, field, ctx)

    def run_one(item):
        idx, (w, j, inv) = item
        rng = random.Random((args.seed, idx))
        rep = verify_invariance(inv, quiver, t, args.trials, field, rng, ctx)
        return {"word": format_word(w), "j": j, "passed": rep.passed,
                "failures": rep.failures}

    threads = _threads()
    items = list(enumerate(gens))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_one, items))
    else:
        results = [run_one(it) for it in items]
    failures = [r for r in results if not r["passed"]]
    report = _base_report(args, "verify")
    report["config"].update({"max_len": args.max_len, "max_j": args.max_j,
                             "trials": args.trials, "threads": threads})
    report["generators_checked"] = len(results)
    report["failures"] = failures
    report["pass"] = not failures
    rows = [["word", "j", "passed"]] + [[r["word"], r["j"], r["passed"]] for r in results]
    _emit(report, args, rows)
    return 0 if not failures else 1


def cmd_span_check(args):
    quiver, t, _ = parse_spec(args.file)
    quiver, _ = eliminate_fourth_case(quiver, t)
    rbar = _parse_multidegree(args.multidegree)
    known = {a.id for a in quiver.arrows}
    unknown = set(rbar) - known
    if unknown:
        raise QtlError(f"multidegree names unknown arrows {sorted(unknown)}")
    rep = span_check(quiver, t, rbar, max_word_len=args.max_len,
                     max_j=args.max_j, budget=args.budget)
    report = _base_report(args, "span-check")
    report["config"].update({"multidegree": rbar, "max_len": args.max_len,
                             "max_j": args.max_j, "budget": args.budget})
    report.update(rep.to_dict())
    _emit(report, args)
    return 0


def cmd_contract(args):
    r = args.t + 2 * args.s
    sigma = perms.parse_cycles(args.sigma, r)
    raw = contract(sigma, args.t, args.s)
    right = right_record(raw)
    report = _base_report(args, "contract")
    report["config"].update({"t": args.t, "s": args.s, "sigma": args.sigma})
    report["raw"] = format_trace_product(raw)
    report["right_record"] = format_trace_product(right)
    if args.n:
        direct = tr_star_direct(sigma, args.t, args.s, args.n)
        report["tensor_terms_at_n"] = len(direct.terms)
    _emit(report, args)
    return 0


def cmd_reduce_supermixed(args):
    quiver, t, sm = parse_spec(args.file)
    if sm is None:
        raise QtlError("the spec file has no supermixed block")
    red = build_reduction(sm)
    report = _base_report(args, "reduce-supermixed")
    out = quiver_to_dict(red.qprime, red.tprime)
    out["substitutions"] = [
        {"arrow": aid, "matrix": red.constant_subs[aid]}
        for aid in sorted(red.constant_subs)]
    out["shape_identifications"] = [
        {"arrow": aid, "sign": red.shape_subs[aid]}
        for aid in sorted(red.shape_subs)]
    report["reduction"] = out
    report["notes"] = red.notes
    _emit(report, args)
    return 0


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"),
                        default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    top = argparse.ArgumentParser(
        prog="qtl",
        description="invariants of mixed quiver representations, exactly")
    top.add_argument("--format", choices=("text", "json", "csv"), default="text")
    top.add_argument("--seed", type=int, default=0)
    sub = top.add_subparsers(dest="command", required=True)

    def add_cmd(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    def with_file(p):
        p.add_argument("file", help="quiver spec file (JSON)")
        return p

    with_file(add_cmd("describe", "validate, classify, normalize"))

    with_file(add_cmd("double", "emit the doubled quiver"))

    p = with_file(add_cmd("paths", "canonical closed words"))
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--dedupe", choices=("rotation", "rotation+transpose"),
                   default="rotation+transpose")

    p = with_file(add_cmd("generate", "word generators as polynomials"))
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--max-j", type=int, default=None)
    p.add_argument("--field", default="q")
    p.add_argument("--max-monomials", type=int, default=100000)

    p = with_file(add_cmd("verify", "randomized exact invariance"))
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--max-j", type=int, default=None)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--field", default="p:101")

    p = with_file(add_cmd("span-check", "generator span vs oracle"))
    p.add_argument("--multidegree", required=True,
                   help="comma list like b=1,c=1")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--max-j", type=int, default=None)
    p.add_argument("--budget", type=int, default=200000)

    p = add_cmd("contract", "contract a permutation into traces")
    p.add_argument("--t", type=int, required=True, help="size of the plain block")
    p.add_argument("--s", type=int, required=True, help="size of each starred block")
    p.add_argument("--sigma", required=True, help="cycle notation, e.g. (1726)(354)")
    p.add_argument("--n", type=int, default=None,
                   help="also build the tensor sum at this dimension")

    with_file(add_cmd("reduce-supermixed", "enlarged quiver + substitutions"))

    return top


_HANDLERS = {
    "describe": cmd_describe,
    "double": cmd_double,
    "paths": cmd_paths,
    "generate": cmd_generate,
    "verify": cmd_verify,
    "span-check": cmd_span_check,
    "contract": cmd_contract,
    "reduce-supermixed": cmd_reduce_supermixed,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except QtlError as e:
        diag = {"error": {"type": type(e).__name__, "message": str(e)}}
        print(json.dumps(diag, sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
