"""Command-line front end.

Exit codes: 0 success, 2 invalid arguments, 3 resource cap, 4 verification
mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import combinatorics as comb_
from . import modealg as ma
from . import symfun as sf
from . import verify as vf
from .errors import DomainError, InvariantError, ParseError, ResourceLimitError

EXIT_INVALID = 2
EXIT_RESOURCE = 3
EXIT_MISMATCH = 4


def _count(kind, n, k, m, cap):
    if kind == "pf":
        return "closed form (mn+1)^(n-1) vs enumeration", comb_.parking_function_count(n, m), len(
            comb_.enumerate_parking_functions(n, m, cap=cap)
        )
    if kind == "catalan":
        return "closed form vs k=1 admissible basis", comb_.catalan(n), len(
            comb_.enumerate_admissible_sequences(n, 1, 1, cap=cap)
        )
    if kind == "fuss":
        return "closed form vs k=1 admissible basis", comb_.fuss_catalan(n, m), len(
            comb_.enumerate_admissible_sequences(n, 1, m, cap=cap)
        )
    if kind == "multilinear":
        return "closed form (mn+1)^(n-1) vs multilinear admissible basis", comb_.parking_function_count(n, m), len(
            comb_.enumerate_admissible_sequences(n, n, m, multilinear=True, cap=cap)
        )
    if kind == "dim":
        enumerated = ma.graded_character(n, ma.AlgebraParams(k, m)).total()
        if m != 1:
            return "admissible basis enumeration", None, enumerated
        poly = sf.project_to_variables(sf.frobenius_monomial_expansion(sf.parking_function_rep(n)), k)
        return "projected orbit-counted PF(n) character vs admissible basis", sf.value_at_ones(poly), enumerated
    raise DomainError(f"unknown count kind {kind!r}")


def cmd_count(args, out):
    method, closed, enumerated = _count(args.kind, args.n, args.k, args.m, args.cap_items)
    agree = None if closed is None else closed == enumerated
    report = {
        "kind": args.kind,
        "n": args.n,
        "k": args.k,
        "m": args.m,
        "value": enumerated,
        "closed_form": closed,
        "enumerated": enumerated,
        "method": method,
        "agree": agree,
    }
    if args.format == "text":
        tail = "" if agree is None else (" (agree)" if agree else " (MISMATCH)")
        out.write(f"{enumerated}\n# {method}: closed={closed} enumerated={enumerated}{tail}\n")
    else:
        _emit(report, args.format, out)
    return EXIT_MISMATCH if agree is False else 0


def cmd_normal_form(args, out):
    w = ma.parse_word(args.expr)
    k = args.k if args.k_given else max(g.colour for g in w)
    params = ma.AlgebraParams(k, args.m)
    nf = ma.rewrite_to_admissible(ma.AlgebraElement.of(w), params, fuel=args.cap_steps)
    if args.format == "text":
        out.write(ma.format_element(nf) + "\n")
    elif args.format == "json":
        out.write(nf.to_json() + "\n")
    else:
        rows = [{"coeff": f"{c.numerator}/{c.denominator}", "word": ma.format_word(v)} for v, c in nf]
        _emit_rows(rows, ["coeff", "word"], out)
    return 0


def cmd_basis(args, out):
    params = ma.AlgebraParams(args.k, args.m)
    basis = ma.admissible_basis(args.n, params, multilinear=args.multilinear)
    if args.format == "text":
        for w in basis:
            out.write(ma.format_word(w) + "\n")
    elif args.format == "json":
        out.write(json.dumps([[list(g) for g in w] for w in basis]) + "\n")
    else:
        _emit_rows([{"word": ma.format_word(w)} for w in basis], ["word"], out)
    return 0


def cmd_character(args, out):
    params = ma.AlgebraParams(args.k, args.m)
    ch = ma.graded_character(args.n, params).coeffs
    report = {"n": args.n, "k": args.k, "m": args.m, "graded_character": _poly_rows(ch)}
    status = 0
    if args.m == 1:
        frob = sf.frobenius_monomial_expansion(sf.parking_function_rep(args.n))
        proj = sf.project_to_variables(frob, args.k)
        report["frobenius"] = json.loads(frob.to_json())
        report["agree"] = proj == ch
        status = 0 if report["agree"] else EXIT_MISMATCH
    if args.format == "text":
        out.write(f"ch_{args.n} = {sf.format_polynomial(ch)}\n")
        if "agree" in report:
            out.write(f"PF({args.n}) projection agrees: {report['agree']}\n")
    elif args.format == "json":
        out.write(json.dumps(report) + "\n")
    else:
        _emit_rows(report["graded_character"], ["exponents", "dim"], out)
    return status


def cmd_verify(args, out):
    suite = args.suite
    if suite == "relations":
        rep = vf.verify_relations(args.k, args.m, args.degree, args.modes, args.threads, args.timeout)
    elif suite == "independence":
        rep = vf.verify_independence([(args.n, args.k, args.m)], args.threads, args.timeout)
    elif suite == "character-match":
        ks = [args.k] if args.k_given else None
        rep = vf.verify_character_match(args.n, ks, args.timeout)
    elif suite == "bijection":
        rep = vf.verify_bijection(args.n, args.timeout)
    elif suite == "fock-character":
        rep = vf.verify_fock_character(args.k, args.m, args.window, args.degree, args.timeout)
    else:
        rep = vf.verify_rewrite(args.samples, args.seed, args.timeout)
    data = rep.to_dict()
    if args.format == "text":
        out.write(f"{suite}: {rep.status}\n")
        for case in rep.cases:
            out.write(json.dumps(case) + "\n")
    elif args.format == "json":
        out.write(json.dumps(data) + "\n")
    else:
        _emit_rows([{"case": json.dumps(c), "status": c["status"]} for c in rep.cases], ["case", "status"], out)
    if not rep.passed:
        sys.stderr.write("first counterexample: " + json.dumps(rep.first_failure()) + "\n")
        return EXIT_MISMATCH
    return 0


def _poly_rows(poly):
    return [{"exponents": list(alpha), "dim": c} for alpha, c in sorted(poly.items(), reverse=True)]


def _emit(report, fmt, out):
    if fmt == "json":
        out.write(json.dumps(report) + "\n")
    else:
        _emit_rows([report], list(report), out)


def _emit_rows(rows, fields, out):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({f: row.get(f) for f in fields})
    out.write(buf.getvalue())


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=_positive, default=1)
    common.add_argument("--k", type=_positive, default=None)
    common.add_argument("--m", type=_positive, default=1)
    common.add_argument("--format", choices=["json", "csv", "text"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=_positive, default=1)
    common.add_argument("--cap-items", type=_positive, default=comb_.DEFAULT_ITEM_CAP)
    common.add_argument("--cap-steps", type=_positive, default=ma.DEFAULT_FUEL)
    common.add_argument("--timeout", type=float, default=vf.DEFAULT_TIMEOUT)

    parser = argparse.ArgumentParser(prog="parking-vertex", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="closed-form counts checked by enumeration")
    p.add_argument("kind", choices=["pf", "catalan", "fuss", "multilinear", "dim"])
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("normal-form", parents=[common], help="admissible expansion of a word")
    p.add_argument("expr")
    p.set_defaults(func=cmd_normal_form)

    p = sub.add_parser("basis", parents=[common], help="list admissible basis words")
    p.add_argument("--multilinear", action="store_true")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("character", parents=[common], help="graded character of Q_n(k)")
    p.set_defaults(func=cmd_character)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument(
        "suite",
        choices=["relations", "independence", "character-match", "bijection", "fock-character", "rewrite"],
    )
    p.add_argument("--degree", type=int, default=None, help="Fock depth bound (relations, fock-character)")
    p.add_argument("--modes", type=int, default=3, help="mode bound |i|,|j| for relations")
    p.add_argument("--window", type=int, default=3, help="charge window for fock-character")
    p.add_argument("--samples", type=_positive, default=500, help="random words for the rewrite suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    args.k_given = args.k is not None
    if args.k is None:
        args.k = args.n if args.command in ("character", "basis") else 1
    if getattr(args, "degree", None) is None and args.command == "verify":
        args.degree = 5 if args.suite == "relations" else 8
    if args.command == "verify" and args.suite == "fock-character" and not args.k_given:
        args.k = 2
    try:
        return args.func(args, out)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_INVALID
    except (DomainError, InvariantError) as exc:
        sys.stderr.write(f"invalid argument: {exc}\n")
        return EXIT_INVALID
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
