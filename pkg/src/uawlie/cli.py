"""Command-line front end.

Exit status: 0 on success (and when every check passes), 1 when a check
fails or an element is not in the Lie algebra or span asked about, 2 on
usage, parse or evaluation errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .expr import EvalError, ExprSyntaxError, parse_expr, to_free, to_lie, to_uaw
from .hall import NotInLie, format_tree, hall_coords_by_solve, hall_generate
from .linalg import bareiss, expansion_matrix, is_admissible_pivot, support_basis
from .scalar import DivisionByZero, PoleError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _emit(args, text, payload):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_nf(args):
    x = to_uaw(parse_expr(args.expr))
    _emit(args, str(x), x.to_json())
    return EXIT_OK


def cmd_expand(args):
    f = to_free(parse_expr(args.expr))
    _emit(args, str(f), f.to_json())
    return EXIT_OK


def cmd_hall(args):
    elems = hall_generate(args.max_len)
    lines = [f"H{h.index} {format_tree(h.tree)}" for h in elems]
    _emit(args, "\n".join(lines),
          [{"index": h.index, "length": h.length, "tree": format_tree(h.tree)} for h in elems])
    return EXIT_OK


def cmd_hallcoords(args):
    node = parse_expr(args.expr)
    try:
        series = to_lie(node)
    except EvalError:
        series = hall_coords_by_solve(to_free(node))
    _emit(args, str(series), series.to_json())
    return EXIT_OK


def cmd_psi(args):
    x = to_uaw(parse_expr(args.expr))
    p = x.alg.psi(x)
    _emit(args, str(p), p.to_json())
    return EXIT_OK


def cmd_rank(args):
    try:
        with open(args.file, encoding="utf-8") as fh:
            texts = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _UsageError(f"cannot read {args.file}: {exc}") from exc
    if not isinstance(texts, list) or not all(isinstance(t, str) for t in texts):
        raise _UsageError("the file must hold a JSON list of expression strings")
    vecs = [to_uaw(parse_expr(t)) for t in texts]
    if not any(v.terms for v in vecs):
        r = 0
    else:
        basis = support_basis(vecs, key=lambda w: (-sum(w), w))
        r = bareiss(expansion_matrix(vecs, basis), prefer=is_admissible_pivot).rank
    _emit(args, str(r), {"size": len(vecs), "rank": r})
    return EXIT_OK


def cmd_verify(args):
    from .verify import run_suite

    if args.range < 1:
        raise _UsageError("--range must be at least 1")
    report = run_suite(args.suite, range=args.range)
    if args.json:
        print(report.dumps())
    else:
        print(report.text())
    return EXIT_OK if report.status == "pass" else EXIT_FAIL


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="uawlie", description="Normal forms, Hall bases and checks for the universal Askey-Wilson algebra.")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_, expr=True):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                       help="print JSON instead of text")
        if expr:
            s.add_argument("expr")
        s.set_defaults(fn=fn)
        return s

    add("nf", cmd_nf, "normal form in the algebra")
    add("expand", cmd_expand, "expansion in the free algebra")
    add("hallcoords", cmd_hallcoords, "coordinates in the Hall basis")
    add("psi", cmd_psi, "image in the commutative polynomial ring")
    s = add("hall", cmd_hall, "list Hall elements", expr=False)
    s.add_argument("--max-len", type=int, required=True)
    s = add("rank", cmd_rank, "exact rank of a JSON list of expressions", expr=False)
    s.add_argument("--file", required=True)
    s = add("verify", cmd_verify, "run the verification suite", expr=False)
    s.add_argument("--suite", default=None, help="glob over check names")
    s.add_argument("--range", type=int, default=4, help="family parameters run over 1..N")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if args.command == "hall" and args.max_len < 0:
        print("uawlie: error: --max-len must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.fn(args)
    except ExprSyntaxError as exc:
        print(f"uawlie: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EvalError, DivisionByZero, PoleError, _UsageError) as exc:
        print(f"uawlie: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotInLie as exc:
        print(f"uawlie: not in the Lie algebra: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
