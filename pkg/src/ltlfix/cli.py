"""Command-line front end.

Exit codes: 0 affirmative verdict, 1 negative verdict or suite mismatch,
2 usage or input error.  ``--json`` prints one JSON object per result line.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fixpoint import (
    FIXED_POINT,
    OperatorTemplate,
    TemplateError,
    has_global_fixed_point,
    law_suite,
    paradox_suite,
)
from .formula import ParseError, parse, render
from .sat import (
    DEFAULT_CLOSURE_LIMIT,
    ResourceLimitError,
    is_consequence,
    is_satisfiable,
    is_valid,
)
from .trace import (
    TraceSyntaxError,
    UnknownAtomError,
    evaluate,
    has_vocabulary_header,
    parse_trace,
    render_trace,
    with_vocabulary,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


class _Out:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def record(self, text: str, **fields):
        if self.as_json:
            fields = {k: v for k, v in fields.items() if v is not None}
            print(json.dumps(fields, sort_keys=True, ensure_ascii=False), file=self.stream)
        else:
            print(text, file=self.stream)


def _read_formula(args, attr="formula") -> str:
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            return fh.read()
    text = getattr(args, attr)
    if text is None:
        raise _UsageError(f"missing {attr} argument (or --file)")
    return text


class _UsageError(Exception):
    pass


def _limits(args) -> dict:
    return {"closure_limit": args.closure_limit}


def cmd_sat(args, out: _Out) -> int:
    f = parse(_read_formula(args))
    v = is_satisfiable(f, **_limits(args))
    if v:
        w = render_trace(v.witness)
        out.record(f"SAT\n{w}", command="sat", input=render(f), verdict="SAT", witness=w)
        return EXIT_OK
    out.record("UNSAT", command="sat", input=render(f), verdict="UNSAT")
    return EXIT_NEGATIVE


def cmd_valid(args, out: _Out) -> int:
    f = parse(_read_formula(args))
    v = is_valid(f, **_limits(args))
    if v:
        out.record("VALID", command="valid", input=render(f), verdict="VALID")
        return EXIT_OK
    w = render_trace(v.countermodel)
    out.record(f"NOT VALID\n{w}", command="valid", input=render(f), verdict="NOT VALID", witness=w)
    return EXIT_NEGATIVE


def cmd_implies(args, out: _Out) -> int:
    if len(args.formulas) < 1:
        raise _UsageError("implies needs a conclusion")
    *premises, conclusion = [parse(t) for t in args.formulas]
    c = is_consequence(premises, conclusion, **_limits(args))
    shown = " ; ".join(render(p) for p in premises) + " |= " + render(conclusion)
    if c:
        out.record("CONSEQUENCE", command="implies", input=shown, verdict="CONSEQUENCE")
        return EXIT_OK
    w = render_trace(c.countermodel)
    out.record(
        f"NOT A CONSEQUENCE\n{w}",
        command="implies", input=shown, verdict="NOT A CONSEQUENCE", witness=w,
    )
    return EXIT_NEGATIVE


def cmd_eval(args, out: _Out) -> int:
    trace = parse_trace(args.trace)
    f = parse(args.formula)
    if not has_vocabulary_header(args.trace):
        # undeclared vocabulary: atoms never listed in a state are ff
        trace = with_vocabulary(trace, f.atoms())
    if args.position < 0:
        raise _UsageError("position must be a natural number")
    value = evaluate(trace, args.position, f)
    word = "tt" if value else "ff"
    out.record(
        word, command="eval", input=f"{render_trace(trace)} @ {args.position} : {render(f)}",
        verdict=word,
    )
    return EXIT_OK if value else EXIT_NEGATIVE


def cmd_fixpoint(args, out: _Out) -> int:
    t = OperatorTemplate.parse(_read_formula(args, "template"))
    r = has_global_fixed_point(t, **_limits(args))
    _report(out, "fixpoint", r)
    return EXIT_OK if r.has_fixed_point else EXIT_NEGATIVE


def _report(out: _Out, command: str, r):
    label = "FIXED POINT" if r.verdict == FIXED_POINT else "NO FIXED POINT"
    w = render_trace(r.witness) if r.witness is not None else None
    if command == "suite":
        status = "ok" if r.matches else "MISMATCH"
        text = f"{status:<8} {str(r.template):<10} {label:<15} [{r.theorem_tag}]"
        if w:
            text += f" {w}"
        if not r.matches:
            want = "FIXED POINT" if r.expected == FIXED_POINT else "NO FIXED POINT"
            text += f"\n- expected: {want}\n+ got:      {label}"
    else:
        text = label + (f"\n{w}" if w else "")
    out.record(
        text, command=command, input=str(r.template), verdict=r.verdict,
        witness=w, theorem_tag=r.theorem_tag,
    )


def cmd_suite(args, out: _Out) -> int:
    reports = paradox_suite(**_limits(args))
    for r in reports:
        _report(out, "suite", r)
    return EXIT_OK if all(r.matches for r in reports) else EXIT_NEGATIVE


def cmd_laws(args, out: _Out) -> int:
    results = law_suite(**_limits(args))
    for r in results:
        verdict = "VALID" if r.valid else "NOT VALID"
        w = render_trace(r.countermodel) if r.countermodel is not None else None
        status = "ok" if r.valid else "MISMATCH"
        text = f"{status:<8} {verdict:<9} {render(r.formula)}  [{r.tag}]"
        if w:
            text += f"\n- expected: VALID\n+ got:      NOT VALID {w}"
        out.record(
            text, command="laws", input=render(r.formula), verdict=verdict,
            witness=w, theorem_tag=r.tag,
        )
    return EXIT_OK if all(r.valid for r in results) else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    def options(default_json, default_limit):
        p = argparse.ArgumentParser(add_help=False)
        p.add_argument(
            "--json", action="store_true", default=default_json,
            help="one JSON record per result",
        )
        p.add_argument(
            "--closure-limit", type=int, default=default_limit, metavar="N",
            help=f"largest closure the tableau may build (default: {DEFAULT_CLOSURE_LIMIT})",
        )
        return p

    # flags are accepted before or after the subcommand; SUPPRESS keeps the
    # subcommand parser from resetting values given before it
    common = options(argparse.SUPPRESS, argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="ltlfix", description="LTL satisfiability and temporal fixed points",
        parents=[options(False, DEFAULT_CLOSURE_LIMIT)],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_, parents=[common])
        p.set_defaults(func=func)
        return p

    for name, func, help_ in (
        ("sat", cmd_sat, "decide satisfiability; print a witness lasso"),
        ("valid", cmd_valid, "decide validity; print a countermodel"),
    ):
        p = add(name, func, help_)
        p.add_argument("formula", nargs="?")
        p.add_argument("--file", help="read the formula from a file")

    p = add("implies", cmd_implies, "check PREMISE... |= CONCLUSION")
    p.add_argument("formulas", nargs="+", metavar="FORMULA")

    p = add("eval", cmd_eval, "evaluate a formula on a lasso trace")
    p.add_argument("trace")
    p.add_argument("formula")
    p.add_argument("position", type=int, nargs="?", default=0)

    p = add("fixpoint", cmd_fixpoint, "does an operator template have a fixed point?")
    p.add_argument("template", nargs="?")
    p.add_argument("--file", help="read the template from a file")

    add("suite", cmd_suite, "run the Yablo fixed-point regression")
    add("laws", cmd_laws, "check the next/always laws and equivalence chains")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    out = _Out(args.json)
    try:
        return args.func(args, out)
    except ParseError as e:
        print(f"error: parse error {e}", file=sys.stderr)
    except TraceSyntaxError as e:
        print(f"error: trace syntax error {e}", file=sys.stderr)
    except (UnknownAtomError, TemplateError, ResourceLimitError, _UsageError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
