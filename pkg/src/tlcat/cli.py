"""Command-line front end.

Diagrams are given inline in the ``tl1 dom=.. cod=.. loops=.. pairs=..``
format or as a path to a file holding one.  Exit status is 0 on success,
1 for a negative answer (non-planar, ill-typed, not idempotent, unsound)
and 2 for malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import category as cat
from .knots import bracket_via_tl, jones, parse_braid
from .lam import (
    LambdaTypeError,
    compile_derivation,
    format_derivation,
    normalize,
    parse_judgement,
    soundness_check,
    typecheck,
)
from .laurent import format_in_t
from .planar import Diagram, enumerate_planar, format_diagram, is_planar, parse_diagram
from .render import render_ascii, render_svg


class _Negative(Exception):
    """A well-formed question whose answer is no."""


def _diagram(arg: str) -> Diagram:
    return parse_diagram(_read_text(arg))


def _dims(text: str | None) -> dict[str, int]:
    if not text:
        return {}
    out = {}
    for item in text.split(","):
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip().isdigit():
            raise ValueError(f"bad dimension {item!r}; expected name=k")
        out[name.strip()] = int(value)
    return out


def _cmd_binary(op):
    def run(args) -> str:
        return format_diagram(op(_diagram(args.first), _diagram(args.second)))

    return run


def _cmd_unary(op):
    def run(args) -> str:
        return format_diagram(op(_diagram(args.diagram)))

    return run


def _cmd_trace(args) -> str:
    return str(cat.trace(_diagram(args.diagram)))


def _cmd_factor(args) -> str:
    return str(cat.factor_into_generators(_diagram(args.diagram)))


def _cmd_split(args) -> str:
    try:
        r, s = cat.split_idempotent(_diagram(args.diagram))
    except cat.NotIdempotentError as exc:
        raise _Negative(str(exc)) from None
    return f"{format_diagram(r)}\n{format_diagram(s)}"


def _cmd_epimono(args) -> str:
    e, mo = cat.epi_mono_factorize(_diagram(args.diagram))
    return f"{format_diagram(e)}\n{format_diagram(mo)}"


def _cmd_unname(args) -> str:
    return format_diagram(cat.unname(_diagram(args.diagram), args.n))


def _cmd_evaluate(args) -> str:
    return format_diagram(cat.evaluate_word(cat.parse_word(args.word, args.arity)))


def _cmd_planar(args) -> str:
    d = parse_diagram(_read_text(args.diagram), check=False)
    if not is_planar(d.matching):
        raise _Negative("non-planar")
    return "planar"


def _read_text(arg: str) -> str:
    if not arg.lstrip().startswith("tl1") and os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read().strip()
    return arg


def _cmd_enumerate(args) -> str:
    return "\n".join(format_diagram(Diagram(0, f)) for f in enumerate_planar(args.n, args.m))


def _cmd_bracket(args) -> str:
    return str(bracket_via_tl(parse_braid(args.braid)))


def _cmd_jones(args) -> str:
    v = jones(parse_braid(args.braid))
    return format_in_t(v) if args.in_t else str(v)


def _cmd_lam(args) -> str:
    judgement = parse_judgement(args.input)
    dims = _dims(args.dims)
    try:
        if args.action == "check":
            d = typecheck(judgement)
            return format_derivation(d) if args.tree else str(d.type)
        if args.action == "compile":
            return format_diagram(compile_derivation(typecheck(judgement), dims))
        if args.action == "normalize":
            typecheck(judgement)
            return str(normalize(judgement.term))
        if not soundness_check(judgement, base_dims=dims):
            raise _Negative("unsound")
        return "sound"
    except LambdaTypeError as exc:
        raise _Negative(f"{type(exc).__name__}: {exc}") from None


def _cmd_render(args) -> str | None:
    d = _diagram(args.diagram)
    if args.svg:
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(d))
        return None
    return render_ascii(d).rstrip("\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tlcat", description="Temperley-Lieb diagrams, knot brackets and planar lambda terms."
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def diagram_cmd(name: str, help_text: str, func) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("diagram", help="diagram literal or file")
        p.set_defaults(func=func)
        return p

    for name, op, help_text in (
        ("compose", cat.compose, "stack the first diagram above the second"),
        ("tensor", cat.tensor, "place the first diagram left of the second"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("first")
        p.add_argument("second")
        p.set_defaults(func=_cmd_binary(op))

    for name, op, help_text in (
        ("dagger", cat.dagger, "reflect top to bottom"),
        ("dual", cat.dual, "rotate by a half turn"),
        ("conjugate", cat.conjugate, "reflect left to right"),
        ("name", cat.name, "bend all wires down into a state"),
        ("coname", cat.coname, "bend all wires up into a costate"),
    ):
        diagram_cmd(name, help_text, _cmd_unary(op))

    diagram_cmd("trace", "loop count of the closure", _cmd_trace)
    diagram_cmd("factor", "write an endomorphism as a generator word", _cmd_factor)
    diagram_cmd("split", "split an idempotent as r then s", _cmd_split)
    diagram_cmd("epimono", "epi then mono factorization", _cmd_epimono)
    diagram_cmd("planar", "exit 0 if planar, 1 if not", _cmd_planar)
    p = diagram_cmd("unname", "turn a state 0 -> n+m back into n -> m", _cmd_unname)
    p.add_argument("n", type=int)
    p = diagram_cmd("render", "draw a diagram", _cmd_render)
    p.add_argument("--svg", metavar="PATH", help="write SVG here instead of printing text")

    p = sub.add_parser("evaluate", help="evaluate a generator word such as 'd^1 U2 U1'")
    p.add_argument("word")
    p.add_argument("--arity", type=int, required=True)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("enumerate", help="all loop-free planar diagrams n -> m")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("bracket", help="Kauffman bracket of a braid closure")
    p.add_argument("--braid", required=True, help="e.g. 'strands=2 word=1 1 1'")
    p.set_defaults(func=_cmd_bracket)

    p = sub.add_parser("jones", help="Jones polynomial of a braid closure")
    p.add_argument("--braid", required=True)
    p.add_argument("--in-t", action="store_true", help="print in t = A^-4")
    p.set_defaults(func=_cmd_jones)

    p = sub.add_parser("lam", help="planar lambda calculus")
    p.add_argument("action", choices=("check", "compile", "normalize", "sound"))
    p.add_argument("input", help="term or judgement 'x:A, y:B |- term'")
    p.add_argument("--dims", help="base type dimensions, e.g. A=2,B=1")
    p.add_argument("--tree", action="store_true", help="with check: print the derivation")
    p.set_defaults(func=_cmd_lam)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except _Negative as exc:
        text = str(exc)
        if text in ("non-planar", "unsound"):
            print(text)
        else:
            print(text, file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if out is not None:
        print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
