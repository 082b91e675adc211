"""Command-line front end.

Exit codes are a bit-exact contract: 0 for a certified verdict or a
successful construction, 2 when a search was exhausted or the verdict
is Unknown, 1 for input errors.
"""

from __future__ import annotations

import argparse
import sys

from . import checker, formats, lef, wreath
from .errors import (
    GraphError,
    GroupError,
    IdentityElement,
    ParseError,
    SearchExhausted,
    WitnessError,
    WordError,
)
from .graphs import TranslationGraph, quotient_graph

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_UNKNOWN = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gwreath",
        description=(
            "Exact computation with graph-indexed product groups extended "
            "by a vertex-permuting action: classification, separation "
            "certificates, witnesses, quotient graphs, and finite partial "
            "models of the action."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bound=True):
        p.add_argument("instance", help="instance file")
        p.add_argument(
            "--format", choices=("text", "structured"), default="text",
            help="output format (default: text)",
        )
        p.add_argument("--output", help="write output to this path instead of stdout")
        if bound:
            p.add_argument(
                "--bound", type=int, default=64,
                help="largest modulus / subgroup search bound (default: 64)",
            )

    p = sub.add_parser("normalize", help="canonical form of a named element")
    common(p, bound=False)
    p.add_argument("--element", required=True)

    p = sub.add_parser("mul", help="product of two named elements")
    common(p, bound=False)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = sub.add_parser("invert", help="inverse of a named element")
    common(p, bound=False)
    p.add_argument("--element", required=True)

    p = sub.add_parser("check", help="classify the instance")
    common(p)
    p.add_argument(
        "--t-max", type=int, default=None,
        help="offset window for the pair condition (default: 3x the largest datum)",
    )
    p.add_argument(
        "--wreath", action="store_true",
        help="use the specialized complete-graph classifier",
    )

    p = sub.add_parser("check-fp", help="finite presentation report")
    common(p, bound=False)

    p = sub.add_parser("separate", help="separation certificate for an element")
    common(p)
    p.add_argument("--element", required=True)

    p = sub.add_parser("witness", help="non-separability witness")
    common(p, bound=False)
    p.add_argument("--kind", required=True, choices=wreath.WITNESS_KINDS)
    p.add_argument(
        "--vertices", required=True,
        help="one vertex (T3.1) or two (T3.2 / T3.3), space separated",
    )
    p.add_argument(
        "--elements", default=None,
        help="coefficient elements (default: chosen automatically)",
    )

    p = sub.add_parser("quotient", help="quotient graph by a subgroup")
    common(p, bound=False)
    p.add_argument("--modulus", type=int, default=None, help="translation subgroup mZ")
    p.add_argument(
        "--subgroup", default=None,
        help="finite-mode generators, e.g. '1,0;0,2' (semicolon separated vectors)",
    )

    p = sub.add_parser("lef", help="finite partial model of the action")
    common(p)
    p.add_argument("--gamma-set", required=True, help="acting elements, e.g. '0,1'")
    p.add_argument("--vertex-set", required=True, help="vertices, e.g. 'c:0 c:1 c:2'")

    return parser


def _emit(lines, args) -> None:
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _load(args):
    return formats.load_instance(args.instance)


def _named_element(elements, name):
    if name not in elements:
        raise ParseError(f"no element named {name!r} in the instance file")
    return elements[name]


def _cmd_normalize(args) -> int:
    instance, elements = _load(args)
    x = instance.normalize(_named_element(elements, args.element))
    if args.format == "structured":
        _emit(formats.wreath_element_lines(instance, x), args)
    else:
        _emit([f"word: {formats.word_text(x.word)}", f"gamma: {formats.gamma_text(x.gamma)}"], args)
    return EXIT_OK


def _cmd_mul(args) -> int:
    instance, elements = _load(args)
    x = _named_element(elements, args.left)
    y = _named_element(elements, args.right)
    z = wreath.gw_compose(instance, x, y)
    if args.format == "structured":
        _emit(formats.wreath_element_lines(instance, z), args)
    else:
        _emit([f"word: {formats.word_text(z.word)}", f"gamma: {formats.gamma_text(z.gamma)}"], args)
    return EXIT_OK


def _cmd_invert(args) -> int:
    instance, elements = _load(args)
    x = _named_element(elements, args.element)
    z = wreath.gw_invert(instance, x)
    if args.format == "structured":
        _emit(formats.wreath_element_lines(instance, z), args)
    else:
        _emit([f"word: {formats.word_text(z.word)}", f"gamma: {formats.gamma_text(z.gamma)}"], args)
    return EXIT_OK


def _cmd_check(args) -> int:
    instance, _ = _load(args)
    if args.wreath:
        verdict = checker.classify_wreath(instance)
    else:
        verdict = checker.classify(instance, bound=args.bound, t_max=args.t_max)
    if args.format == "structured":
        _emit(formats.verdict_lines(instance, verdict), args)
    else:
        _emit(formats.render_verdict(instance, verdict), args)
    return EXIT_OK if verdict.certified else EXIT_UNKNOWN


def _cmd_check_fp(args) -> int:
    instance, _ = _load(args)
    report = checker.check_finitely_presented(instance)
    if args.format == "structured":
        _emit(formats.fp_lines(report), args)
    else:
        _emit(formats.render_fp(report), args)
    return EXIT_OK


def _cmd_separate(args) -> int:
    instance, elements = _load(args)
    x = _named_element(elements, args.element)
    try:
        cert = wreath.separate(instance, x, bound=args.bound)
    except SearchExhausted as exc:
        _emit([f"SEARCH EXHAUSTED at bound {exc.bound}"], args)
        return EXIT_UNKNOWN
    if args.format == "structured":
        _emit(formats.certificate_lines(instance, cert), args)
    else:
        _emit(formats.render_certificate(instance, cert), args)
    return EXIT_OK


def _cmd_witness(args) -> int:
    instance, _ = _load(args)
    vertices = [
        formats.parse_vertex(instance.graph, token) for token in args.vertices.split()
    ]
    elements = None
    if args.elements is not None:
        elements = [
            formats.parse_value(instance.delta, token)
            for token in args.elements.split()
        ]
    try:
        wit = wreath.witness(instance, args.kind, vertices, elements)
    except WitnessError as exc:
        _emit([f"NO WITNESS: {exc}"], args)
        return EXIT_UNKNOWN
    if args.format == "structured":
        _emit(formats.witness_lines(instance, wit), args)
    else:
        _emit(formats.render_witness(instance, wit), args)
    return EXIT_OK


def _cmd_quotient(args) -> int:
    instance, _ = _load(args)
    if isinstance(instance.graph, TranslationGraph):
        if args.modulus is None:
            raise ParseError("translation instances need --modulus")
        q = quotient_graph(instance.graph, args.modulus)
    else:
        if args.subgroup is None:
            raise ParseError("finite-mode instances need --subgroup")
        gens = []
        for chunk in args.subgroup.split(";"):
            chunk = chunk.strip()
            if chunk:
                gens.append(tuple(int(x) for x in chunk.split(",")))
        q = quotient_graph(instance.graph, gens)
    if args.format == "structured":
        _emit(["gwreath v1 quotient-graph"] + formats.quotient_lines(q), args)
    else:
        lines = [f"QUOTIENT with {len(q.vertices)} vertices"]
        lines += ["  " + line for line in formats.quotient_lines(q)]
        _emit(lines, args)
    return EXIT_OK


def _cmd_lef(args) -> int:
    instance, _ = _load(args)
    if not isinstance(instance.graph, TranslationGraph):
        raise ParseError("finite partial models are built for translation instances")
    gammas = [int(x) for x in args.gamma_set.replace(",", " ").split()]
    vertices = [
        formats.parse_vertex(instance.graph, token) for token in args.vertex_set.split()
    ]
    try:
        cert = lef.lef_certificate(instance.graph, gammas, vertices, bound=args.bound)
    except SearchExhausted as exc:
        _emit([f"SEARCH EXHAUSTED at bound {exc.bound}"], args)
        return EXIT_UNKNOWN
    if args.format == "structured":
        _emit(formats.lef_lines(instance.graph, cert), args)
    else:
        _emit(formats.render_lef(instance.graph, cert), args)
    return EXIT_OK


_COMMANDS = {
    "normalize": _cmd_normalize,
    "mul": _cmd_mul,
    "invert": _cmd_invert,
    "check": _cmd_check,
    "check-fp": _cmd_check_fp,
    "separate": _cmd_separate,
    "witness": _cmd_witness,
    "quotient": _cmd_quotient,
    "lef": _cmd_lef,
}


def run(argv) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, GroupError, GraphError, WordError, IdentityElement) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
