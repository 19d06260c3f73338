"""Command-line front end.

Exit code 1 means the input has domain problems such as verifier
violations; 2 means bad usage or unparsable input.
"""
from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

from .construct import (
    construct_directed, descriptor_from_morse, identify_trivial_monodromy, parse_morse,
)
from .decompose import insert_plumbing_buffers, label_tree, reduce_to_pants
from .descriptor import (
    compute_directions, is_directed, parse_descriptor, serialize_descriptor, verify_descriptor,
)
from .errors import FormatError, PreconditionError, RoundFoldError, ValidationError
from .graph import TorusBundleInput, matrix, parse_graph, serialize_graph
from .invariants import admits_directed, first_homology, graph_betti, openbook_summary
from .render import descriptor_to_dot, descriptor_to_svg, graph_to_dot


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _suffix(path: str) -> str:
    return Path(path).suffix.lower()


def _load_graph(path):
    if _suffix(path) != ".gm":
        raise UsageError(f"{path}: expected a .gm file")
    return parse_graph(_read(path))


def _load_descriptor(path):
    """A descriptor from a .rfd file, or built from a .mf page."""
    suffix = _suffix(path)
    if suffix == ".rfd":
        return parse_descriptor(_read(path))
    if suffix == ".mf":
        return descriptor_from_morse(parse_morse(_read(path)))
    raise UsageError(f"{path}: expected a .rfd or .mf file")


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _graph_json(g) -> str:
    return _json({
        "pieces": [{"id": v, "kind": str(g.pieces[v])} for v in sorted(g.pieces)],
        "gluings": [{"a": f"{gl.a[0]}.{gl.a[1]}", "b": f"{gl.b[0]}.{gl.b[1]}",
                     "matrix": [list(row) for row in gl.matrix]} for gl in g.gluings],
    })


def _descriptor_json(d) -> str:
    return _json({
        "levels": d.t,
        "binding": d.binding,
        "counts": list(d.counts),
        "directions": list(compute_directions(d)),
        "blocks": [[str(b) for b in level] for level in d.blocks],
        "tori": [{"mu": x.mu, "lower": str(x.lower), "upper": str(x.upper)}
                 for x in d.interfaces],
    })


def _directed_pipeline(g):
    g = insert_plumbing_buffers(reduce_to_pants(g))
    return g, label_tree(g)


def cmd_parse(args):
    g = _load_graph(args.input)
    return (_graph_json(g) if args.json else serialize_graph(g)), 0


def cmd_decompose(args):
    g = reduce_to_pants(_load_graph(args.input))
    if not args.no_buffers:
        g = insert_plumbing_buffers(g)
    return (_graph_json(g) if args.json else serialize_graph(g)), 0


def cmd_label(args):
    g, labeling = _directed_pipeline(_load_graph(args.input))
    if args.json:
        return _json({"root": labeling.root,
                      "labels": {str(v): labeling.labels[v] for v in sorted(labeling.labels)},
                      "graph": serialize_graph(g)}), 0
    lines = [f"root {labeling.root}"]
    lines += [f"label {v} {labeling.labels[v]}" for v in sorted(labeling.labels)]
    return "\n".join(lines) + "\n", 0


def cmd_construct(args):
    g, labeling = _directed_pipeline(_load_graph(args.input))
    d = construct_directed(g, labeling)
    return (_descriptor_json(d) if args.json else serialize_descriptor(d)), 0


def cmd_from_morse(args):
    if _suffix(args.input) != ".mf":
        raise UsageError(f"{args.input}: expected a .mf file")
    d = descriptor_from_morse(parse_morse(_read(args.input)))
    return (_descriptor_json(d) if args.json else serialize_descriptor(d)), 0


def cmd_verify(args):
    chunks = []
    report = {}
    code = 0
    for path in args.inputs:
        d = _load_descriptor(path)
        problems = verify_descriptor(d)
        directed = None if problems else is_directed(d)
        report[path] = {"violations": [{"code": p.code, "message": p.message} for p in problems],
                        "directed": directed}
        head = f"{path}: " if len(args.inputs) > 1 else ""
        if problems:
            code = 1
            chunks += [f"{head}{p.code}: {p.message}" for p in problems]
        else:
            chunks.append(f"{head}valid")
            chunks.append(f"{head}directed: {str(directed).lower()}")
    if args.json:
        return _json(report), code
    return "\n".join(chunks) + "\n", code


def cmd_directions(args):
    d = _load_descriptor(args.input)
    dirs = compute_directions(d)
    if args.json:
        return _json({"counts": list(d.counts), "directions": list(dirs)}), 0
    return " ".join(dirs) + "\n", 0


def cmd_openbook(args):
    ob = openbook_summary(_load_descriptor(args.input))
    data = {
        "binding_components": ob.binding_components,
        "page_euler_char": ob.page_euler_char,
        "page_boundary": ob.page_boundary,
        "page_connected": ob.page_connected,
        "page_genus": ob.page_genus,
        "critical_sequence": [list(x) for x in ob.critical_sequence],
    }
    if args.json:
        return _json(data), 0
    lines = [f"binding components: {ob.binding_components}",
             f"page euler characteristic: {ob.page_euler_char}",
             f"page boundary circles: {ob.page_boundary}"]
    if ob.page_genus is not None:
        lines.append(f"page genus: {ob.page_genus}")
    for k, kind, direction in ob.critical_sequence:
        lines.append(f"circle {k}: {kind} {direction}")
    return "\n".join(lines) + "\n", 0


def cmd_homology(args):
    g = _load_graph(args.input)
    h = first_homology(g)
    betti = graph_betti(g)
    if args.json:
        return _json({"free_rank": h.free_rank, "torsion": list(h.torsion),
                      "graph_betti": betti}), 0
    return f"H1 = {h}\ngraph betti = {betti}\n", 0


def cmd_admits(args):
    if args.torus_bundle is not None:
        if args.input is not None:
            raise UsageError("give either a .gm file or --torus-bundle, not both")
        try:
            x = TorusBundleInput(matrix(*args.torus_bundle))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif args.input is not None:
        x = _load_graph(args.input)
    else:
        raise UsageError("admits-directed needs a .gm file or --torus-bundle a b c d")
    dec = admits_directed(x)
    if args.json:
        data = {"verdict": dec.verdict.value, "detail": dec.detail}
        if dec.witness is not None:
            data["labels"] = {str(v): dec.witness.labels[v] for v in sorted(dec.witness.labels)}
            data["graph"] = serialize_graph(dec.graph)
        return _json(data), 0
    lines = [str(dec)]
    if dec.witness is not None:
        lines.append(f"root {dec.witness.root}")
        lines += [f"label {v} {dec.witness.labels[v]}" for v in sorted(dec.witness.labels)]
    return "\n".join(lines) + "\n", 0


def cmd_identify(args):
    if _suffix(args.input) != ".mf":
        raise UsageError(f"{args.input}: expected a .mf file")
    name = identify_trivial_monodromy(parse_morse(_read(args.input)))
    return (_json({"manifold": name}) if args.json else name + "\n"), 0


def cmd_render(args):
    text, code = _render(args)
    if args.json:
        return _json({"format": args.format, "content": text}), code
    return text, code


def _render(args):
    suffix = _suffix(args.input)
    if suffix == ".gm":
        if args.format == "svg":
            raise UsageError("decomposition graphs render as dot only")
        return graph_to_dot(_load_graph(args.input)), 0
    d = _load_descriptor(args.input)
    problems = verify_descriptor(d)
    if problems:
        raise ValidationError(problems)
    if args.format == "dot":
        return descriptor_to_dot(d), 0
    return descriptor_to_svg(d), 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roundfold", description="Round fold maps on graph 3-manifolds.")
    parser.add_argument("--seed", type=int, default=None,
                        help="accepted for script compatibility; nothing here is random")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, inputs="one"):
        p = sub.add_parser(name, help=help_text)
        if inputs == "one":
            p.add_argument("input")
        elif inputs == "many":
            p.add_argument("inputs", nargs="+")
        p.add_argument("-o", "--output", help="write here instead of stdout")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    add("parse", cmd_parse, "validate a .gm file and print it canonically")
    p = add("decompose", cmd_decompose, "split bundles into pants and insert buffers")
    p.add_argument("--no-buffers", action="store_true", help="skip buffer insertion")
    add("label", cmd_label, "label a tree decomposition")
    add("construct-directed", cmd_construct, "directed descriptor from a tree .gm")
    add("from-morse", cmd_from_morse, "descriptor from a .mf page")
    add("verify", cmd_verify, "check .rfd/.mf descriptors", inputs="many")
    add("directions", cmd_directions, "inward/outward direction of each circle")
    add("openbook", cmd_openbook, "binding and page of the induced open book")
    add("homology", cmd_homology, "first homology of a .gm manifold")
    p = add("admits-directed", cmd_admits, "decide whether a directed map exists",
            inputs="none")
    p.add_argument("input", nargs="?")
    p.add_argument("--torus-bundle", nargs=4, type=int, metavar=("A", "B", "C", "D"),
                   help="torus bundle with monodromy [[A,B],[C,D]]")
    add("identify", cmd_identify, "name the manifold of a page with trivial monodromy")
    p = add("render", cmd_render, "draw a .gm as DOT or a descriptor as SVG/DOT")
    p.add_argument("--format", choices=("dot", "svg"), default=None)
    return parser


def run(argv, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "format", "unset") is None:
        args.format = "dot" if _suffix(args.input) == ".gm" else "svg"
    try:
        text, code = args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except ValidationError as exc:
        for v in exc.violations:
            print(f"violation: {v}", file=stderr)
        return 1
    except (PreconditionError, RoundFoldError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8", newline="\n")
    else:
        stdout.write(text)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
