"""Command-line front end.

Exit status is 0 on success, 1 on invalid input (including usage errors) and
2 when ``verify`` finds two routes that disagree.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence

from .cmap import DEFAULT_EDGE_CAP, SignedPlaneGraph, load_map
from .knotio import DEFAULT_CROSSING_CAP, checkerboard, jones, parse_pd, tait_graph
from .laurent import LaurentPolynomial
from .medial import DEFAULT_NODE_CAP, medial
from .statesums import ROUTES, bracket, br_polynomial, verify_all, z_fk, z_fk_constrained
from .unsign import unsign

EXIT_OK, EXIT_INVALID, EXIT_MISMATCH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which is reserved for mismatches
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="statemodels", description="Kauffman bracket and Potts state sums on ribbon graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, source: str):
        if source == "pd":
            sp.add_argument("--pd", required=True, metavar="FILE", help="PD code file ('-' for stdin)")
            sp.add_argument("--outer-face", type=int, default=None, metavar="N",
                            help="face coloured white in the checkerboard colouring")
        else:
            sp.add_argument("--graph", required=True, metavar="FILE", help="map JSON file ('-' for stdin)")
        sp.add_argument("--cap-edges", type=int, default=DEFAULT_EDGE_CAP, metavar="N")
        sp.add_argument("--cap-crossings", type=int, default=DEFAULT_CROSSING_CAP, metavar="N")
        sp.add_argument("--cap-nodes", type=int, default=DEFAULT_NODE_CAP, metavar="N")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    b = sub.add_parser("bracket", help="Kauffman bracket of a PD diagram")
    common(b, "pd")
    b.add_argument("--method", choices=ROUTES, default="direct")
    common(sub.add_parser("verify", help="run every bracket route and compare"), "pd")
    common(sub.add_parser("jones", help="writhe-normalised bracket"), "pd")
    common(sub.add_parser("tait", help="signed Tait graph as map JSON"), "pd")
    common(sub.add_parser("unsign", help="unsigned ribbon graph of a signed plane graph"), "graph")
    common(sub.add_parser("medial", help="medial graph of a ribbon graph"), "graph")
    common(sub.add_parser("br", help="Bollobas-Riordan polynomial"), "graph")
    common(sub.add_parser("potts", help="Fortuin-Kasteleyn subset sum"), "graph")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _name(path: str) -> str:
    if path == "-":
        return "stdin"
    stem = path.replace("\\", "/").rsplit("/", 1)[-1]
    return stem[:-3] if stem.endswith(".pd") else stem


def _emit_poly(p: LaurentPolynomial, fmt: str, key: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps({key: str(p), "vars": list(p.vars)}, sort_keys=True) + "\n")
    else:
        out.write(str(p) + "\n")


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _dispatch(args, out) -> int:
    caps = dict(edge_cap=args.cap_edges, crossing_cap=args.cap_crossings, node_cap=args.cap_nodes)
    if args.command in ("bracket", "verify", "jones", "tait"):
        d = parse_pd(_read(args.pd), _name(args.pd))
        if args.command == "bracket":
            _emit_poly(bracket(d, args.method, args.outer_face, **caps), args.format, "bracket", out)
        elif args.command == "jones":
            _emit_poly(jones(d, cap=args.cap_crossings), args.format, "jones", out)
        elif args.command == "tait":
            T = tait_graph(d, checkerboard(d, args.outer_face))
            _emit_json(T.graph.to_json(), out)
        else:
            report = verify_all(d, args.outer_face, **caps)
            if args.format == "json":
                _emit_json(report.to_json(), out)
            else:
                for name, value in report.routes.items():
                    out.write(f"{name}: {value}\n")
                for name, err in report.errors.items():
                    out.write(f"{name}: error: {err}\n")
                out.write(f"agree: {str(report.agree).lower()}\n")
            if report.errors and not report.routes:
                return EXIT_INVALID
            if not report.agree:
                print("verify: routes disagree", file=sys.stderr)
                return EXIT_MISMATCH
        return EXIT_OK

    g = load_map(_read(args.graph))
    m = g.map if isinstance(g, SignedPlaneGraph) else g
    if args.command == "unsign":
        if not isinstance(g, SignedPlaneGraph):
            raise ValueError("unsign needs a signed plane graph (map JSON with a \"signs\" field)")
        _emit_json(unsign(g).to_json(), out)
    elif args.command == "medial":
        r = unsign(g).map if isinstance(g, SignedPlaneGraph) else g
        if r.num_edges > args.cap_nodes:
            raise ValueError(f"{r.num_edges} medial nodes exceeds cap {args.cap_nodes}")
        _emit_json(medial(r).to_json(), out)
    elif args.command == "br":
        _emit_poly(br_polynomial(m, args.cap_edges), args.format, "br", out)
    else:
        if isinstance(g, SignedPlaneGraph):
            p = z_fk_constrained(g, args.cap_edges)
        else:
            p = z_fk(m, cap=args.cap_edges)
        _emit_poly(p, args.format, "z_fk", out)
    return EXIT_OK


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = _build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    try:
        return _dispatch(args, out)
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
