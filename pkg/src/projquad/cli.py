"""Command-line front end.

Exit codes: 0 success, 2 verification failure or constraint violation,
64 usage error, 65 unreadable input, 70 computation budget exhausted.
Reports go to stdout as JSON; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bundles import load_bundle, sphere_quad_from_bundle, verify_bundle, write_bundle
from .coloring import chromatic_number
from .complexes import complex_from_json, dump_canonical
from .constructions import (
    complete_graph_pipeline,
    cylinder_complete,
    double_to_sphere,
    mycielski_lift,
    odd_cycle_sphere,
    schrijver_pipeline,
    suspension,
)
from .errors import (
    BadDimension,
    BadParameters,
    BudgetExceeded,
    ParseError,
    ProjquadError,
    VerificationFailed,
)
from .graphs import _label_to_json, graph_from_json, label_key, to_dimacs
from .homology import all_betti_z2, betti_z2
from .homomorphisms import homomorphism_from_json, verify_homomorphism

USAGE_EXIT = 64
PARSE_EXIT = 65
BUDGET_EXIT = 70
VIOLATION_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(USAGE_EXIT)


def _emit(obj) -> None:
    sys.stdout.write(dump_canonical(obj))


def _read_json_file(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from e
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from e


def _graph_at(path_str: str):
    path = Path(path_str)
    if path.is_dir():
        return load_bundle(path).graph
    return graph_from_json(_read_json_file(path))


def _complex_at(path_str: str):
    path = Path(path_str)
    if path.is_dir():
        path = path / "complex.json"
    return complex_from_json(_read_json_file(path))


def _build_parser() -> _Parser:
    parser = _Parser(prog="projquad", description="Build and audit symmetric sphere quadrangulations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    build = sub.add_parser("build", help="construct a verified bundle")
    kinds = build.add_subparsers(dest="kind", required=True, parser_class=_Parser)

    def common(p: _Parser) -> None:
        p.add_argument("--out", required=True, help="bundle directory to write")
        p.add_argument("--walks", type=int, default=0, help="closed walks to sample during the build audit")
        p.add_argument("--seed", type=int, default=0, help="seed for walk sampling")

    p = kinds.add_parser("odd-cycle", help="the doubled odd cycle (projective line)")
    p.add_argument("--k", type=int, required=True, help="half-length parameter; the quotient is a (2k+1)-cycle")
    common(p)

    p = kinds.add_parser("cylinder", help="solid cylinder doubled into a complete-graph sphere")
    p.add_argument("--r", type=int, required=True, help="ring depth; the identified graph is complete on 2r+3 labels")
    common(p)

    p = kinds.add_parser("suspend", help="suspend an existing bundle")
    p.add_argument("--src", required=True, help="input bundle directory")
    common(p)

    p = kinds.add_parser("mycielski-lift", help="lift an existing bundle and double it back into a sphere")
    p.add_argument("--src", required=True, help="input bundle directory")
    p.add_argument("--r", type=int, required=True, help="number of cone levels")
    common(p)

    p = kinds.add_parser("complete", help="complete graph on t labels over dimension n")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = kinds.add_parser("schrijver", help="tower with a homomorphism into the stable k-subsets of [n]")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)

    p = sub.add_parser("verify", help="re-run all audits on a bundle")
    p.add_argument("bundle", help="bundle directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--walks", type=int, default=100)

    p = sub.add_parser("chi", help="exact chromatic number of a bundle's graph or a graph file")
    p.add_argument("path", help="bundle directory or graph JSON file")
    p.add_argument("--budget-ms", type=int, default=None)
    p.add_argument("--max-nodes", type=int, default=None)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("homology", help="mod-2 Betti numbers of a complex")
    p.add_argument("path", help="bundle directory or complex JSON file")
    p.add_argument("--dim", type=int, default=None)

    p = sub.add_parser("hom-check", help="verify a stored graph homomorphism")
    p.add_argument("path", help="bundle directory or homomorphism JSON file")

    p = sub.add_parser("export", help="export a graph")
    p.add_argument("path", help="bundle directory or graph JSON file")
    p.add_argument("--format", choices=["dimacs"], required=True)
    p.add_argument("--out", default=None, help="output file (stdout when omitted)")

    return parser


def _run_build(args: argparse.Namespace) -> int:
    hom = None
    if args.kind == "odd-cycle":
        sq = odd_cycle_sphere(args.k, n_walks=args.walks, seed=args.seed)
    elif args.kind == "cylinder":
        ball = cylinder_complete(args.r)
        sq = double_to_sphere(ball, n_walks=args.walks, seed=args.seed)
    elif args.kind == "suspend":
        src = sphere_quad_from_bundle(args.src)
        sq = suspension(src, n_walks=args.walks, seed=args.seed)
    elif args.kind == "mycielski-lift":
        src = sphere_quad_from_bundle(args.src)
        ball = mycielski_lift(src, args.r)
        sq = double_to_sphere(ball, n_walks=args.walks, seed=args.seed)
    elif args.kind == "complete":
        sq = complete_graph_pipeline(args.t, args.n, n_walks=args.walks, seed=args.seed)
    elif args.kind == "schrijver":
        sq, hom = schrijver_pipeline(args.n, args.k, n_walks=args.walks, seed=args.seed)
    else:  # pragma: no cover - argparse enforces the choices
        raise BadParameters(args.kind)
    out = write_bundle(args.out, sq, homomorphism=hom)
    _emit({"out": str(out), "ok": True, "report": sq.report.to_json()})
    return 0


def _run_verify(args: argparse.Namespace) -> int:
    report = verify_bundle(args.bundle, seed=args.seed, n_walks=args.walks)
    _emit({"ok": report.ok, "report": report.to_json()})
    return 0 if report.ok else VIOLATION_EXIT


def _run_chi(args: argparse.Namespace) -> int:
    graph = _graph_at(args.path)
    try:
        result = chromatic_number(
            graph, budget_ms=args.budget_ms, max_nodes=args.max_nodes, threads=args.threads
        )
    except BudgetExceeded as e:
        sys.stderr.write("budget exhausted before the search finished\n")
        _emit({"exhausted": False, "lower": e.lower, "upper": e.upper, "nodes": e.nodes})
        return BUDGET_EXIT
    colouring = [
        [_label_to_json(v), result.colouring[v]] for v in sorted(result.colouring, key=label_key)
    ]
    _emit(
        {
            "chi": result.chi,
            "exhausted": result.exhausted,
            "nodes": result.nodes,
            "clique": [_label_to_json(v) for v in result.clique],
            "colouring": colouring,
        }
    )
    return 0


def _run_homology(args: argparse.Namespace) -> int:
    complex = _complex_at(args.path)
    if args.dim is not None:
        _emit({"dim": args.dim, "betti": betti_z2(complex, args.dim)})
    else:
        _emit({"betti": list(all_betti_z2(complex))})
    return 0


def _run_hom_check(args: argparse.Namespace) -> int:
    path = Path(args.path)
    if path.is_dir():
        path = path / "homomorphism.json"
    hom = homomorphism_from_json(_read_json_file(path))
    report = verify_homomorphism(hom)
    _emit({"ok": report.ok, "violations": report.to_json()})
    return 0 if report.ok else VIOLATION_EXIT


def _run_export(args: argparse.Namespace) -> int:
    graph = _graph_at(args.path)
    text = to_dimacs(graph)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text, encoding="utf-8")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "build":
            return _run_build(args)
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "chi":
            return _run_chi(args)
        if args.command == "homology":
            return _run_homology(args)
        if args.command == "hom-check":
            return _run_hom_check(args)
        if args.command == "export":
            return _run_export(args)
    except ParseError as e:
        sys.stderr.write(f"input error: {e}\n")
        return PARSE_EXIT
    except VerificationFailed as e:
        sys.stderr.write(f"verification failed: {e}\n")
        if e.report is not None:
            _emit({"ok": False, "report": e.report.to_json()})
        return VIOLATION_EXIT
    except (BadParameters, BadDimension) as e:
        sys.stderr.write(f"bad parameters: {e}\n")
        return USAGE_EXIT
    except ProjquadError as e:
        sys.stderr.write(f"error: {e}\n")
        return VIOLATION_EXIT
    return USAGE_EXIT  # pragma: no cover - unreachable with required subparsers


if __name__ == "__main__":
    sys.exit(main())
