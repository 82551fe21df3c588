"""Command-line front end.

Exit codes: 0 on success, 1 when ``witness`` finds nothing, 2 on input
errors, 3 when the minimum rank stays undecided.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .graph import (
    Graph,
    GraphFormatError,
    connected_components,
    parse_edge_list,
    parse_graph6,
    zero_forcing_number,
)
from .groebner import Limits
from .linalg import MatrixFormatError, format_matrix, parse_matrix, pattern_matches, rank
from .report import render_iterations, render_text, report_to_dict
from .solver import SolveOptions, Status, find_witness, minimum_rank

EXIT_OK = 0
EXIT_NO_WITNESS = 1
EXIT_INPUT = 2
EXIT_UNDECIDED = 3


class InputError(Exception):
    pass


def _read_source(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    path = Path(source)
    try:
        if path.exists() and not path.is_dir():
            return path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from None
    return source


def load_graph(source: str, fmt: str | None = None) -> Graph:
    """Parse a graph from a path, ``-`` (stdin) or an inline string.

    Without an explicit format, a single token is read as graph6 and
    anything else as an edge list (``;`` separates inline edges).
    """
    text = _read_source(source)
    if fmt is None:
        fmt = "graph6" if len(text.split()) == 1 else "edges"
    try:
        if fmt == "graph6":
            return parse_graph6(text)
        return parse_edge_list(text.replace(";", "\n"))
    except GraphFormatError as exc:
        raise InputError(f"{fmt} parse error: {exc}") from None


def _options(args) -> SolveOptions:
    limits = Limits(
        max_pairs=args.max_pairs,
        max_terms=args.max_terms,
        max_coeff_bits=args.max_coeff_bits,
        max_seconds=args.max_seconds,
    )
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("MINRANK_THREADS", "1") or 1)
    return SolveOptions(
        use_bounds=args.use_bounds,
        strategy=args.strategy,
        witness_search=args.witness_search,
        witness_bound=args.bound,
        witness_attempts=args.attempts,
        random_seed=args.seed,
        limits=limits,
        decompose_components=args.decompose,
        normalize_forest=args.normalize_forest,
        keep_bases=getattr(args, "dump_gb", False) or args.command == "trace",
        threads=threads,
    )


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="graph6 string, edge list, file path, or - for stdin")
    p.add_argument("--format", choices=["graph6", "edges"], default=None)


def _add_solve_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bound", "-B", type=int, default=4, help="witness entry bound")
    p.add_argument("--attempts", type=int, default=100_000, help="random witness attempts")
    p.add_argument("--strategy", choices=["linear", "binary"], default="linear")
    p.add_argument("--no-bounds", dest="use_bounds", action="store_false",
                   help="do not skip levels below n - Z(G)")
    p.add_argument("--no-witness", dest="witness_search", action="store_false")
    p.add_argument("--no-decompose", dest="decompose", action="store_false",
                   help="solve the graph as a whole instead of per component")
    p.add_argument("--no-normalize", dest="normalize_forest", action="store_false",
                   help="keep a variable on every edge (slower)")
    p.add_argument("--max-pairs", type=int, default=Limits.max_pairs)
    p.add_argument("--max-terms", type=int, default=Limits.max_terms)
    p.add_argument("--max-coeff-bits", type=int, default=Limits.max_coeff_bits)
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--threads", type=int, default=None,
                   help="worker processes for independent components (env MINRANK_THREADS)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="minrank", description="Exact minimum rank of graphs.")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute mr(G), M(G) and mult(G)")
    _add_graph_input(p)
    _add_solve_flags(p)
    p.add_argument("--dump-gb", action="store_true", help="include Groebner bases in the output")

    p = sub.add_parser("trace", help="per-level trace with systems and bases")
    _add_graph_input(p)
    _add_solve_flags(p)

    p = sub.add_parser("bounds", help="zero forcing lower bound and trivial upper bound")
    _add_graph_input(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("witness", help="search for a matrix in S(G) of rank <= r")
    _add_graph_input(p)
    _add_solve_flags(p)
    p.add_argument("--rank", "-r", type=int, default=None, help="target rank (default: mr(G))")

    p = sub.add_parser("rank", help="exact rank of a rational matrix")
    p.add_argument("matrix", help="matrix file (rows of p/q or integers) or - for stdin")
    p.add_argument("--json", action="store_true")
    return parser


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def cmd_compute(args) -> int:
    G = load_graph(args.input, args.format)
    report = minimum_rank(G, _options(args))
    if args.json:
        _emit(report_to_dict(report, include_bases=args.dump_gb))
    else:
        sys.stdout.write(render_text(report))
        if args.dump_gb:
            for it in report.iterations:
                if it.basis is not None:
                    sys.stdout.write(f"\nGroebner basis, component {it.component}, k={it.k}:\n")
                    for p in it.basis:
                        sys.stdout.write(f"  {p}\n")
    return EXIT_UNDECIDED if report.status is Status.UNDECIDED else EXIT_OK


def cmd_trace(args) -> int:
    G = load_graph(args.input, args.format)
    report = minimum_rank(G, _options(args))
    if args.json:
        _emit(report_to_dict(report, include_bases=True))
        return EXIT_UNDECIDED if report.status is Status.UNDECIDED else EXIT_OK
    out = sys.stdout
    out.write(render_iterations([]) + "\n")
    for it in report.iterations:
        out.write(render_iterations([it]).splitlines()[-1] + "\n")
        if it.system is not None:
            out.write(f"  system ({len(it.system)} generators):\n")
            for p in it.system.generators:
                out.write(f"    {p} = 0\n")
        if it.basis is not None:
            out.write(f"  reduced Groebner basis ({len(it.basis)} elements):\n")
            for p in it.basis:
                out.write(f"    {p}\n")
    out.write("\n" + render_text(report))
    return EXIT_UNDECIDED if report.status is Status.UNDECIDED else EXIT_OK


def cmd_bounds(args) -> int:
    G = load_graph(args.input, args.format)
    z = zero_forcing_number(G) if G.n else 0
    lower = G.n - z
    upper = G.n - len(connected_components(G))
    if args.json:
        _emit({"n": G.n, "zero_forcing_number": z, "lower_bound": lower, "upper_bound": upper})
    else:
        sys.stdout.write(f"zero forcing number: {z}\nlower bound (n - Z): {lower}\nupper bound (n - components): {upper}\n")
    return EXIT_OK


def cmd_witness(args) -> int:
    G = load_graph(args.input, args.format)
    opts = _options(args)
    r = args.rank
    if r is None:
        report = minimum_rank(G, opts)
        if report.mr_complex is None:
            sys.stderr.write("minimum rank undecided; pass --rank\n")
            return EXIT_UNDECIDED
        W = report.witness
        r = report.mr_complex
    else:
        W = find_witness(G, r, opts)
    if W is None:
        if args.json:
            _emit({"rank_target": r, "witness": None})
        else:
            sys.stdout.write(f"none found (rank <= {r})\n")
        return EXIT_NO_WITNESS
    assert pattern_matches(W, G)
    if args.json:
        _emit({"rank_target": r, "rank": rank(W), "witness": W.to_strings()})
    else:
        sys.stdout.write(format_matrix(W))
    return EXIT_OK


def cmd_rank(args) -> int:
    source = args.matrix
    try:
        text = sys.stdin.read() if source == "-" else Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from None
    try:
        M = parse_matrix(text)
    except MatrixFormatError as exc:
        raise InputError(f"matrix parse error: {exc}") from None
    r = rank(M)
    if args.json:
        _emit({"rows": M.rows, "cols": M.cols, "rank": r})
    else:
        sys.stdout.write(f"{r}\n")
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "trace": cmd_trace,
    "bounds": cmd_bounds,
    "witness": cmd_witness,
    "rank": cmd_rank,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
