"""JSON and text rendering of solve reports."""

from __future__ import annotations

from typing import Any

from .graph import encode_graph6
from .linalg import RationalMatrix, format_matrix
from .solver import Iteration, SolveReport

SCHEMA_VERSION = 1


def _gb_flag(it: Iteration):
    return "undecided" if it.gb_trivial is None else it.gb_trivial


def iteration_to_dict(it: Iteration) -> dict[str, Any]:
    return {
        "component": it.component,
        "k": it.k,
        "minors_total": it.minors_total,
        "minors_distinct": it.minors_distinct,
        "generators": it.generators,
        "gb_trivial": _gb_flag(it),
        "gb_size": it.gb_size,
        "skipped_by_bound": it.skipped_by_bound,
        "decided_by": it.decided_by,
        "elapsed_ms": round(it.elapsed_ms, 3),
    }


def matrix_to_json(M: RationalMatrix | None):
    return None if M is None else M.to_strings()


def report_to_dict(report: SolveReport, include_bases: bool = False) -> dict[str, Any]:
    G = report.graph
    opts = report.options
    out = {
        "schema_version": SCHEMA_VERSION,
        "graph": {
            "n": G.n,
            "edges": [list(e) for e in G.sorted_edges],
            "graph6": encode_graph6(G) if G.n <= 62 else None,
        },
        "status": report.status.value,
        "mr": report.mr_complex,
        "mr_certified_real": report.certified_real,
        "max_nullity": report.max_nullity,
        "max_multiplicity": report.max_multiplicity,
        "lower_bound": report.lower_bound,
        "upper_bound": report.upper_bound,
        "components": report.components,
        "witness": matrix_to_json(report.witness),
        "iterations": [iteration_to_dict(it) for it in report.iterations],
        "options": {
            "use_bounds": opts.use_bounds,
            "strategy": opts.strategy,
            "witness_search": opts.witness_search,
            "witness_bound": opts.witness_bound,
            "witness_attempts": opts.witness_attempts,
            "random_seed": opts.random_seed,
            "decompose_components": opts.decompose_components,
            "normalize_forest": opts.normalize_forest,
        },
    }
    if include_bases:
        for d, it in zip(out["iterations"], report.iterations):
            d["basis"] = None if it.basis is None else [str(p) for p in it.basis]
    return out


def render_text(report: SolveReport) -> str:
    G = report.graph
    lines = [f"graph: n={G.n}, edges={G.t}, components={report.components}"]
    if report.mr_complex is None:
        lines.append(f"mr: undecided, {report.lower_bound} <= mr <= {report.upper_bound}")
    else:
        lines.append(f"mr: {report.mr_complex}")
        lines.append(f"max nullity M(G): {report.max_nullity}")
        lines.append(f"max multiplicity mult(G): {report.max_multiplicity}")
    lines.append(f"status: {report.status.value}")
    if report.certified_real:
        lines.append("certified over R: yes (rational witness below)")
    elif report.mr_complex is not None:
        lines.append("certified over R: no (only mr_R >= mr holds)")
    lines.append(f"bounds: {report.lower_bound} <= mr <= {report.upper_bound}")
    lines.append("")
    lines.append(render_iterations(report.iterations))
    if report.witness is not None:
        lines.append("")
        lines.append("witness:")
        lines.append(format_matrix(report.witness).rstrip("\n"))
    return "\n".join(lines) + "\n"


def render_iterations(iterations: list[Iteration]) -> str:
    header = f"{'comp':>4} {'k':>3} {'minors':>8} {'distinct':>8} {'trivial':>9} {'by':>9} {'ms':>10}"
    rows = [header]
    for it in iterations:
        distinct = "-" if it.minors_distinct is None else str(it.minors_distinct)
        rows.append(
            f"{it.component:>4} {it.k:>3} {it.minors_total:>8} {distinct:>8} "
            f"{str(_gb_flag(it)):>9} {it.decided_by:>9} {it.elapsed_ms:>10.1f}"
        )
    return "\n".join(rows)
