"""Exact minimum rank of graphs via determinantal ideals and Groebner bases."""

from .graph import (
    Graph,
    GraphFormatError,
    connected_components,
    encode_graph6,
    parse_edge_list,
    parse_graph6,
    path_cover_number,
    tree_minimum_rank,
    zero_forcing_number,
)
from .groebner import GroebnerBasis, Limits, PolySystem, buchberger, is_trivial
from .linalg import RationalMatrix, full_rank_witness, parse_matrix, pattern_matches, rank
from .minors import build_symbolic, k_minors, minor, rabinowitsch_system
from .solver import SolveOptions, SolveReport, Status, certify, find_witness, minimum_rank

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphFormatError",
    "GroebnerBasis",
    "Limits",
    "PolySystem",
    "RationalMatrix",
    "SolveOptions",
    "SolveReport",
    "Status",
    "buchberger",
    "build_symbolic",
    "certify",
    "connected_components",
    "encode_graph6",
    "find_witness",
    "full_rank_witness",
    "is_trivial",
    "k_minors",
    "minimum_rank",
    "minor",
    "parse_edge_list",
    "parse_graph6",
    "parse_matrix",
    "path_cover_number",
    "pattern_matches",
    "rabinowitsch_system",
    "rank",
    "tree_minimum_rank",
    "zero_forcing_number",
]
