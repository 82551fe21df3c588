"""The symbolic pattern matrix of a graph and its minors.

``build_symbolic`` places ``x_i`` on the diagonal and ``y_ij`` at every edge.
Edges listed in ``unit_edges`` get the constant 1 instead.  Congruence by a
nonsingular diagonal matrix keeps both the zero pattern and the rank, so
the entries on a spanning forest may be fixed to 1 without changing
whether a system is solvable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .graph import Edge, Graph
from .groebner import PolySystem
from .poly import Monomial, Polynomial, PolyRing, Variable, x, y, yh

Entry = Monomial | None


@dataclass(frozen=True)
class SymbolicSymmetricMatrix:
    graph: Graph
    ring: PolyRing
    entries: tuple[tuple[Entry, ...], ...]
    unit_edges: frozenset[Edge] = frozenset()
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def n(self) -> int:
        return self.graph.n

    def entry(self, i: int, j: int) -> Polynomial:
        m = self.entries[i][j]
        if m is None:
            return self.ring.zero()
        return self.ring.from_dict({m: 1})

    @property
    def edge_variables(self) -> tuple[Variable, ...]:
        return tuple(y(*e) for e in self.graph.sorted_edges if e not in self.unit_edges)

    @property
    def diagonal_variables(self) -> tuple[Variable, ...]:
        return tuple(x(i) for i in range(self.n))


def build_symbolic(
    G: Graph, order: str = "grevlex", unit_edges: frozenset[Edge] | None = None
) -> SymbolicSymmetricMatrix:
    """Pattern matrix of ``G``; variable precedence is ``yh > y > x``."""
    unit = frozenset(unit_edges or ())
    if not unit <= G.edges:
        raise ValueError("unit edges must be edges of the graph")
    free = [e for e in G.sorted_edges if e not in unit]
    variables = [yh(*e) for e in free] + [y(*e) for e in free] + [x(i) for i in range(G.n)]
    ring = PolyRing(variables, order)
    one = ring.one_monomial

    def mono(v: Variable) -> Monomial:
        m = [0] * ring.nvars
        m[ring.index[v]] = 1
        return tuple(m)

    rows = []
    for i in range(G.n):
        row: list[Entry] = []
        for j in range(G.n):
            if i == j:
                row.append(mono(x(i)))
            elif G.has_edge(i, j):
                row.append(one if (min(i, j), max(i, j)) in unit else mono(y(i, j)))
            else:
                row.append(None)
        rows.append(tuple(row))
    return SymbolicSymmetricMatrix(G, ring, tuple(rows), unit)


def _det(M: SymbolicSymmetricMatrix, rows: tuple[int, ...], cols: tuple[int, ...]) -> dict:
    """Cofactor expansion along the sparsest line, memoized on (rows, cols)."""
    memo = M._memo
    key = (rows, cols)
    hit = memo.get(key)
    if hit is not None:
        return hit
    E = M.entries
    if len(rows) == 1:
        m = E[rows[0]][cols[0]]
        result = {} if m is None else {m: 1}
        memo[key] = result
        return result
    best = None
    for p, r in enumerate(rows):
        nz = [(q, c) for q, c in enumerate(cols) if E[r][c] is not None]
        if best is None or len(nz) < len(best[2]):
            best = ("row", p, nz)
        if not nz:
            break
    if best[2]:
        for q, c in enumerate(cols):
            nz = [(p, r) for p, r in enumerate(rows) if E[r][c] is not None]
            if len(nz) < len(best[2]):
                best = ("col", q, nz)
                if not nz:
                    break
    kind, pos, nz = best
    acc: dict = {}
    for other_pos, other in nz:
        if kind == "row":
            r, c = rows[pos], other
            sub = _det(M, rows[:pos] + rows[pos + 1:], cols[:other_pos] + cols[other_pos + 1:])
            sign = -1 if (pos + other_pos) % 2 else 1
        else:
            r, c = other, cols[pos]
            sub = _det(M, rows[:other_pos] + rows[other_pos + 1:], cols[:pos] + cols[pos + 1:])
            sign = -1 if (pos + other_pos) % 2 else 1
        m = E[r][c]
        for sm, sc in sub.items():
            t = tuple(a + b for a, b in zip(sm, m))
            v = acc.get(t, 0) + sign * sc
            if v:
                acc[t] = v
            else:
                acc.pop(t, None)
    memo[key] = acc
    return acc


def minor(M: SymbolicSymmetricMatrix, rows: Sequence[int], cols: Sequence[int]) -> Polynomial:
    """Determinant of the submatrix on ``rows`` x ``cols`` (order as given)."""
    rows, cols = tuple(rows), tuple(cols)
    if len(rows) != len(cols) or not rows:
        raise ValueError(f"minor needs equal nonempty index sets, got {len(rows)} and {len(cols)}")
    for i in rows + cols:
        if not 0 <= i < M.n:
            raise ValueError(f"index {i} out of range for a {M.n}x{M.n} matrix")
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError("repeated row or column index")
    # Sort indices and track the permutation sign.
    sign = _perm_sign(rows) * _perm_sign(cols)
    terms = _det(M, tuple(sorted(rows)), tuple(sorted(cols)))
    p = M.ring.from_dict(terms)
    return p if sign > 0 else -p


def _perm_sign(seq: Sequence[int]) -> int:
    inversions = sum(1 for a, b in combinations(seq, 2) if a > b)
    return -1 if inversions % 2 else 1


def iter_minors(M: SymbolicSymmetricMatrix, k: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], Polynomial]]:
    """All ``C(n,k)^2`` k-minors as ``(rows, cols, polynomial)``."""
    for I in combinations(range(M.n), k):
        for J in combinations(range(M.n), k):
            yield I, J, M.ring.from_dict(_det(M, I, J))


@dataclass(frozen=True)
class MinorSet:
    k: int
    all_count: int
    computed: int
    distinct: tuple[Polynomial, ...]


def k_minors(M: SymbolicSymmetricMatrix, k: int) -> MinorSet:
    """Distinct nonzero normalized k-minors, with bookkeeping counts.

    Only pairs with ``I <= J`` are expanded since ``minor(I, J)`` and
    ``minor(J, I)`` agree on a symmetric matrix; ``all_count`` counts both.
    """
    if not 1 <= k <= M.n:
        raise ValueError(f"k must lie in 1..{M.n}, got {k}")
    subsets = list(combinations(range(M.n), k))
    seen: dict[Polynomial, None] = {}
    total = computed = 0
    for a, I in enumerate(subsets):
        for J in subsets[a:]:
            computed += 1
            total += 1 if I == J else 2
            terms = _det(M, I, J)
            if terms:
                seen.setdefault(M.ring.from_dict(terms).normalize(), None)
    assert total == comb(M.n, k) ** 2
    key = M.ring.sort_key
    distinct = tuple(sorted(seen, key=lambda p: [key(m) for m, _ in p.terms]))
    return MinorSet(k, total, computed, distinct)


def rabinowitsch_generators(M: SymbolicSymmetricMatrix) -> tuple[Polynomial, ...]:
    """``y_e * yh_e - 1`` for every edge that carries a variable."""
    ring = M.ring
    return tuple(ring.gen(y(*e)) * ring.gen(yh(*e)) - 1 for e in M.graph.sorted_edges if e not in M.unit_edges)


def rabinowitsch_system(M: SymbolicSymmetricMatrix, k: int) -> PolySystem:
    """k-minors together with ``y_e * yh_e - 1``: solvable iff some matrix in the
    pattern with all edge entries nonzero has rank below ``k``."""
    minors = k_minors(M, k)
    return PolySystem(minors.distinct + rabinowitsch_generators(M), M.ring)
