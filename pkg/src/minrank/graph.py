"""Simple undirected graphs, text formats, and combinatorial bounds.

Vertices are the integers ``0..n-1`` and every edge is stored as a sorted
pair ``(i, j)`` with ``i < j``.  Besides parsing (graph6 and a plain edge
list) the module provides the zero forcing number, which bounds the maximum
nullity from above, and the path cover number of trees, which gives the
minimum rank of a tree exactly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

Edge = tuple[int, int]

GRAPH6_MAX_ORDER = 62


class GraphFormatError(ValueError):
    """Raised for malformed graph6 or edge-list input.

    ``offset`` is the byte offset (graph6) and ``line`` the 1-based line
    number (edge list) of the offending input, when known.
    """

    def __init__(self, message: str, *, offset: int | None = None, line: int | None = None):
        where = ""
        if offset is not None:
            where = f" (byte offset {offset})"
        elif line is not None:
            where = f" (line {line})"
        super().__init__(message + where)
        self.offset = offset
        self.line = line


class NotATreeError(ValueError):
    pass


def _normalize_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """An immutable simple graph on vertices ``0..n-1``."""

    n: int
    edges: frozenset[Edge] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {self.n}")
        normalized = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            normalized.add(_normalize_edge(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Iterable[int]]) -> "Graph":
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, ((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls.from_edges(n, combinations(range(n), 2))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n)

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))

    @property
    def t(self) -> int:
        """Number of edges."""
        return len(self.edges)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.sorted_edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(a)) for a in nbrs)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _normalize_edge(u, v) in self.edges

    def is_connected(self) -> bool:
        return len(connected_components(self)) <= 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.t == self.n - 1 and self.is_connected()

    def induced_subgraph(self, vertices: Iterable[int]) -> "Component":
        labels = tuple(sorted(set(vertices)))
        index = {v: i for i, v in enumerate(labels)}
        sub = Graph.from_edges(
            len(labels),
            ((index[u], index[v]) for u, v in self.sorted_edges if u in index and v in index),
        )
        return Component(sub, labels)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.sorted_edges)})"


@dataclass(frozen=True)
class Component:
    """A connected piece of a larger graph with its original vertex labels.

    ``labels[i]`` is the label in the parent graph of local vertex ``i``.
    """

    graph: Graph
    labels: tuple[int, ...]


def connected_components(G: Graph) -> list[Component]:
    """Split ``G`` into induced connected subgraphs, ordered by smallest label."""
    seen = [False] * G.n
    comps = []
    for root in range(G.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        members = []
        while queue:
            u = queue.popleft()
            members.append(u)
            for w in G.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        comps.append(G.induced_subgraph(members))
    return comps


def spanning_forest(G: Graph) -> frozenset[Edge]:
    """Edges of a BFS spanning forest, rooted at the smallest label of each component."""
    seen = [False] * G.n
    forest = set()
    for root in range(G.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in G.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    forest.add(_normalize_edge(u, w))
                    queue.append(w)
    return frozenset(forest)


# -- text formats -----------------------------------------------------------

def _graph6_bits(G: Graph) -> Iterator[int]:
    for j in range(1, G.n):
        for i in range(j):
            yield 1 if (i, j) in G.edges else 0


def encode_graph6(G: Graph) -> str:
    if G.n > GRAPH6_MAX_ORDER:
        raise ValueError(f"graph6 encoding supports n <= {GRAPH6_MAX_ORDER}")
    bits = list(_graph6_bits(G))
    bits += [0] * (-len(bits) % 6)
    chars = [chr(63 + G.n)]
    for pos in range(0, len(bits), 6):
        value = 0
        for b in bits[pos:pos + 6]:
            value = (value << 1) | b
        chars.append(chr(63 + value))
    return "".join(chars)


def parse_graph6(text: str) -> Graph:
    """Decode a graph6 string (an optional ``>>graph6<<`` header is accepted)."""
    data = text.strip()
    base = len(text) - len(text.lstrip())
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
        base += len(">>graph6<<")
    if not data:
        raise GraphFormatError("empty graph6 string", offset=base)
    for pos, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise GraphFormatError(f"invalid graph6 character {ch!r}", offset=base + pos)
    n = ord(data[0]) - 63
    if n > GRAPH6_MAX_ORDER:
        raise GraphFormatError(
            f"graph6 orders above {GRAPH6_MAX_ORDER} are not supported", offset=base
        )
    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    body = data[1:]
    if len(body) < nchars:
        raise GraphFormatError(
            f"truncated graph6 data: expected {nchars} bytes after the header, got {len(body)}",
            offset=base + len(data),
        )
    if len(body) > nchars:
        raise GraphFormatError("trailing bytes after graph6 data", offset=base + 1 + nchars)
    bits = []
    for ch in body:
        value = ord(ch) - 63
        bits.extend((value >> s) & 1 for s in range(5, -1, -1))
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph.from_edges(n, edges)


def parse_edge_list(text: str) -> Graph:
    """Parse whitespace-separated ``u v`` lines.

    Blank lines and ``#`` comments are ignored.  A line ``n=<k>`` fixes the
    vertex count, otherwise it is one more than the largest label.
    """
    edges = set()
    declared_n = None
    max_label = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.replace(" ", "").startswith("n="):
            value = line.replace(" ", "")[2:]
            if not value.isdigit():
                raise GraphFormatError(f"bad vertex count {value!r}", line=lineno)
            declared_n = int(value)
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphFormatError(f"expected two vertex labels, got {len(tokens)}", line=lineno)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"unparseable token in {line!r}", line=lineno) from None
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex label", line=lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", line=lineno)
        edges.add(_normalize_edge(u, v))
        max_label = max(max_label, u, v)
    n = max_label + 1
    if declared_n is not None:
        if declared_n < n:
            raise GraphFormatError(f"n={declared_n} is smaller than the largest label {max_label}")
        n = declared_n
    return Graph(n, frozenset(edges))


def format_edge_list(G: Graph) -> str:
    lines = [f"n={G.n}"]
    lines += [f"{u} {v}" for u, v in G.sorted_edges]
    return "\n".join(lines) + "\n"


# -- zero forcing -----------------------------------------------------------

def forcing_closure(G: Graph, blue: Iterable[int]) -> frozenset[int]:
    """Apply the color-change rule until no blue vertex has exactly one white neighbor."""
    nbr_masks = [sum(1 << w for w in G.adjacency[v]) for v in range(G.n)]
    mask = 0
    for v in blue:
        mask |= 1 << v
    changed = True
    while changed:
        changed = False
        for v in range(G.n):
            if not mask >> v & 1:
                continue
            white = nbr_masks[v] & ~mask
            if white and white & (white - 1) == 0:
                mask |= white
                changed = True
    return frozenset(v for v in range(G.n) if mask >> v & 1)


def zero_forcing_set(G: Graph) -> tuple[int, ...]:
    """A minimum zero forcing set: first success in (size, lexicographic) order."""
    for size in range(G.n + 1):
        for blue in combinations(range(G.n), size):
            if len(forcing_closure(G, blue)) == G.n:
                return blue
    raise AssertionError("the full vertex set always forces")


def zero_forcing_number(G: Graph) -> int:
    return len(zero_forcing_set(G))


# -- trees ------------------------------------------------------------------

def path_cover_number(T: Graph) -> int:
    """Minimum number of vertex-disjoint paths covering a tree."""
    if not T.is_tree():
        raise NotATreeError(f"path cover DP needs a tree, got {T!r}")
    parent = [-1] * T.n
    order = []
    stack = [0]
    visited = [False] * T.n
    visited[0] = True
    while stack:
        v = stack.pop()
        order.append(v)
        for w in reversed(T.adjacency[v]):
            if not visited[w]:
                visited[w] = True
                parent[w] = v
                stack.append(w)
    # open_[v]: best cover of the subtree where v ends its path (can extend upward);
    # best[v]: best cover of the subtree with no constraint on v.
    open_ = [0] * T.n
    best = [0] * T.n
    for v in reversed(order):
        children = [w for w in T.adjacency[v] if parent[w] == v]
        base = sum(best[c] for c in children)
        extra = sorted(open_[c] - best[c] for c in children)
        alone = base + 1
        extend_one = base + extra[0] if extra else alone
        through = base + extra[0] + extra[1] - 1 if len(extra) >= 2 else alone
        open_[v] = min(alone, extend_one)
        best[v] = min(open_[v], through)
    return best[0]


def tree_minimum_rank(T: Graph) -> int:
    return T.n - path_cover_number(T)
