"""Dense exact matrices over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .graph import Graph

Rational = int | Fraction


class MatrixFormatError(ValueError):
    pass


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise MatrixFormatError(f"not a rational number: {value!r}") from None
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


@dataclass(frozen=True)
class RationalMatrix:
    """A dense matrix of :class:`fractions.Fraction` entries."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        widths = {len(r) for r in self.entries}
        if len(widths) > 1:
            raise ValueError("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        return cls(tuple(tuple(_as_fraction(x) for x in row) for row in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        return cls(tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(tuple(zip(*self.entries))) if self.entries else self

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def rank(self) -> int:
        return rank(self)

    def to_strings(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.entries]


def parse_matrix(text: str) -> RationalMatrix:
    """One row per line, entries ``p/q`` or integers separated by whitespace."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append(tuple(_as_fraction(tok) for tok in line.split()))
        except MatrixFormatError as exc:
            raise MatrixFormatError(f"line {lineno}: {exc}") from None
    if not rows:
        raise MatrixFormatError("no matrix rows found")
    if len({len(r) for r in rows}) != 1:
        raise MatrixFormatError("rows have different lengths")
    return RationalMatrix(tuple(rows))


def format_matrix(M: RationalMatrix) -> str:
    cells = M.to_strings()
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells) + "\n"


def _integer_rows(M: RationalMatrix) -> list[list[int]]:
    # Scaling a row by a nonzero constant leaves the rank unchanged.
    out = []
    for row in M.entries:
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * scale) for x in row])
    return out


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination with full pivoting, in place.

    Returns ``(rank, sign * last pivot)``; for a square full-rank input the
    second value is the determinant of the integer matrix.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    prev = 1
    sign = 1
    r = 0
    while r < min(nrows, ncols):
        pivot = next(
            ((i, j) for i in range(r, nrows) for j in range(r, ncols) if a[i][j]), None
        )
        if pivot is None:
            break
        pi, pj = pivot
        if pi != r:
            a[r], a[pi] = a[pi], a[r]
            sign = -sign
        if pj != r:
            for row in a:
                row[r], row[pj] = row[pj], row[r]
            sign = -sign
        p = a[r][r]
        pivot_row = a[r]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[r]
            for j in range(r + 1, ncols):
                row[j] = (row[j] * p - f * pivot_row[j]) // prev
            row[r] = 0
        prev = p
        r += 1
    return r, sign * prev


def rank(M: RationalMatrix) -> int:
    """Exact rank over the rationals."""
    if M.rows == 0 or M.cols == 0:
        return 0
    return _bareiss(_integer_rows(M))[0]


def determinant(M: RationalMatrix) -> Fraction:
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    if M.rows == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in M.entries:
        s = lcm(*(x.denominator for x in row))
        scale *= s
        rows.append([int(x * s) for x in row])
    r, d = _bareiss(rows)
    if r < M.rows:
        return Fraction(0)
    return Fraction(d) / scale


def pattern_matches(M: RationalMatrix, G: Graph) -> bool:
    """True when ``M`` is symmetric with off-diagonal support exactly ``E(G)``."""
    if M.rows != M.cols or M.rows != G.n:
        raise ValueError(f"expected a {G.n}x{G.n} matrix, got {M.rows}x{M.cols}")
    if not M.is_symmetric():
        return False
    return all(
        (M.entries[i][j] != 0) == G.has_edge(i, j)
        for i in range(G.n) for j in range(i + 1, G.n)
    )


def full_rank_witness(G: Graph) -> RationalMatrix:
    """Strictly diagonally dominant member of S(G): edges 1, diagonal deg+1."""
    rows = [[0] * G.n for _ in range(G.n)]
    for i in range(G.n):
        rows[i][i] = G.degree(i) + 1
    for u, v in G.sorted_edges:
        rows[u][v] = rows[v][u] = 1
    return RationalMatrix.from_rows(rows)


def block_diagonal(n: int, blocks: Iterable[tuple[Sequence[int], RationalMatrix]]) -> RationalMatrix:
    """Place each block at the given vertex labels of an ``n x n`` zero matrix."""
    rows = [[Fraction(0)] * n for _ in range(n)]
    for labels, B in blocks:
        for a, i in enumerate(labels):
            for b, j in enumerate(labels):
                rows[i][j] = B.entries[a][b]
    return RationalMatrix(tuple(tuple(r) for r in rows))
