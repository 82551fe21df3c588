import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minrank.graph import Graph
from minrank.linalg import RationalMatrix, determinant, rank
from minrank.minors import (
    build_symbolic,
    iter_minors,
    k_minors,
    minor,
    rabinowitsch_system,
)
from minrank.poly import x, y, yh

from .oracles import atlas_graphs


def example_letters(M):
    """Entries a..g of the symbolic P4 matrix, row by row."""
    g = M.ring.gen
    return g(x(0)), g(y(0, 1)), g(x(1)), g(y(1, 2)), g(x(2)), g(y(2, 3)), g(x(3))


def example_array(M):
    a, b, c, d, e, f, g = example_letters(M)
    return [
        [c*e*g - c*f**2 - d**2*g, b*e*g - b*f**2, b*d*g, b*d*f],
        [b*e*g - b*f**2, a*e*g - a*f**2, a*d*g, a*d*f],
        [b*d*g, a*d*g, a*c*g - b**2*g, a*c*f - b**2*f],
        [b*d*f, a*d*f, a*c*f - b**2*f, a*c*e - a*d**2 - b**2*e],
    ]


def example_quartic(M):
    a, b, c, d, e, f, g = example_letters(M)
    return b**2*f**2 - a*c*f**2 - a*d**2*g - b**2*e*g + a*c*e*g


def random_assignment(M, rnd, bound=3):
    """Pattern-respecting values: nonzero on edges, anything on the diagonal."""
    vals = {}
    for v in M.diagonal_variables:
        vals[v] = Fraction(rnd.randint(-bound, bound), rnd.randint(1, 3))
    for v in M.edge_variables:
        vals[v] = Fraction(rnd.choice([i for i in range(-bound, bound + 1) if i]), rnd.randint(1, 3))
    return vals


def numeric(M, vals):
    return RationalMatrix.from_rows(
        [[M.entry(i, j).evaluate(vals) for j in range(M.n)] for i in range(M.n)]
    )


class TestBuildSymbolic:
    def test_path_example(self):
        M = build_symbolic(Graph.path(4))
        a, b, c, d, e, f, g = example_letters(M)
        zero = M.ring.zero()
        expected = [[a, b, zero, zero], [b, c, d, zero], [zero, d, e, f], [zero, zero, f, g]]
        assert [[M.entry(i, j) for j in range(4)] for i in range(4)] == expected
        assert M.ring.nvars == 4 + 2 * 3

    def test_edgeless(self):
        M = build_symbolic(Graph.empty(2))
        assert M.entry(0, 0) == M.ring.gen(x(0))
        assert M.entry(0, 1).is_zero()

    def test_k2(self):
        M = build_symbolic(Graph.path(2))
        assert M.entry(0, 1) == M.entry(1, 0) == M.ring.gen(y(0, 1))

    def test_precedence(self):
        M = build_symbolic(Graph.path(3))
        assert M.ring.variables == (yh(0, 1), yh(1, 2), y(0, 1), y(1, 2), x(0), x(1), x(2))

    @given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.sets(
        st.sampled_from([(i, j) for i in range(n) for j in range(i + 1, n)] or [None])))))
    @settings(max_examples=50, deadline=None)
    def test_pattern(self, data):
        n, edges = data
        G = Graph.from_edges(n, [e for e in edges if e])
        M = build_symbolic(G)
        for i in range(n):
            for j in range(n):
                assert M.entry(i, j) == M.entry(j, i)
                if i != j:
                    assert (not M.entry(i, j).is_zero()) == G.has_edge(i, j)


class TestMinor:
    def test_example_first_minor(self):
        M = build_symbolic(Graph.path(4))
        assert minor(M, [1, 2, 3], [1, 2, 3]) == example_array(M)[0][0]

    def test_single_entry(self):
        M = build_symbolic(Graph.path(3))
        assert minor(M, [1], [1]) == M.ring.gen(x(1))
        assert minor(M, [0], [2]).is_zero()

    def test_k2_determinant(self):
        M = build_symbolic(Graph.path(2))
        x0, x1, y01 = (M.ring.gen(v) for v in (x(0), x(1), y(0, 1)))
        assert minor(M, [0, 1], [0, 1]) == x0 * x1 - y01**2

    def test_index_order_sign(self):
        M = build_symbolic(Graph.path(2))
        assert minor(M, [1, 0], [0, 1]) == -minor(M, [0, 1], [0, 1])

    @pytest.mark.parametrize("rows, cols", [([0], [0, 1]), ([], []), ([0, 0], [0, 1]), ([5], [0])])
    def test_invalid(self, rows, cols):
        with pytest.raises(ValueError):
            minor(build_symbolic(Graph.path(3)), rows, cols)

    def test_example_array(self):
        M = build_symbolic(Graph.path(4))
        array = example_array(M)
        for i in range(4):
            for j in range(4):
                rows = [r for r in range(4) if r != i]
                cols = [c for c in range(4) if c != j]
                got = minor(M, rows, cols)
                assert got in (array[i][j], -array[i][j])

    def test_transpose_symmetry(self):
        rnd = random.Random(7)
        for G in atlas_graphs(6)[::7]:
            M = build_symbolic(G)
            for k in range(1, G.n + 1):
                subsets = list(combinations(range(G.n), k))
                for _ in range(5):
                    I, J = rnd.choice(subsets), rnd.choice(subsets)
                    assert minor(M, I, J) == minor(M, J, I)

    def test_numeric_consistency(self):
        rnd = random.Random(11)
        for G in atlas_graphs(5)[::2]:
            M = build_symbolic(G)
            vals = random_assignment(M, rnd)
            A = numeric(M, vals)
            for k in range(1, G.n + 1):
                for I, J, p in iter_minors(M, k):
                    assert p.evaluate(vals) == determinant(A.submatrix(I, J))


class TestKMinors:
    def test_example_three_minors(self):
        M = build_symbolic(Graph.path(4))
        ms = k_minors(M, 3)
        assert ms.all_count == 16
        reference = {p.normalize() for row in example_array(M) for p in row}
        assert len(reference) == 10
        assert set(ms.distinct) == reference

    def test_example_quartic(self):
        M = build_symbolic(Graph.path(4))
        ms = k_minors(M, 4)
        assert ms.all_count == 1
        assert ms.distinct == (example_quartic(M).normalize(),)

    def test_edgeless_pairs(self):
        M = build_symbolic(Graph.empty(3))
        ms = k_minors(M, 2)
        X = [M.ring.gen(x(i)) for i in range(3)]
        assert ms.all_count == 9
        assert set(ms.distinct) == {X[i] * X[j] for i, j in combinations(range(3), 2)}

    def test_counts_all_small_graphs(self):
        for G in atlas_graphs(5):
            M = build_symbolic(G)
            for k in range(1, G.n + 1):
                ms = k_minors(M, k)
                enumerated = sum(1 for _ in iter_minors(M, k))
                assert ms.all_count == enumerated == comb(G.n, k) ** 2
                assert all(p.is_normalized() for p in ms.distinct)

    def test_k_range(self):
        with pytest.raises(ValueError):
            k_minors(build_symbolic(Graph.path(2)), 3)


class TestRabinowitsch:
    def test_example_systems(self):
        M = build_symbolic(Graph.path(4))
        assert len(rabinowitsch_system(M, 4)) == 1 + 3
        assert len(rabinowitsch_system(M, 3)) == 10 + 3

    def test_k2_linear(self):
        M = build_symbolic(Graph.path(2))
        g = M.ring.gen
        system = rabinowitsch_system(M, 1)
        assert set(system.generators) == {g(x(0)), g(x(1)), g(y(0, 1)), g(y(0, 1)) * g(yh(0, 1)) - 1}

    def test_unit_edges_drop_variables(self):
        G = Graph.path(3)
        M = build_symbolic(G, unit_edges=frozenset({(0, 1)}))
        assert y(0, 1) not in M.ring.index
        assert M.entry(0, 1) == M.ring.constant(1)
        assert len(rabinowitsch_system(M, 3)) == 1 + 1


class TestDeterminantalRank:
    def test_rank_is_largest_nonvanishing_minor(self):
        rnd = random.Random(3)
        for G in atlas_graphs(5):
            M = build_symbolic(G)
            for _ in range(2):
                vals = random_assignment(M, rnd, bound=1)
                A = numeric(M, vals)
                largest = 0
                for k in range(1, G.n + 1):
                    if any(p.evaluate(vals) for p in k_minors(M, k).distinct):
                        largest = k
                assert rank(A) == largest
