import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minrank.graph import (
    Graph,
    GraphFormatError,
    NotATreeError,
    connected_components,
    encode_graph6,
    forcing_closure,
    parse_edge_list,
    parse_graph6,
    path_cover_number,
    spanning_forest,
    tree_minimum_rank,
    zero_forcing_number,
    zero_forcing_set,
)

from .oracles import atlas_graphs, from_nx, path_cover_brute, to_nx, zero_forcing_brute


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


class TestGraph:
    def test_edges_are_normalized(self):
        G = Graph.from_edges(3, [(2, 1), (1, 2), (0, 1)])
        assert G.sorted_edges == ((0, 1), (1, 2))
        assert G.t == 2

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 1)]])
    def test_invalid_edges(self, edges):
        with pytest.raises(ValueError):
            Graph.from_edges(3, edges)

    def test_constructors(self):
        assert Graph.path(4).sorted_edges == ((0, 1), (1, 2), (2, 3))
        assert Graph.complete(4).t == 6
        assert Graph.cycle(5).t == 5
        assert Graph.star(3).degree(0) == 3
        assert Graph.empty(3).t == 0


class TestGraph6:
    @pytest.mark.parametrize(
        "text, n, edges",
        [
            ("A?", 2, []),
            ("A_", 2, [(0, 1)]),
            ("Ch", 4, [(0, 1), (1, 2), (2, 3)]),
        ],
    )
    def test_examples(self, text, n, edges):
        G = parse_graph6(text)
        assert G == Graph.from_edges(n, edges)
        # independent decoder
        H = nx.from_graph6_bytes(text.encode())
        assert from_nx(H) == G

    def test_header_and_whitespace(self):
        assert parse_graph6(">>graph6<<Ch\n") == Graph.path(4)

    @pytest.mark.parametrize(
        "text, offset",
        [("C", 1), ("Ch?", 2), ("C h", 1), ("", 0), ("~~", 0)],
    )
    def test_errors_name_offsets(self, text, offset):
        with pytest.raises(GraphFormatError) as info:
            parse_graph6(text)
        assert info.value.offset == offset

    @given(graphs(max_n=8))
    @settings(max_examples=200, deadline=None)
    def test_round_trip(self, G):
        s = encode_graph6(G)
        assert parse_graph6(s) == G
        assert nx.to_graph6_bytes(to_nx(G), header=False).decode().strip() == s

    def test_round_trip_all_small(self):
        for G in atlas_graphs(7):
            assert parse_graph6(encode_graph6(G)) == G


class TestEdgeList:
    def test_path(self):
        assert parse_edge_list("0 1\n1 2\n2 3") == Graph.path(4)

    def test_duplicates_collapse(self):
        assert parse_edge_list("0 1\n1 0") == Graph.from_edges(2, [(0, 1)])

    def test_comments_and_header(self):
        G = parse_edge_list("# triangle plus isolated\nn=5\n\n0 1\n1 2 # edge\n0 2\n")
        assert G.n == 5 and G.t == 3

    @pytest.mark.parametrize(
        "text, line",
        [("0 0", 1), ("0 1\n1 -2", 2), ("0 a", 1), ("0 1 2", 1), ("n=1\n0 3", None)],
    )
    def test_errors(self, text, line):
        with pytest.raises(GraphFormatError) as info:
            parse_edge_list(text)
        assert info.value.line == line


class TestComponents:
    def test_examples(self):
        P4 = Graph.path(4)
        comps = connected_components(P4)
        assert [c.graph for c in comps] == [P4]

        comps = connected_components(Graph.from_edges(4, [(0, 1), (2, 3)]))
        assert [c.graph for c in comps] == [Graph.path(2), Graph.path(2)]
        assert [c.labels for c in comps] == [(0, 1), (2, 3)]

        comps = connected_components(Graph.empty(3))
        assert [c.graph for c in comps] == [Graph.empty(1)] * 3

    @given(graphs())
    @settings(max_examples=100, deadline=None)
    def test_counts_preserved(self, G):
        comps = connected_components(G)
        assert sum(c.graph.n for c in comps) == G.n
        assert sum(c.graph.t for c in comps) == G.t
        assert sorted(v for c in comps for v in c.labels) == list(range(G.n))
        assert len(comps) == nx.number_connected_components(to_nx(G)) if G.n else not comps
        for c in comps:
            assert c.graph.is_connected()

    @given(graphs())
    @settings(max_examples=100, deadline=None)
    def test_spanning_forest(self, G):
        F = spanning_forest(G)
        assert F <= G.edges
        assert len(F) == G.n - len(connected_components(G))
        assert nx.is_forest(nx.Graph(list(F))) if F else True


class TestZeroForcing:
    @pytest.mark.parametrize(
        "G, z",
        [(Graph.path(4), 1), (Graph.complete(4), 3), (Graph.cycle(5), 2)],
    )
    def test_examples(self, G, z):
        assert zero_forcing_brute(G) == z
        assert zero_forcing_number(G) == z

    def test_closure(self):
        assert forcing_closure(Graph.path(4), [0]) == frozenset(range(4))
        assert forcing_closure(Graph.path(4), [1]) == frozenset([1])

    def test_set_is_lexicographically_first(self):
        assert zero_forcing_set(Graph.complete(4)) == (0, 1, 2)
        assert zero_forcing_set(Graph.star(3)) == (1, 2)

    def test_matches_brute_force_small_graphs(self):
        for G in atlas_graphs(6):
            assert zero_forcing_number(G) == zero_forcing_brute(G), G

    def test_connected_range(self):
        for G in atlas_graphs(6, connected=True):
            if G.n >= 2:
                z = zero_forcing_number(G)
                assert 1 <= G.n - z and z <= G.n - 1


class TestTrees:
    @pytest.mark.parametrize(
        "T, mr",
        [(Graph.path(4), 3), (Graph.empty(1), 0), (Graph.star(3), 2)],
    )
    def test_examples(self, T, mr):
        assert tree_minimum_rank(T) == mr
        assert T.n - path_cover_brute(T) == mr

    def test_paths(self):
        for n in range(1, 11):
            assert tree_minimum_rank(Graph.path(n)) == n - 1

    @pytest.mark.parametrize("n", range(1, 9))
    def test_dp_matches_enumeration(self, n):
        for H in nx.nonisomorphic_trees(n) if n > 1 else [nx.empty_graph(1)]:
            T = from_nx(H)
            assert path_cover_number(T) == path_cover_brute(T)

    def test_not_a_tree(self):
        with pytest.raises(NotATreeError):
            tree_minimum_rank(Graph.cycle(4))
        with pytest.raises(NotATreeError):
            tree_minimum_rank(Graph.empty(2))
