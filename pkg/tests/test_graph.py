from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from helpers import (brute_distances, connected_graphs, cycle_graph,
                     diagonal_graph, kirchhoff_count, path_graph,
                     rooted_example_tree, trees, two_cycles_graph)
from kantograph.graph import (EnumerationOverflow, GraphError, NotATreeError,
                              WeightedGraph, all_pairs_shortest_paths,
                              articulation_split, enumerate_spanning_trees,
                              extend_forest_to_spanning_tree, geodesic,
                              is_close, root_tree, validate_metric)


def lab(g, *names):
    return [g.index[n] for n in names]


class TestConstruction:
    def test_labels_in_first_appearance_order(self):
        g = WeightedGraph.from_edges([("b", "a", 1), ("c", "b", 2)])
        assert g.labels == ("b", "a", "c")
        assert g.edges == ((0, 1, 1), (0, 2, 2))

    def test_weights_parsed_exactly(self):
        g = WeightedGraph.from_edges([("a", "b", "5/2"), ("b", "c", 0.1)])
        assert g.edges[0][2] == F(5, 2)
        assert g.edges[1][2] == F(1, 10)

    @pytest.mark.parametrize("edges, msg", [
        ([("a", "a", 1)], "loop"),
        ([("a", "b", 1), ("b", "a", 2)], "duplicate"),
        ([("a", "b", 0)], "non-positive"),
        ([("a", "b", -1)], "non-positive"),
        ([("a", "b", 1), ("c", "d", 1)], "not connected"),
    ])
    def test_rejections(self, edges, msg):
        with pytest.raises(GraphError, match=msg):
            WeightedGraph.from_edges(edges)

    def test_single_vertex(self):
        g = WeightedGraph(("a",), ())
        assert g.n == 1 and g.is_tree()


class TestShortestPaths:
    def test_path_unit(self):
        g = path_graph(3)
        assert all_pairs_shortest_paths(g)[0][2] == 2

    def test_two_cycles(self):
        g = two_cycles_graph()
        d = all_pairs_shortest_paths(g)
        one, three = lab(g, "1", "3")
        assert d[one][three] == 2
        assert geodesic(g, d, one, three) == lab(g, "1", "2", "3")

    def test_single_edge(self):
        g = WeightedGraph.from_edges([("a", "b", "5/2")])
        assert all_pairs_shortest_paths(g)[0][1] == F(5, 2)

    @settings(max_examples=60, deadline=None)
    @given(connected_graphs())
    def test_matches_path_enumeration(self, g):
        assert [list(r) for r in all_pairs_shortest_paths(g)] == brute_distances(g)

    @settings(max_examples=60, deadline=None)
    @given(connected_graphs())
    def test_is_metric(self, g):
        assert validate_metric(all_pairs_shortest_paths(g)).ok

    @settings(max_examples=60, deadline=None)
    @given(connected_graphs())
    def test_geodesics_additive_and_close(self, g):
        d = all_pairs_shortest_paths(g)
        for x in range(g.n):
            for y in range(g.n):
                p = geodesic(g, d, x, y)
                assert p[0] == x and p[-1] == y
                assert sum((d[a][b] for a, b in zip(p, p[1:])), F(0)) == d[x][y]
                assert all(is_close(g, d, a, b) for a, b in zip(p, p[1:]))


class TestClose:
    def test_tree_edges_close(self):
        g = rooted_example_tree([3, 1, 4, 1, 5, 9, 2])
        d = all_pairs_shortest_paths(g)
        assert all(is_close(g, d, i, j) for i, j, _ in g.edges)

    def test_unweighted_edges_close(self):
        g = diagonal_graph()
        d = all_pairs_shortest_paths(g)
        assert all(is_close(g, d, i, j) for i, j, _ in g.edges)

    def test_heavy_edge_not_close(self):
        g = WeightedGraph.from_edges([("a", "b", 3), ("b", "c", 1), ("a", "c", 1)])
        d = all_pairs_shortest_paths(g)
        assert d[0][1] == 2
        assert not is_close(g, d, 0, 1)
        assert is_close(g, d, 1, 2)

    def test_non_adjacent(self):
        g = path_graph(3)
        assert not is_close(g, all_pairs_shortest_paths(g), 0, 2)


class TestValidateMetric:
    def test_triangle_violation(self):
        d = [[0, 1, 10], [1, 0, 1], [10, 1, 0]]
        rep = validate_metric(d)
        assert not rep.ok and rep.kind == "triangle" and rep.where == (0, 1, 2)

    def test_asymmetry(self):
        rep = validate_metric([[0, 1], [2, 0]])
        assert rep.kind == "symmetry" and rep.where == (0, 1)

    def test_diagonal_and_positivity(self):
        assert validate_metric([[1, 1], [1, 0]]).kind == "diagonal"
        assert validate_metric([[0, 0], [0, 0]]).kind == "positivity"


class TestRootTree:
    def test_rooted_example(self):
        g = rooted_example_tree()
        t = root_tree(g, g.index["1"])
        idx = g.index
        assert t.parent[idx["8"]] == idx["4"]
        assert t.parent[idx["4"]] == idx["2"]
        assert set(t.children[idx["2"]]) == {idx["4"], idx["5"], idx["6"]}
        assert t.precedes(idx["2"], idx["8"]) and not t.precedes(idx["3"], idx["8"])

    def test_single_vertex(self):
        t = root_tree(WeightedGraph(("a",), ()), 0)
        assert t.parent == (-1,) and t.children == ((),)

    def test_path_rooted_in_middle(self):
        g = path_graph(3)
        t = root_tree(g, 1)
        assert set(t.children[1]) == {0, 2}

    def test_cycle_rejected_with_edges(self):
        with pytest.raises(NotATreeError) as err:
            root_tree(cycle_graph(4), 0)
        assert len(err.value.cycle) == 4

    @settings(max_examples=40, deadline=None)
    @given(trees())
    def test_order_consistent(self, g):
        for r in range(g.n):
            t = root_tree(g, r)
            assert t.order[0] == r and sorted(t.order) == list(range(g.n))
            seen = set()
            for x in t.order:
                assert t.parent[x] == -1 or t.parent[x] in seen
                seen.add(x)


class TestSpanningTrees:
    @pytest.mark.parametrize("n", range(3, 9))
    def test_cycle_count(self, n):
        trees_ = list(enumerate_spanning_trees(cycle_graph(n)))
        assert len(trees_) == n
        assert {frozenset(range(n)) - frozenset(t) for t in trees_} == \
            {frozenset([k]) for k in range(n)}

    def test_diagonal_square(self):
        assert len(list(enumerate_spanning_trees(diagonal_graph()))) == 8

    def test_tree_yields_itself(self):
        g = rooted_example_tree()
        assert list(enumerate_spanning_trees(g)) == [tuple(range(7))]

    def test_overflow_carries_count(self):
        with pytest.raises(EnumerationOverflow) as err:
            list(enumerate_spanning_trees(diagonal_graph(), limit=5))
        assert err.value.count == 6

    @settings(max_examples=50, deadline=None)
    @given(connected_graphs())
    def test_kirchhoff(self, g):
        found = list(enumerate_spanning_trees(g))
        assert len(found) == len(set(found)) == kirchhoff_count(g)
        for t in found:
            assert g.subgraph(t).is_tree()

    def test_deterministic(self):
        g = diagonal_graph()
        assert list(enumerate_spanning_trees(g)) == list(enumerate_spanning_trees(g))


class TestExtendForest:
    def test_empty_forest_on_c4(self):
        g = cycle_graph(4)
        t = extend_forest_to_spanning_tree(g, [])
        assert t == (0, 1, 2)

    def test_spanning_forest_returned(self):
        g = cycle_graph(4)
        pairs = [(g.edges[k][0], g.edges[k][1]) for k in (1, 2, 3)]
        assert extend_forest_to_spanning_tree(g, pairs) == (1, 2, 3)

    def test_contains_given_edge(self):
        g = diagonal_graph()
        one, two = lab(g, "1", "2")
        t = extend_forest_to_spanning_tree(g, [(one, two)])
        assert g.subgraph(t).is_tree()
        assert any({g.edges[k][0], g.edges[k][1]} == {one, two} for k in t)

    def test_cycle_rejected(self):
        g = cycle_graph(3)
        with pytest.raises(NotATreeError):
            extend_forest_to_spanning_tree(g, [(0, 1), (1, 2), (2, 0)])


class TestArticulation:
    def test_two_cycles(self):
        g = two_cycles_graph()
        (sp,) = articulation_split(g)
        assert g.labels[sp.vertex] == "2"
        comps = {frozenset(g.labels[v] for v in c) for c in sp.components}
        assert comps == {frozenset("125"), frozenset("234")}

    def test_cycle_biconnected(self):
        assert articulation_split(cycle_graph(5)) == []

    def test_path(self):
        (sp,) = articulation_split(path_graph(3))
        assert sp.vertex == 1 and set(sp.components) == {(0, 1), (1, 2)}

    @settings(max_examples=50, deadline=None)
    @given(connected_graphs())
    def test_one_sum_distances(self, g):
        d = all_pairs_shortest_paths(g)
        for sp in articulation_split(g):
            for a, ca in enumerate(sp.components):
                for cb in sp.components[a + 1:]:
                    for x in ca:
                        for y in cb:
                            assert d[x][y] == d[x][sp.vertex] + d[sp.vertex][y]
