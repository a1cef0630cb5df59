import pytest

from borelfiber.borel import build_table, build_two_borel, reduce_for_fiber
from borelfiber.fiber import (
    build_fiber_graph,
    compare_fiber_points,
    enumerate_fiber,
    fiber_point_type,
    fiber_sink_key,
    find_sink_direct,
    graph_to_json,
    point_product,
    replacement_move,
    sinks,
    to_dot,
    vertex_label,
)
from borelfiber.monomials import multiply

from helpers import brute_factorizations, mono, monos


@pytest.fixture(scope="module")
def fig_table():
    return build_two_borel(mono("a^2c^3"), mono("b^4c"))


@pytest.fixture(scope="module")
def fig_graph(fig_table):
    return build_fiber_graph(fig_table, mono("a^3b^9c^3"))


def point_of(table, *factors):
    return tuple(sorted(table.index_of[mono(f)] for f in factors))


def as_monomial_sets(graph):
    """Vertex and directed edge sets keyed by factor monomials, not indices."""
    def name(v):
        return tuple(sorted(graph.table.generators[i] for i in v))

    vertices = frozenset(name(v) for v in graph.vertices)
    edges = frozenset(
        (name(graph.vertices[a]), name(graph.vertices[b])) for a, b in graph.edges
    )
    return vertices, edges


def undirected_components(graph):
    n = len(graph.vertices)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in graph.edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    return len({find(i) for i in range(n)})


# the seven factorizations of a^3b^9c^3 and the twelve oriented swaps
FIG_VERTICES = [
    ("b^4c", "b^4c", "a^3bc"),
    ("b^4c", "b^5", "a^3c^2"),
    ("b^4c", "ab^3c", "a^2b^2c"),
    ("b^4c", "ab^4", "a^2bc^2"),
    ("ab^3c", "ab^3c", "ab^3c"),
    ("b^5", "ab^3c", "a^2bc^2"),
    ("b^5", "ab^4", "a^2c^3"),
]
FIG_EDGES = [
    (0, 1), (0, 2), (0, 3),
    (1, 3), (1, 5), (1, 6),
    (2, 3), (2, 5),
    (3, 6),
    (4, 2),
    (5, 3), (5, 6),
]


class TestEnumerateFiber:
    def test_figure_fiber_has_seven_points(self, fig_table):
        fiber = enumerate_fiber(fig_table, mono("a^3b^9c^3"))
        assert len(fiber) == 7
        expected = {point_of(fig_table, *factors) for factors in FIG_VERTICES}
        assert set(fiber) == expected

    def test_fiber_of_a_generator_is_that_generator(self, fig_table):
        assert enumerate_fiber(fig_table, mono("a^2c^3")) == [(13,)]
        assert enumerate_fiber(fig_table, mono("b^4c")) == [(0,)]

    def test_degree_not_multiple_of_d(self, fig_table):
        assert enumerate_fiber(fig_table, (3, 9, 1)) == []

    def test_unit_multidegree(self, fig_table):
        assert enumerate_fiber(fig_table, (0, 0, 0)) == [()]

    def test_matches_brute_force(self, fig_table):
        gens = list(fig_table.generators)
        for mu in [(3, 9, 3), (2, 4, 4), (1, 9, 0), (4, 11, 0), (0, 10, 0), (5, 5, 5)]:
            assert set(enumerate_fiber(fig_table, mu)) == brute_factorizations(gens, mu)

    def test_deterministic_ascending_order(self, fig_table):
        fiber = enumerate_fiber(fig_table, mono("a^3b^9c^3"))
        assert fiber == sorted(fiber)

    def test_three_borel_fiber_contains_both_counterexample_points(self):
        table = build_table(monos("a^3c^3", "b^6", "a^2b^2c^2"))
        f, g, h = mono("a^3c^3"), mono("b^6"), mono("a^2b^2c^2")
        mu = multiply(multiply(f, f), g)
        assert mu == multiply(multiply(h, h), h) == (6, 6, 6)
        fiber = set(enumerate_fiber(table, mu))
        assert point_of(table, "a^3c^3", "a^3c^3", "b^6") in fiber
        assert point_of(table, "a^2b^2c^2", "a^2b^2c^2", "a^2b^2c^2") in fiber


class TestFiberSinkOrder:
    def test_two_variable_example(self):
        table = build_two_borel((0, 2), (0, 2))
        # variable order Y_{a^2}, Y_{ab}, Y_{b^2}
        assert table.generators == ((2, 0), (1, 1), (0, 2))
        sq = (1, 1)
        split = (0, 2)
        assert compare_fiber_points(table, sq, split) == 1

    def test_reflexive(self, fig_table):
        z = point_of(fig_table, "b^4c", "b^5", "a^3c^2")
        assert compare_fiber_points(fig_table, z, z) == 0

    def test_source_exceeds_sink(self, fig_table):
        source = point_of(fig_table, "b^4c", "b^4c", "a^3bc")
        sink = point_of(fig_table, "b^5", "ab^4", "a^2c^3")
        assert compare_fiber_points(fig_table, source, sink) == 1

    def test_strict_on_distinct_points(self, fig_table):
        fiber = enumerate_fiber(fig_table, mono("a^3b^9c^3"))
        keys = {fiber_sink_key(fig_table, z) for z in fiber}
        assert len(keys) == len(fiber)


class TestBuildFiberGraph:
    def test_figure_graph_exactly(self, fig_graph):
        table = fig_graph.table
        assert len(fig_graph.vertices) == 7
        assert len(fig_graph.edges) == 12
        expected_vertices = [point_of(table, *fs) for fs in FIG_VERTICES]
        position = {v: i for i, v in enumerate(fig_graph.vertices)}
        expected_edges = {
            (position[expected_vertices[a]], position[expected_vertices[b]])
            for a, b in FIG_EDGES
        }
        assert set(fig_graph.edges) == expected_edges

    def test_single_vertex_no_edges(self, fig_table):
        g = build_fiber_graph(fig_table, mono("a^2c^3"))
        assert len(g.vertices) == 1
        assert g.edges == ()

    def test_edges_decrease_in_the_sink_order(self, fig_table):
        for mu in [(3, 9, 3), (4, 8, 3), (2, 8, 5), (5, 5, 5)]:
            g = build_fiber_graph(fig_table, mu)
            for a, b in g.edges:
                ka = fiber_sink_key(fig_table, g.vertices[a])
                kb = fiber_sink_key(fig_table, g.vertices[b])
                assert ka > kb

    def test_edge_endpoints_differ_in_exactly_two_slots(self, fig_graph):
        from collections import Counter

        for a, b in fig_graph.edges:
            ca = Counter(fig_graph.vertices[a])
            cb = Counter(fig_graph.vertices[b])
            moved = ca - cb
            assert sum(moved.values()) == 2
            u, v = sorted(moved.elements())
            gained = cb - ca
            up, vp = sorted(gained.elements())
            table = fig_graph.table
            assert multiply(
                multiply(table.generators[u], table.generators[v]), (0, 0, 0)
            ) == multiply(table.generators[up], table.generators[vp])

    def test_reduction_leaves_graph_unchanged(self, fig_table):
        for mu in [(3, 9, 3), (2, 4, 4), (1, 9, 0), (4, 11, 0), (0, 10, 0), (6, 9, 0), (2, 8, 5)]:
            reduced = reduce_for_fiber(fig_table, mu)
            g1 = build_fiber_graph(fig_table, mu)
            g2 = build_fiber_graph(reduced, mu)
            assert as_monomial_sets(g1) == as_monomial_sets(g2)

    def test_reduction_unchanged_for_comparable_roots_table(self):
        table = build_two_borel(mono("ac"), mono("b^2"))
        for mu in [(2, 1, 1), (2, 2, 2), (1, 3, 0), (3, 1, 2), (0, 4, 0)]:
            g1 = build_fiber_graph(table, mu)
            g2 = build_fiber_graph(reduce_for_fiber(table, mu), mu)
            assert as_monomial_sets(g1) == as_monomial_sets(g2)

    def test_reduction_unchanged_across_sampled_instances(self):
        from borelfiber.instances import suite_tables, sweep_multidegrees

        compared = 0
        for table in suite_tables(cap=40)[::7]:
            for mu in sweep_multidegrees(table, 3):
                reduced = reduce_for_fiber(table, mu)
                if reduced == table:
                    continue
                compared += 1
                g1 = build_fiber_graph(table, mu)
                g2 = build_fiber_graph(reduced, mu)
                assert as_monomial_sets(g1) == as_monomial_sets(g2)
        assert compared > 50


class TestPointTypes:
    def test_examples(self, fig_table):
        assert fiber_point_type(fig_table, point_of(fig_table, "b^4c", "b^4c", "a^3bc")) == "M"
        assert fiber_point_type(fig_table, point_of(fig_table, "ab^3c", "ab^3c", "ab^3c")) == "N"
        assert fiber_point_type(fig_table, point_of(fig_table, "b^5", "ab^4", "a^2c^3")) == "M"

    def test_any_point_with_the_m_root_is_type_m(self, fig_table):
        for z in enumerate_fiber(fig_table, multiply(mono("a^2c^3"), mono("b^4c"))):
            if fig_table.index_of[mono("a^2c^3")] in z:
                assert fiber_point_type(fig_table, z) == "M"

    def test_empty_point_rejected(self, fig_table):
        with pytest.raises(ValueError):
            fiber_point_type(fig_table, ())


class TestReplacementMove:
    def test_source_has_a_later_neighbor(self, fig_table):
        source = point_of(fig_table, "b^4c", "b^4c", "a^3bc")
        result = replacement_move(fig_table, (3, 9, 3), source)
        assert result is not None
        assert compare_fiber_points(fig_table, source, result) == 1

    def test_absent_on_point_containing_reduced_m_root(self, fig_table):
        sink = point_of(fig_table, "b^5", "ab^4", "a^2c^3")
        assert replacement_move(fig_table, (3, 9, 3), sink) is None

    def test_node_five_moves_to_node_six(self, fig_table):
        z = point_of(fig_table, "b^5", "ab^3c", "a^2bc^2")
        assert replacement_move(fig_table, (3, 9, 3), z) == point_of(
            fig_table, "b^5", "ab^4", "a^2c^3"
        )

    def test_result_is_an_out_neighbor(self, fig_graph):
        table = fig_graph.table
        position = {v: i for i, v in enumerate(fig_graph.vertices)}
        arrows = set(fig_graph.edges)
        for z in fig_graph.vertices:
            moved = replacement_move(table, fig_graph.mu, z)
            if moved is None:
                continue
            assert (position[z], position[moved]) in arrows

    def test_type_n_fiber(self):
        # all factorizations of b^10 over Borel(a^2c^3, b^4c) use only G_N
        table = build_two_borel(mono("a^2c^3"), mono("b^4c"))
        z = (1, 1)  # Y_{b^5}^2
        assert fiber_point_type(table, z) == "N"
        assert replacement_move(table, (0, 10, 0), z) is None


class TestSinks:
    def test_unique_figure_sink(self, fig_graph):
        assert sinks(fig_graph) == [point_of(fig_graph.table, "b^5", "ab^4", "a^2c^3")]

    def test_single_vertex_graph(self, fig_table):
        g = build_fiber_graph(fig_table, mono("b^4c"))
        assert sinks(g) == [(0,)]

    def test_sink_is_the_order_minimum(self, fig_table):
        for mu in [(3, 9, 3), (2, 4, 4), (4, 8, 3), (2, 8, 5)]:
            g = build_fiber_graph(fig_table, mu)
            assert sinks(g) == [g.vertices[-1]]

    def test_counterexample_fiber_breaks_uniqueness_or_connectivity(self):
        table = build_table(monos("a^3c^3", "b^6", "a^2b^2c^2"))
        g = build_fiber_graph(table, (6, 6, 6))
        assert len(sinks(g)) > 1 or undirected_components(g) > 1

    def test_sink_divisible_by_the_reduced_root_of_its_type(self, fig_table):
        from borelfiber.borel import lex_last_divisor

        for mu in [(3, 9, 3), (2, 4, 4), (4, 8, 3), (2, 8, 5), (0, 10, 0), (1, 9, 0), (6, 9, 0)]:
            g = build_fiber_graph(fig_table, mu)
            for sink in sinks(g):
                root = fig_table.roots[0 if fiber_point_type(fig_table, sink) == "M" else -1]
                reduced = lex_last_divisor(root, mu)
                assert reduced is not None
                assert fig_table.index_of[reduced] in sink

    def test_type_dichotomy(self, fig_table):
        # a type N sink rules out type M points anywhere in the fiber
        for mu in [(0, 10, 0), (1, 14, 0), (2, 4, 4), (3, 9, 3), (0, 15, 0), (1, 9, 0)]:
            g = build_fiber_graph(fig_table, mu)
            if not g.vertices:
                continue
            if any(fiber_point_type(fig_table, s) == "N" for s in sinks(g)):
                assert all(fiber_point_type(fig_table, v) == "N" for v in g.vertices)


class TestFindSinkDirect:
    def test_figure_sink(self, fig_table):
        assert find_sink_direct(fig_table, mono("a^3b^9c^3")) == point_of(
            fig_table, "b^5", "ab^4", "a^2c^3"
        )

    def test_unit_multidegree(self, fig_table):
        assert find_sink_direct(fig_table, (0, 0, 0)) == ()

    def test_empty_fiber(self, fig_table):
        assert find_sink_direct(fig_table, (0, 0, 7)) is None
        assert find_sink_direct(fig_table, (3, 9, 1)) is None

    def test_agrees_with_graph_sinks(self, fig_table):
        mus = [
            (2, 4, 4), (3, 9, 3), (4, 8, 3), (2, 8, 5), (1, 9, 0),
            (0, 10, 0), (6, 9, 0), (5, 5, 5), (4, 4, 2), (2, 0, 3),
        ]
        for mu in mus:
            g = build_fiber_graph(fig_table, mu)
            expected = sinks(g)
            got = find_sink_direct(fig_table, mu)
            if not g.vertices:
                assert got is None
            else:
                assert [got] == expected

    def test_agrees_on_a_principal_table(self):
        table = build_two_borel(mono("b^4c"), mono("b^4c"))
        for mu in [(0, 8, 2), (1, 8, 1), (2, 7, 1), (3, 12, 0)]:
            g = build_fiber_graph(table, mu)
            got = find_sink_direct(table, mu)
            if not g.vertices:
                assert got is None
            else:
                assert [got] == sinks(g)


class TestDotAndJson:
    def test_figure_dot_counts(self, fig_graph):
        dot = to_dot(fig_graph)
        assert dot.count("label=") == 7
        assert dot.count(" -> ") == 12
        assert dot.startswith("digraph fiber {")

    def test_sink_label(self, fig_graph):
        assert vertex_label(fig_graph.table, fig_graph.vertices[-1]) == "Y_{b^5}Y_{ab^4}Y_{a^2c^3}"

    def test_repeated_factor_label(self, fig_graph):
        cubed = point_of(fig_graph.table, "ab^3c", "ab^3c", "ab^3c")
        assert vertex_label(fig_graph.table, cubed) == "Y_{ab^3c}^3"
        doubled = point_of(fig_graph.table, "b^4c", "b^4c", "a^3bc")
        assert vertex_label(fig_graph.table, doubled) == "Y_{b^4c}^2Y_{a^3bc}"

    def test_empty_fiber_dot(self, fig_table):
        dot = to_dot(build_fiber_graph(fig_table, (0, 0, 7)))
        assert dot == "digraph fiber {\n}\n"

    def test_deterministic(self, fig_table):
        a = to_dot(build_fiber_graph(fig_table, (3, 9, 3)))
        b = to_dot(build_fiber_graph(fig_table, (3, 9, 3)))
        assert a == b

    def test_json_shape(self, fig_graph):
        data = graph_to_json(fig_graph)
        assert data["mu"] == "a^3b^9c^3"
        assert len(data["vertices"]) == 7
        assert len(data["edges"]) == 12
        assert data["sinks"] == [6]
        assert data["vertices"][6]["factors"] == ["b^5", "ab^4", "a^2c^3"]
        assert data["vertices"][6]["type"] == "M"
        assert data["vertices"][4]["type"] in {"M", "N"}


class TestPointProduct:
    def test_products(self, fig_table):
        z = point_of(fig_table, "b^5", "ab^4", "a^2c^3")
        assert point_product(fig_table, z) == (3, 9, 3)
        assert point_product(fig_table, ()) == (0, 0, 0)
