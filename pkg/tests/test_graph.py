import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netid import (
    ConnectivityError,
    EdgeLengthError,
    GraphParseError,
    MetrizedGraph,
    PreconditionError,
    conductance_profile,
    generate_random_multigraph,
    laplacian,
    optimalize,
    parse_edge_list,
    serialize,
)
from netid.foster import ElectricalNetwork

from conftest import nodal_resistances


class TestParse:
    def test_path(self):
        g = parse_edge_list("a b 1\nb c 1")
        assert g.vertices == ("a", "b", "c")
        assert g.e == 2

    def test_triangle(self):
        g = parse_edge_list("a b 1\nb c 1\nc a 1")
        assert (g.n, g.e) == (3, 3)

    def test_comments_blank_lines_and_order(self):
        text = "# header\n\n  z y 0.5   # trailing\n\ny x 2e-1\n"
        g = parse_edge_list(text)
        assert g.vertices == ("z", "y", "x")
        assert g.edges[1].length == 0.2

    def test_duplicate_lines_are_parallel_edges(self):
        g = parse_edge_list("a b 1\na b 1\n")
        assert g.e == 2
        assert not g.is_optimal

    def test_disconnected(self):
        with pytest.raises(ConnectivityError):
            parse_edge_list("a b 1\nc d 1\n")

    @pytest.mark.parametrize("line", ["a b", "a b 1 2", "a b one"])
    def test_malformed_line_reports_line_number(self, line):
        with pytest.raises(GraphParseError) as info:
            parse_edge_list(f"# ok\na b 1\n{line}\n")
        assert info.value.lineno == 3

    @pytest.mark.parametrize("length", ["0", "-1", "inf", "nan"])
    def test_bad_length(self, length):
        with pytest.raises(EdgeLengthError):
            parse_edge_list(f"a b {length}\n")

    def test_empty_document(self):
        with pytest.raises(GraphParseError):
            parse_edge_list("# nothing\n")


def test_constructor_validation():
    with pytest.raises(PreconditionError):
        MetrizedGraph((), ())
    with pytest.raises(PreconditionError):
        MetrizedGraph(("a", "a"), ())
    with pytest.raises(PreconditionError):
        MetrizedGraph(("a",), (("a", "b", 1.0),))
    assert MetrizedGraph(("a",), ()).n == 1


def test_valence_counts_loop_twice():
    g = parse_edge_list("a a 3\na b 1\n")
    assert g.valence("a") == 3
    assert g.valence("b") == 1


class TestOptimalize:
    def test_optimal_graph_returned_unchanged(self, unit_triangle):
        assert optimalize(unit_triangle) is unit_triangle

    def test_self_loop_becomes_unit_triangle(self):
        g = optimalize(parse_edge_list("a a 3\n"))
        assert g.n == 3 and g.is_optimal
        assert [e.length for e in g.edges] == [1.0, 1.0, 1.0]
        assert g.vertices == ("a", "__sub0", "__sub1")

    def test_parallel_pair(self):
        g = optimalize(parse_edge_list("a b 1\na b 1\n"))
        assert [tuple(e) for e in g.edges] == [("a", "b", 1.0), ("a", "__sub0", 0.5), ("__sub0", "b", 0.5)]
        r = ElectricalNetwork(g).resistance
        assert r("a", "b") == pytest.approx(0.5, rel=1e-12)

    def test_fresh_names_avoid_collisions(self):
        g = optimalize(parse_edge_list("__sub0 b 1\n__sub0 b 2\n"))
        assert g.vertices == ("__sub0", "b", "__sub1")

    def test_idempotent(self):
        g = generate_random_multigraph(8, 10, 3, seed=5)
        once = optimalize(g)
        assert optimalize(once) == once

    @settings(max_examples=40, deadline=None)
    @given(
        n=st.integers(1, 12),
        extra=st.integers(0, 15),
        loops=st.integers(0, 4),
        seed=st.integers(0, 2**32 - 1),
    )
    def test_resistance_preserved(self, n, extra, loops, seed):
        g = generate_random_multigraph(n, extra, loops, seed=seed)
        expected = nodal_resistances(g)
        net = ElectricalNetwork(g)
        got = net.resistance.matrix[: g.n, : g.n]
        np.testing.assert_allclose(got, expected, rtol=1e-10, atol=1e-12)


def test_serialize_round_trip():
    g = generate_random_multigraph(10, 6, 2, seed=11)
    back = parse_edge_list(serialize(g))
    assert back == g


class TestConductance:
    def test_unit_triangle(self, unit_triangle):
        c = conductance_profile(unit_triangle)
        np.testing.assert_array_equal(c.pairwise, np.ones((3, 3)) - np.eye(3))
        np.testing.assert_array_equal(c.vertex, [2, 2, 2])

    def test_unit_path(self, unit_path):
        np.testing.assert_array_equal(conductance_profile(unit_path).vertex, [1, 2, 1])

    def test_single_edge(self, single_edge):
        c = conductance_profile(single_edge)
        assert c.pairwise[0, 1] == 0.5
        np.testing.assert_array_equal(c.vertex, [0.5, 0.5])

    def test_rejects_non_optimal(self):
        with pytest.raises(PreconditionError):
            conductance_profile(parse_edge_list("a b 1\na b 1\n"))

    def test_matches_laplacian(self):
        g = optimalize(generate_random_multigraph(12, 10, 2, seed=2))
        c = conductance_profile(g)
        lap = laplacian(g).matrix
        off = ~np.eye(g.n, dtype=bool)
        np.testing.assert_array_equal(c.pairwise[off], -lap[off])
        np.testing.assert_allclose(c.vertex, np.diag(lap), rtol=1e-15)
        assert math.isclose(c.pairwise.sum(), c.vertex.sum())
