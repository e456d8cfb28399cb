import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from expander_growth.errors import InvalidInputError
from expander_growth.generators import (
    catalan_count,
    erdos_renyi_gnm,
    erdos_renyi_gnp,
    lps_graph,
    polygon_flip_graph,
    polygon_flip_quotient,
    triangulation_table,
)
from expander_growth.generators.lps import legendre, lps_generators, quaternion_solutions
from expander_growth.generators.polygon import flip
from expander_growth.generators.random_graphs import decode_pairs
from expander_growth.graph import degree_stats, is_bipartite, is_connected
from expander_growth.models import Triangulation

# (k, n, m) of the flip graph of the convex k-gon
FLIP_GRAPH_COUNTS = [
    (5, 5, 5),
    (6, 14, 21),
    (7, 42, 84),
    (8, 132, 330),
    (9, 429, 1_287),
    (10, 1_430, 5_005),
    (11, 4_862, 19_448),
    (12, 16_796, 75_582),
]

LARGE_FLIP_GRAPH_COUNTS = [
    (13, 58_786, 293_930),
    (14, 208_012, 1_144_066),
    (15, 742_900, 4_457_400),
]

class TestLPSConstruction:
    @pytest.mark.parametrize("p", [5, 13, 17, 29])
    def test_quaternion_solution_count(self, p: int) -> None:
        assert len(quaternion_solutions(p)) == p + 1

    def test_pgl_case_is_bipartite(self) -> None:
        assert legendre(5, 13) == -1
        g = lps_graph(5, 13)
        assert g.n == 13**3 - 13 == 2184
        assert degree_stats(g).regular and degree_stats(g).d_max == 6
        assert is_connected(g)
        assert is_bipartite(g)
        g.validate()

    def test_psl_case_is_not_bipartite(self) -> None:
        assert legendre(13, 17) == 1
        g = lps_graph(13, 17)
        assert g.n == (17**3 - 17) // 2
        assert g.m == 14 * g.n // 2
        assert is_connected(g)
        assert not is_bipartite(g)

    def test_generators_are_closed_under_inverse(self) -> None:
        generators = lps_generators(5, 13)
        keys = {s.as_tuple() for s in generators}
        for s in generators:
            adjugate = type(s)(s.d, (-s.b) % s.q, (-s.c) % s.q, s.a, s.q).canonical_pgl()
            assert adjugate.as_tuple() in keys

    @pytest.mark.parametrize("p,q", [(7, 13), (5, 5), (13, 5), (5, 15), (4, 13)])
    def test_invalid_parameters(self, p: int, q: int) -> None:
        with pytest.raises(InvalidInputError):
            lps_graph(p, q)

    @pytest.mark.slow
    def test_lps_13_61(self) -> None:
        g = lps_graph(13, 61)
        assert (g.n, g.m) == (113_460, 794_220)
        assert degree_stats(g).d_max == degree_stats(g).d_min == 14
        assert is_connected(g)
        assert not is_bipartite(g)

class TestRandomGraphs:
    def test_probability_zero_is_empty(self) -> None:
        assert erdos_renyi_gnp(50, 0.0, seed=1).m == 0

    def test_probability_one_is_complete(self) -> None:
        g = erdos_renyi_gnp(10, 1.0, seed=1)
        assert g.m == 45

    def test_same_seed_same_graph(self) -> None:
        first = erdos_renyi_gnp(300, 0.02, seed=9)
        second = erdos_renyi_gnp(300, 0.02, seed=9)
        assert np.array_equal(first.edge_array(), second.edge_array())

    def test_edge_count_is_near_expectation(self) -> None:
        n, p = 2000, 0.005
        g = erdos_renyi_gnp(n, p, seed=3)
        expected = p * n * (n - 1) / 2
        assert abs(g.m - expected) < 5 * np.sqrt(expected)

    @given(st.integers(min_value=2, max_value=60), st.data())
    @settings(max_examples=50)
    def test_gnm_has_exactly_m_edges(self, n: int, data) -> None:
        m = data.draw(st.integers(min_value=0, max_value=n * (n - 1) // 2))
        g = erdos_renyi_gnm(n, m, seed=data.draw(st.integers(0, 2**32)))
        assert g.m == m
        g.validate()

    @given(st.integers(min_value=2, max_value=40))
    def test_pair_decoding_enumerates_every_pair(self, n: int) -> None:
        pairs = decode_pairs(n, np.arange(n * (n - 1) // 2, dtype=np.int64))
        expected = [(u, v) for u in range(n) for v in range(u + 1, n)]
        assert [tuple(row) for row in pairs.tolist()] == expected

    def test_invalid_probability(self) -> None:
        with pytest.raises(InvalidInputError):
            erdos_renyi_gnp(10, 1.5, seed=0)

    def test_too_many_edges(self) -> None:
        with pytest.raises(InvalidInputError):
            erdos_renyi_gnm(4, 7, seed=0)

class TestPolygonFlipGraph:
    @pytest.mark.parametrize("k,n,m", FLIP_GRAPH_COUNTS)
    def test_counts(self, k: int, n: int, m: int) -> None:
        g, table = polygon_flip_graph(k)
        assert (g.n, g.m) == (n, m)
        assert len(table) == n == catalan_count(k)
        stats = degree_stats(g)
        assert stats.d_min == stats.d_max == k - 3

    @pytest.mark.slow
    @pytest.mark.parametrize("k,n,m", LARGE_FLIP_GRAPH_COUNTS)
    def test_large_counts(self, k: int, n: int, m: int) -> None:
        g, _ = polygon_flip_graph(k)
        assert (g.n, g.m) == (n, m)

    def test_square_is_a_single_edge(self) -> None:
        g, table = polygon_flip_graph(4)
        assert (g.n, g.m) == (2, 1)
        assert str(table[0]) == "(0,2)"
        assert str(table[1]) == "(1,3)"

    def test_root_is_the_fan_at_zero(self) -> None:
        _, table = polygon_flip_graph(6)
        assert table[0] == Triangulation.fan(6)
        assert triangulation_table(table).splitlines()[0] == "0: (0,2)(0,3)(0,4)"

    def test_every_entry_is_a_valid_distinct_triangulation(self) -> None:
        g, table = polygon_flip_graph(8)
        entries = table[:]
        for t in entries:
            t.validate()
        assert len(set(entries)) == g.n
        assert is_connected(g)

    def test_edges_are_single_flips(self) -> None:
        g, table = polygon_flip_graph(7)
        for u, v in g.edge_array().tolist():
            first, second = set(table[u].diagonals), set(table[v].diagonals)
            assert len(first ^ second) == 2

    def test_flip_is_an_involution(self) -> None:
        fan = Triangulation.fan(6)
        flipped = flip(fan, (0, 3))
        assert flipped.diagonals == ((0, 2), (0, 4), (2, 4))
        assert flip(flipped, (2, 4)) == fan

    def test_flip_of_a_missing_diagonal(self) -> None:
        with pytest.raises(InvalidInputError):
            flip(Triangulation.fan(6), (1, 3))

    def test_index_of_round_trips(self) -> None:
        _, table = polygon_flip_graph(7)
        assert table.index_of(table[17]) == 17

    def test_small_polygon_rejected(self) -> None:
        with pytest.raises(InvalidInputError):
            polygon_flip_graph(3)

class TestPolygonQuotient:
    def test_pentagon_collapses_to_one_orbit(self) -> None:
        g, sizes = polygon_flip_quotient(5, "dihedral")
        assert (g.n, g.m) == (1, 0)
        assert sizes == [5]

    def test_hexagon_dihedral(self) -> None:
        g, sizes = polygon_flip_quotient(6, "dihedral")
        assert sorted(sizes) == [2, 6, 6]
        assert (g.n, g.m) == (3, 2)

    def test_hexagon_cyclic_splits_the_chiral_orbit(self) -> None:
        g, sizes = polygon_flip_quotient(6, "cyclic")
        assert g.n == 4
        assert sorted(sizes) == [2, 3, 3, 6]

    @pytest.mark.parametrize("k", [7, 8, 9])
    @pytest.mark.parametrize("group", ["cyclic", "dihedral"])
    def test_orbit_sizes_cover_every_triangulation(self, k: int, group: str) -> None:
        g, sizes = polygon_flip_quotient(k, group)
        assert sum(sizes) == catalan_count(k)
        assert len(sizes) == g.n
        limit = k if group == "cyclic" else 2 * k
        assert all(limit % size == 0 for size in sizes)

    @pytest.mark.parametrize("relabel", [1, 3, 5])
    def test_independent_of_vertex_labelling(self, relabel: int) -> None:
        base, base_sizes = polygon_flip_quotient(8, "dihedral")
        moved, moved_sizes = polygon_flip_quotient(8, "dihedral", relabel=relabel)
        assert moved_sizes == base_sizes
        assert np.array_equal(moved.edge_array(), base.edge_array())

    def test_unknown_group(self) -> None:
        with pytest.raises(InvalidInputError):
            polygon_flip_quotient(7, "affine")
