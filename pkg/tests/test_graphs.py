import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdist.graphs import (
    EdgeList,
    Graph,
    GraphKind,
    adjacency_indicator,
    edge_list_from_graph,
    gen_binary_tree,
    gen_grid,
    gen_hanoi,
    gen_power_law,
    gen_random_dense,
    gen_weighted_dense,
    graph_from_edge_list,
    infer_kind,
    read_edge_list,
    write_edge_list,
)


def ring(n=3):
    edges = tuple((i, (i + 1) % n, 1.0) for i in range(n))
    return graph_from_edge_list(EdgeList(n, edges), GraphKind.UNWEIGHTED)


class TestGraphConstruction:
    def test_single_edge(self):
        g = graph_from_edge_list(EdgeList(2, ((0, 1, 1.0),)), GraphKind.UNWEIGHTED)
        assert g.weights[1, 0] == 1.0
        assert np.isinf(g.weights).sum() == 3

    def test_empty_edge_list(self):
        g = graph_from_edge_list(EdgeList(3, ()), GraphKind.UNWEIGHTED)
        assert np.all(np.isinf(g.weights))
        assert g.num_edges == 0

    def test_non_integral_weight_rejected(self):
        with pytest.raises(ValueError, match="invalid for kind"):
            graph_from_edge_list(EdgeList(2, ((0, 1, 2.5),)), GraphKind.INTEGER_WEIGHTED)

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            graph_from_edge_list(
                EdgeList(2, ((0, 1, 1.0), (0, 1, 1.0))), GraphKind.UNWEIGHTED
            )

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError, match="out of range"):
            graph_from_edge_list(EdgeList(2, ((0, 2, 1.0),)), GraphKind.UNWEIGHTED)

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="self-loop"):
            graph_from_edge_list(EdgeList(2, ((1, 1, 1.0),)), GraphKind.UNWEIGHTED)

    def test_weights_immutable(self):
        g = ring()
        with pytest.raises(ValueError):
            g.weights[0, 1] = 5.0

    def test_successors_sorted(self):
        g = graph_from_edge_list(
            EdgeList(4, ((0, 3, 1.0), (0, 1, 1.0))), GraphKind.UNWEIGHTED
        )
        assert g.successors(0).tolist() == [1, 3]


class TestAdjacencyIndicator:
    def test_empty(self):
        g = graph_from_edge_list(EdgeList(3, ()), GraphKind.UNWEIGHTED)
        assert np.array_equal(adjacency_indicator(g), np.zeros((3, 3)))

    def test_single_edge(self):
        g = graph_from_edge_list(EdgeList(2, ((0, 1, 1.0),)), GraphKind.UNWEIGHTED)
        a = adjacency_indicator(g)
        assert a[1, 0] == 1.0 and a.sum() == 1.0

    def test_three_cycle_is_permutation_pattern(self):
        a = adjacency_indicator(ring())
        assert a.sum() == 3
        assert np.all(a.sum(axis=0) == 1) and np.all(a.sum(axis=1) == 1)


class TestHanoi:
    def test_one_disk_triangle(self):
        g = gen_hanoi(1)
        assert g.n_vertices == 3
        assert g.num_edges == 6

    @pytest.mark.parametrize("disks,expected", [(1, 3), (2, 9), (3, 27), (4, 81)])
    def test_vertex_count(self, disks, expected):
        assert gen_hanoi(disks).n_vertices == expected

    def test_out_degrees(self):
        g = gen_hanoi(3)
        degs = np.isfinite(g.weights).sum(axis=0)
        assert set(degs.tolist()) == {2, 3}

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            gen_hanoi(0)
        with pytest.raises(ValueError):
            gen_hanoi(9)


class TestGrid:
    def test_single_vertex(self):
        g = gen_grid(1)
        assert g.n_vertices == 1 and g.num_edges == 0

    def test_two_by_two(self):
        g = gen_grid(2)
        assert g.n_vertices == 4 and g.num_edges == 8

    @pytest.mark.parametrize("side", [1, 2, 3, 5])
    def test_edge_count(self, side):
        assert gen_grid(side).num_edges == 2 * 2 * side * (side - 1)


class TestBinaryTree:
    def test_single_level(self):
        g = gen_binary_tree(1)
        assert g.n_vertices == 1 and g.num_edges == 0

    def test_two_levels(self):
        g = gen_binary_tree(2)
        assert g.n_vertices == 3
        assert np.isfinite(g.weights[0, 1]) and np.isfinite(g.weights[0, 2])

    @pytest.mark.parametrize("levels", [1, 3, 5])
    def test_vertex_count(self, levels):
        assert gen_binary_tree(levels).n_vertices == 2**levels - 1


class TestRandomDense:
    def test_complete_at_p_one(self):
        g = gen_random_dense(5, 1.0, 0)
        assert g.num_edges == 20

    def test_edge_count_within_binomial_bounds(self):
        n, p = 100, 0.5
        g = gen_random_dense(n, p, 12345)
        mean = p * n * (n - 1)
        sd = math.sqrt(n * (n - 1) * p * (1 - p))
        assert abs(g.num_edges - mean) < 4 * sd

    def test_deterministic(self):
        a = gen_random_dense(30, 0.4, 7)
        b = gen_random_dense(30, 0.4, 7)
        assert np.array_equal(a.weights, b.weights)


class TestPowerLaw:
    def test_deterministic(self):
        a = gen_power_law(100, 3.0, 5)
        b = gen_power_law(100, 3.0, 5)
        assert np.array_equal(a.weights, b.weights)

    def test_symmetric(self):
        g = gen_power_law(150, 3.0, 2)
        fin = np.isfinite(g.weights)
        assert np.array_equal(fin, fin.T)

    def test_degree_slope(self):
        g = gen_power_law(500, 3.0, 0)
        degs = np.isfinite(g.weights).sum(axis=0)
        ks, counts = np.unique(degs, return_counts=True)
        slope = np.polyfit(np.log(ks), np.log(counts), 1, w=np.sqrt(counts))[0]
        assert -3.8 < slope < -2.2

    def test_connected(self):
        from rdist.oracles import bfs_apsp

        g = gen_power_law(80, 3.0, 11)
        assert np.all(np.isfinite(bfs_apsp(g)))


class TestWeightedDense:
    def test_weights_in_range(self):
        g = gen_weighted_dense(50, 0.5, 1.0, 100.0, 3)
        w = g.weights[np.isfinite(g.weights)]
        assert np.all((w >= 1.0) & (w <= 100.0))

    def test_log_uniform_median(self):
        g = gen_weighted_dense(100, 0.5, 1.0, 100.0, 3)
        w = g.weights[np.isfinite(g.weights)]
        assert abs(np.median(w) - 10.0) < 2.0  # sqrt(1*100) within 20%

    def test_pattern_matches_unweighted_twin(self):
        gw = gen_weighted_dense(40, 0.3, 1.0, 9.0, 8)
        gu = gen_random_dense(40, 0.3, 8)
        assert np.array_equal(np.isfinite(gw.weights), np.isfinite(gu.weights))

    def test_fig2_configuration_shape(self):
        g = gen_weighted_dense(1000, 0.5, 1.0, 100.0, 0)
        assert g.n_vertices == 1000 and g.kind is GraphKind.REAL_WEIGHTED


@pytest.mark.parametrize(
    "make",
    [
        lambda: gen_hanoi(3),
        lambda: gen_grid(4),
        lambda: gen_binary_tree(4),
        lambda: gen_power_law(60, 3.0, 1),
    ],
)
def test_undirected_generators_symmetric(make):
    g = make()
    fin = np.isfinite(g.weights)
    assert np.array_equal(fin, fin.T)
    assert np.all(np.isinf(np.diag(g.weights)))


class TestEdgeListIO:
    def test_round_trip_file(self, tmp_path):
        g = gen_weighted_dense(12, 0.4, 1.0, 50.0, 4)
        path = tmp_path / "g.edges"
        write_edge_list(edge_list_from_graph(g), path)
        back = graph_from_edge_list(read_edge_list(path), GraphKind.REAL_WEIGHTED)
        assert np.array_equal(back.weights, g.weights)

    def test_comments_and_blanks(self, tmp_path):
        path = tmp_path / "g.edges"
        path.write_text("# header comment\nV 2\n\n0 1 1.0  # trailing\n")
        edges = read_edge_list(path)
        assert edges.vertex_count == 2
        assert edges.edges == ((0, 1, 1.0),)

    def test_missing_header(self, tmp_path):
        path = tmp_path / "g.edges"
        path.write_text("0 1 1.0\n")
        with pytest.raises(ValueError):
            read_edge_list(path)

    def test_infer_kind(self):
        assert infer_kind(EdgeList(2, ((0, 1, 1.0),))) is GraphKind.UNWEIGHTED
        assert infer_kind(EdgeList(2, ((0, 1, 3.0),))) is GraphKind.INTEGER_WEIGHTED
        assert infer_kind(EdgeList(2, ((0, 1, 2.5),))) is GraphKind.REAL_WEIGHTED

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(
            st.tuples(
                st.integers(0, 7),
                st.integers(0, 7),
                st.floats(0.5, 100.0, allow_nan=False),
            ),
            max_size=20,
        )
    )
    def test_any_valid_edge_set_round_trips(self, raw):
        dedup = {}
        for s, d, w in raw:
            if s != d:
                dedup[(s, d)] = w
        edges = EdgeList(8, tuple((s, d, w) for (s, d), w in sorted(dedup.items())))
        g = graph_from_edge_list(edges, GraphKind.REAL_WEIGHTED)
        assert edge_list_from_graph(g) == edges
