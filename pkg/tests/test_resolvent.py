import math

import numpy as np
import pytest

from rdist.graphs import (
    EdgeList,
    GraphKind,
    adjacency_indicator,
    gen_binary_tree,
    gen_grid,
    gen_random_dense,
    gen_weighted_dense,
    graph_from_edge_list,
)
from rdist.oracles import bfs_apsp, dijkstra_apsp, max_redundancy
from rdist.resolvent import (
    DELTA_MIN,
    InfeasibleGammaError,
    ResolventSingularError,
    build_x,
    communicability,
    critical_gain,
    gamma_bounds,
    precision_floor,
    r_distance,
    resolvent,
    rounded_r_distance,
    suggest_gamma,
)


def chain2():
    return graph_from_edge_list(EdgeList(2, ((0, 1, 1.0),)), GraphKind.UNWEIGHTED)


def ring3():
    edges = tuple((i, (i + 1) % 3, 1.0) for i in range(3))
    return graph_from_edge_list(EdgeList(3, edges), GraphKind.UNWEIGHTED)


def empty(n):
    return graph_from_edge_list(EdgeList(n, ()), GraphKind.UNWEIGHTED)


def truncated_series(g, gamma, tail_tol=1e-12):
    """Independent oracle: sum powers of X until the next term is negligible."""
    x = build_x(g, gamma)
    total = np.eye(g.n_vertices)
    term = np.eye(g.n_vertices)
    for _ in range(5000):
        term = term @ x
        total += term
        if np.abs(term).max() < tail_tol:
            break
    return total


class TestBuildX:
    def test_no_edge_maps_to_zero(self):
        x = build_x(empty(3), 0.5)
        assert np.array_equal(x, np.zeros((3, 3)))

    def test_unit_weight(self):
        x = build_x(chain2(), 0.1)
        assert x[1, 0] == 0.1

    def test_weight_three(self):
        g = graph_from_edge_list(EdgeList(2, ((0, 1, 3.0),)), GraphKind.INTEGER_WEIGHTED)
        assert build_x(g, 0.1)[1, 0] == pytest.approx(1e-3)

    def test_unweighted_equals_gamma_times_adjacency(self):
        g = gen_random_dense(20, 0.4, 1)
        gamma = 0.013
        assert np.array_equal(build_x(g, gamma), gamma * adjacency_indicator(g))

    @pytest.mark.parametrize("gamma", [0.0, 1.0, -0.2, 1.5])
    def test_gamma_out_of_range(self, gamma):
        with pytest.raises(ValueError):
            build_x(chain2(), gamma)


class TestResolvent:
    def test_empty_graph_gives_identity(self):
        res = resolvent(empty(4), 0.3)
        assert np.array_equal(res.y, np.eye(4))

    def test_two_vertex_chain(self):
        res = resolvent(chain2(), 0.5)
        assert np.allclose(res.y, [[1.0, 0.0], [0.5, 1.0]], atol=1e-15)
        assert not res.health.negative_entries

    def test_three_ring_matches_closed_form(self):
        p = adjacency_indicator(ring3())
        res = resolvent(ring3(), 0.1)
        closed = (np.eye(3) + 0.1 * p + 0.01 * (p @ p)) / (1 - 1e-3)
        assert np.abs(res.y - closed).max() < 1e-12

    @pytest.mark.parametrize(
        "make",
        [lambda: gen_grid(5), lambda: gen_binary_tree(4), lambda: gen_random_dense(30, 0.3, 2)],
    )
    def test_series_equivalence_below_half_critical(self, make):
        g = make()
        gamma = 0.5 * critical_gain(g)
        res = resolvent(g, gamma)
        assert np.abs(res.y - truncated_series(g, gamma)).max() < 1e-9

    def test_singular_at_critical_gain(self):
        # directed ring: gamma_c = 1 and (1 - gamma*P) is exactly singular there
        with pytest.raises(ResolventSingularError) as exc:
            resolvent(ring3(), 1 - 1e-16)
        assert exc.value.gamma == 1 - 1e-16

    def test_residual_reported(self):
        res = resolvent(gen_grid(3), 0.1)
        assert res.health.inversion_residual < 1e-12

    def test_residual_skippable(self):
        res = resolvent(gen_grid(3), 0.1, with_residual=False)
        assert math.isnan(res.health.inversion_residual)

    def test_underflow_zero_accounting(self):
        g = gen_binary_tree(5)
        exact = bfs_apsp(g)
        reachable = np.isfinite(exact) & ~np.eye(g.n_vertices, dtype=bool)
        # gamma far below the precision floor for the diameter: long pairs underflow
        res = resolvent(g, 1e-45, reachable=reachable)
        assert res.health.underflow_zeros > 0
        assert resolvent(g, 0.1, reachable=reachable).health.underflow_zeros == 0

    def test_underflow_unknown_without_mask(self):
        assert resolvent(gen_grid(3), 0.1).health.underflow_zeros is None


class TestRDistance:
    def test_log_identity_exact_power(self):
        from rdist.resolvent import HealthFlags, ResolventResult

        gamma = 0.3
        y = np.array([[1.0, gamma**2], [gamma, 1.0]])
        res = ResolventResult(y, gamma, HealthFlags(False, None, 0.0))
        r = r_distance(res)
        assert r[0, 1] == 2.0 and r[1, 0] == 1.0

    def test_chain_distance_one(self):
        r = r_distance(resolvent(chain2(), 0.5))
        assert r[1, 0] == 1.0

    def test_zero_maps_to_inf(self):
        r = r_distance(resolvent(chain2(), 0.5))
        assert np.isinf(r[0, 1])

    def test_diagonal_forced_zero(self):
        r = r_distance(resolvent(ring3(), 0.2))
        assert np.array_equal(np.diag(r), np.zeros(3))

    def test_raw_diagonal_nonpositive_before_forcing(self):
        res = resolvent(ring3(), 0.2)
        assert np.all(np.diag(res.y) >= 1.0)


class TestRoundedRDistance:
    def test_ceiling_semantics(self):
        assert np.ceil(1.999) == 2.0
        assert np.ceil(2.0 + 1e-15) == 3.0  # documented hazard, counted not patched

    def test_grid4_matches_bfs(self):
        g = gen_grid(4)
        got = rounded_r_distance(resolvent(g, 1e-3))
        assert np.array_equal(got, bfs_apsp(g))

    def test_sentinels_pass_through(self):
        rd = rounded_r_distance(resolvent(chain2(), 0.5))
        assert np.isinf(rd[0, 1]) and rd[1, 0] == 1.0 and rd[0, 0] == 0.0


class TestBracketProperty:
    def test_grid4_strict_brackets(self):
        g = gen_grid(4)
        n_max = max_redundancy(g, 6)
        assert n_max == 20
        gamma = 1.0 / (2 * (n_max + 1))
        raw = r_distance(resolvent(g, gamma))
        exact = bfs_apsp(g)
        off = ~np.eye(16, dtype=bool)
        assert np.all(raw[off] > exact[off] - 1)
        assert np.all(raw[off] < exact[off])


class TestCriticalGain:
    def test_complete_graph_11(self):
        g = gen_random_dense(11, 1.0, 0)
        assert critical_gain(g) == pytest.approx(0.1, abs=1e-7)

    def test_directed_ring(self):
        assert critical_gain(ring3()) == pytest.approx(1.0, abs=1e-9)

    def test_directed_path_acyclic(self):
        g = graph_from_edge_list(
            EdgeList(3, ((0, 1, 1.0), (1, 2, 1.0))), GraphKind.UNWEIGHTED
        )
        assert critical_gain(g) == math.inf


class TestPrecisionFloor:
    def test_smallest_subnormal(self):
        assert DELTA_MIN == 5e-324
        assert precision_floor(1) == DELTA_MIN

    def test_boundary_at_distance_323(self):
        # with gamma_c ~ 0.1 the feasibility limit sits between 323 and 324
        assert precision_floor(323) < 0.1
        assert precision_floor(324) >= 0.1

    def test_monotone_towards_one(self):
        floors = [precision_floor(d) for d in (1, 10, 100, 1000, 100000)]
        assert all(a < b for a, b in zip(floors, floors[1:]))
        assert floors[-1] < 1.0

    def test_invalid_dmax(self):
        with pytest.raises(ValueError):
            precision_floor(0)


class TestGammaBounds:
    def test_feasible_at_dmax_100(self):
        g = gen_random_dense(11, 1.0, 0)  # gamma_c ~ 0.1
        b = gamma_bounds(g, 100)
        assert b.feasible and b.precision_floor_for_dmax < b.critical_gain

    def test_infeasible_at_dmax_400(self):
        g = gen_random_dense(11, 1.0, 0)
        b = gamma_bounds(g, 400)
        assert not b.feasible
        assert b.max_feasible_distance < 400

    def test_acyclic_always_feasible(self):
        g = graph_from_edge_list(EdgeList(2, ((0, 1, 1.0),)), GraphKind.UNWEIGHTED)
        b = gamma_bounds(g, 10**6)
        assert b.feasible and b.max_feasible_distance == math.inf


class TestSuggestGamma:
    def test_paper_style_default(self):
        g = gen_random_dense(11, 1.0, 0)  # gamma_c ~ 0.1
        gamma = suggest_gamma(gamma_bounds(g, 50))
        assert gamma == pytest.approx(1e-3, rel=1e-4)

    def test_floor_clamp_wins(self):
        from rdist.resolvent import GammaBounds

        b = GammaBounds(0.1, 0.05, 300, True)
        assert suggest_gamma(b, 0.01) == pytest.approx(0.5)

    def test_infeasible_raises(self):
        from rdist.resolvent import GammaBounds

        with pytest.raises(InfeasibleGammaError):
            suggest_gamma(GammaBounds(0.1, 0.2, 500, False))

    def test_acyclic_result_stays_below_one(self):
        g = graph_from_edge_list(EdgeList(2, ((0, 1, 1.0),)), GraphKind.UNWEIGHTED)
        gamma = suggest_gamma(gamma_bounds(g, 1))
        assert 0 < gamma < 1


class TestCommunicability:
    def test_empty_graph(self):
        assert communicability(resolvent(empty(5), 0.4)) == 5.0

    def test_chain(self):
        # sum of [[1, 0], [0.5, 1]]
        assert communicability(resolvent(chain2(), 0.5)) == pytest.approx(2.5)

    def test_matches_distance_sum_on_tree(self):
        g = gen_binary_tree(5)
        gamma = 0.01 * critical_gain(g)
        total = communicability(resolvent(g, gamma))
        d = bfs_apsp(g)
        expected = np.power(gamma, d[np.isfinite(d)]).sum()
        assert total == pytest.approx(expected, rel=0.01)

    def test_unhealthy_rejected(self):
        g = gen_random_dense(12, 0.5, 0)
        gamma = min(1.9 * critical_gain(g), 0.95)
        try:
            res = resolvent(g, gamma)
        except ResolventSingularError:
            pytest.skip("inversion collapsed outright at this seed")
        assert res.health.negative_entries
        with pytest.raises(ValueError):
            communicability(res)


class TestZeroGammaLimit:
    def test_weighted_errors_shrink_monotonically(self):
        g = gen_weighted_dense(50, 0.5, 1.0, 10.0, 3)
        exact = dijkstra_apsp(g)
        off = ~np.eye(50, dtype=bool)
        errs = []
        for gamma in (1e-4, 1e-6, 1e-8):
            raw = r_distance(resolvent(g, gamma))
            m = off & np.isfinite(exact) & np.isfinite(raw)
            errs.append((np.abs(raw[m] - exact[m]) / exact[m]).max())
        assert errs[0] > errs[1] > errs[2]
