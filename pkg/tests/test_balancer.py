import numpy as np
import pytest

from digraph_balancing import (
    BalancerParams,
    Digraph,
    GraphError,
    StopRule,
    WeightBalancer,
    WeightState,
    algo1_round,
    build_update_matrix,
    init_unit_weights,
    random_strongly_connected,
    run_algo1,
    total_mass,
    unit_weights,
)

W_STAR = np.array([10 / 7, 10 / 7, 5 / 7, 5 / 7])


class TestInit:
    def test_demo4_all_ones(self, demo4):
        w = init_unit_weights(demo4)
        assert len(w.edge_weights) == 5
        assert all(v == 1.0 for v in w.edge_weights.values())
        assert w.self_weights is None

    def test_two_cycle_already_balanced(self, two_cycle):
        _, trace = run_algo1(two_cycle, BalancerParams(beta=0.5))
        assert trace.rounds == 0
        assert trace.epsilon == [0.0]

    def test_uniform_at_start(self, demo4):
        init_unit_weights(demo4).node_values(demo4)  # raises on non-uniformity


class TestRound:
    def test_hand_applied_step(self, demo4):
        nxt = algo1_round(demo4, unit_weights(demo4), BalancerParams(beta=0.5))
        vals = nxt.node_values(demo4)
        assert vals[0] == pytest.approx(1.5)
        assert vals[2] == pytest.approx(0.75)

    def test_balanced_state_is_fixed(self, demo4):
        w = WeightState.from_node_values(demo4, W_STAR)
        nxt = algo1_round(demo4, w, BalancerParams(beta=0.5))
        np.testing.assert_allclose(nxt.node_values(demo4), W_STAR, rtol=0, atol=1e-15)

    def test_matches_dense_update_matrix(self, demo4):
        w = unit_weights(demo4)
        p = build_update_matrix(demo4, 0.5).entries
        nxt = algo1_round(demo4, w, BalancerParams(beta=0.5))
        np.testing.assert_allclose(
            nxt.node_values(demo4), p @ w.node_values(demo4), rtol=0, atol=1e-14
        )

    def test_one_round_oracle_equivalence_random_graphs(self):
        # dense P @ w is the independent oracle for the per-node update
        rng = np.random.default_rng(0)
        for trial in range(100):
            n = int(rng.integers(2, 11))
            g = random_strongly_connected(n, 0.3, trial)
            beta = rng.uniform(0.05, 0.99, n)
            vals = rng.random(n) * 5
            w = WeightState.from_node_values(g, vals)
            nxt = algo1_round(g, w, BalancerParams(beta=beta))
            oracle = build_update_matrix(g, beta).entries @ vals
            assert np.abs(nxt.node_values(g) - oracle).max() <= 1e-13


class TestRun:
    @pytest.mark.parametrize("beta", [0.1, 0.5, 0.9])
    def test_demo4_converges_to_reference_limit(self, demo4, beta):
        w, trace = run_algo1(demo4, BalancerParams(beta=beta))
        assert trace.converged
        np.testing.assert_allclose(w.node_values(demo4), W_STAR, rtol=0, atol=1e-3)

    def test_limit_independent_of_beta(self, demo4):
        limits = [
            run_algo1(demo4, BalancerParams(beta=b))[0].node_values(demo4)
            for b in (0.1, 0.5, 0.9)
        ]
        assert np.abs(limits[0] - limits[1]).max() < 1e-6
        assert np.abs(limits[1] - limits[2]).max() < 1e-6

    def test_round_limit_is_not_an_error(self, demo4):
        _, trace = run_algo1(demo4, BalancerParams(beta=0.5), StopRule(tol=0.0, max_rounds=5))
        assert not trace.converged
        assert trace.stop_reason == "round_limit"
        assert trace.rounds == 5

    def test_rejects_non_strongly_connected(self):
        g = Digraph.from_edges(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
        # strongly connected, fine
        run_algo1(g, BalancerParams(beta=0.5), StopRule(max_rounds=10))
        bad = Digraph.from_edges(3, [(0, 1), (1, 0), (2, 0), (0, 2), (1, 2)])
        run_algo1(bad, BalancerParams(beta=0.5), StopRule(max_rounds=10))
        one_way = Digraph.from_edges(3, [(0, 1), (1, 2), (2, 1), (1, 0), (2, 0)])
        run_algo1(one_way, BalancerParams(beta=0.5), StopRule(max_rounds=10))
        not_sc = Digraph.from_edges(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
        with pytest.raises(GraphError, match="strongly connected"):
            run_algo1(not_sc, BalancerParams(beta=0.5))
        # permissive: a collection of strongly connected digraphs still balances
        w, trace = run_algo1(not_sc, BalancerParams(beta=0.5, validation="permissive"))
        assert trace.converged

    def test_counterexample_all_beta_one_does_not_converge(self, periodic4):
        params = BalancerParams(beta=1.0, validation="permissive")
        _, trace = run_algo1(periodic4, params, StopRule(max_rounds=10_000))
        assert not trace.converged
        assert min(trace.epsilon) > 0.1

    def test_counterexample_repaired_by_one_small_beta(self, periodic4):
        beta = np.array([0.9, 1.0, 1.0, 1.0])
        _, trace = run_algo1(periodic4, BalancerParams(beta=beta), StopRule(max_rounds=10_000))
        assert trace.converged


class TestRunInvariants:
    def test_uniformity_positivity_and_mass(self, demo4):
        beta = np.array([0.3, 0.5, 0.7, 0.9])
        _, trace = run_algo1(demo4, BalancerParams(beta=beta), record_weights=True)
        masses = []
        for vals in trace.weight_history:
            assert np.all(vals > 0)
            w = WeightState.from_node_values(demo4, vals)
            masses.append(total_mass(demo4, w, beta))
        masses = np.array(masses)
        assert np.abs(masses - masses[0]).max() / masses[0] <= 1e-12

    def test_round_preserves_uniformity_exactly(self, demo4):
        w = unit_weights(demo4)
        for _ in range(5):
            w = algo1_round(demo4, w, BalancerParams(beta=0.7))
            vals = w.node_values(demo4)  # raises if non-uniform
            for (src, _dst), val in w.edge_weights.items():
                assert val == vals[src]


class TestParams:
    def test_beta_bounds(self, demo4):
        with pytest.raises(ValueError):
            BalancerParams(beta=0.0).beta_vector(4)
        with pytest.raises(ValueError):
            BalancerParams(beta=1.5).beta_vector(4)

    def test_all_ones_needs_permissive(self):
        with pytest.raises(ValueError, match="at least one"):
            BalancerParams(beta=1.0).beta_vector(4)
        BalancerParams(beta=1.0, validation="permissive").beta_vector(4)

    def test_strict_rejects_beta_equal_one(self):
        beta = np.array([0.5, 1.0, 0.5, 0.5])
        BalancerParams(beta=beta).beta_vector(4)
        with pytest.raises(ValueError, match="strict"):
            BalancerParams(beta=beta, validation="strict").beta_vector(4)


class TestEstimator:
    def test_fit_on_digraph(self, demo4):
        est = WeightBalancer(beta=0.5).fit(demo4)
        assert est.converged_
        np.testing.assert_allclose(
            est.weights_.node_values(demo4), W_STAR, rtol=0, atol=1e-3
        )
        assert est.weight_matrix_.shape == (4, 4)

    def test_fit_on_adjacency_matrix(self, demo4):
        est = WeightBalancer(beta=0.5).fit(demo4.adjacency())
        assert est.converged_

    def test_get_params_roundtrip(self):
        est = WeightBalancer(beta=0.3, tol=1e-8)
        params = est.get_params()
        assert params["beta"] == 0.3
        clone = WeightBalancer(**params)
        assert clone.get_params() == params
