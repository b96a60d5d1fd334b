import numpy as np
import pytest

from digraph_balancing import (
    Digraph,
    ImbalanceCorrectingBalancer,
    StopRule,
    WeightState,
    absolute_balance,
    imbalance_correcting_round,
    imbalance_vector,
    run_imbalance_correcting,
    unit_weights,
)


class TestRound:
    def test_hand_applied_step(self, demo4):
        nxt = imbalance_correcting_round(demo4, unit_weights(demo4))
        # node 0 has x = +1 and a single out-edge
        assert nxt.edge_weights[(0, 1)] == 2.0
        for e in demo4.edges:
            if e != (0, 1):
                assert nxt.edge_weights[e] == 1.0

    def test_balanced_state_is_fixed(self, two_cycle):
        w = unit_weights(two_cycle)
        nxt = imbalance_correcting_round(two_cycle, w)
        assert nxt.edge_weights == w.edge_weights

    def test_tie_breaks_to_smallest_destination(self):
        # node 0 has two equal-minimum out-edges (to 1 and 2) and x_0 > 0
        g = Digraph.from_edges(3, [(0, 1), (0, 2), (1, 0), (2, 0), (1, 2), (2, 1)])
        w = unit_weights(g)
        w.edge_weights[(1, 0)] = 3.0  # pushes node 0 into surplus
        nxt = imbalance_correcting_round(g, w)
        assert nxt.edge_weights[(0, 1)] > 1.0
        assert nxt.edge_weights[(0, 2)] == 1.0

    def test_imbalances_sum_to_zero_before_and_after(self, demo4):
        w = unit_weights(demo4)
        for _ in range(20):
            assert abs(imbalance_vector(demo4, w).sum()) <= 1e-12
            w = imbalance_correcting_round(demo4, w)
        assert abs(imbalance_vector(demo4, w).sum()) <= 1e-12

    def test_weights_never_decrease(self, demo4):
        w = unit_weights(demo4)
        for _ in range(50):
            nxt = imbalance_correcting_round(demo4, w)
            for e in demo4.edges:
                assert nxt.edge_weights[e] >= w.edge_weights[e]
            w = nxt


class TestRun:
    def test_two_cycle_zero_rounds(self, two_cycle):
        _, trace = run_imbalance_correcting(two_cycle)
        assert trace.rounds == 0
        assert trace.converged

    def test_demo4_converges_to_a_balanced_state(self, demo4):
        w, trace = run_imbalance_correcting(demo4, StopRule(tol=1e-10))
        assert trace.converged
        assert absolute_balance(demo4, w) <= 1e-10

    def test_loop_matches_single_round_op(self, demo4):
        # the vectorized loop must agree with the reference round function
        w_ref = unit_weights(demo4)
        for _ in range(7):
            w_ref = imbalance_correcting_round(demo4, w_ref)
        w_fast, trace = run_imbalance_correcting(demo4, StopRule(tol=0.0, max_rounds=7))
        for e in demo4.edges:
            assert w_fast.edge_weights[e] == pytest.approx(w_ref.edge_weights[e], abs=1e-12)

    def test_epsilon_trace_monotone_toward_zero_overall(self, demo4):
        _, trace = run_imbalance_correcting(demo4, StopRule(tol=1e-8))
        assert trace.epsilon[0] == 2.0
        assert trace.epsilon[-1] <= 1e-8


class TestEstimator:
    def test_fit(self, demo4):
        est = ImbalanceCorrectingBalancer().fit(demo4)
        assert est.converged_
        assert absolute_balance(demo4, est.weights_) <= 1e-10
