"""Imbalance-correcting baseline: each node with positive imbalance dumps
all of it onto its cheapest outgoing edge (ties break to the smallest
destination id). Used for round-count comparisons against the balancing
algorithm; note it does not keep per-node uniform out-weights.
"""

from __future__ import annotations

import time

import numpy as np
from sklearn.base import BaseEstimator

from .graph import Digraph
from .metrics import WeightState
from .trace import RunTrace, StopRule
from .validation import as_digraph, require_strongly_connected


def imbalance_correcting_round(g: Digraph, w: WeightState) -> WeightState:
    """One synchronous round of the baseline on a snapshot of the weights."""
    out = w.copy()
    x = np.zeros(g.n)
    for (src, dst), val in w.edge_weights.items():
        x[dst] += val
        x[src] -= val
    for j in range(g.n):
        if x[j] <= 0 or not g.out_neighbors[j]:
            continue
        # out_neighbors is sorted ascending, so min() favors the smallest dst
        best = min(g.out_neighbors[j], key=lambda dst: (w.edge_weights[(j, dst)], dst))
        out.edge_weights[(j, best)] += x[j]
    return out


def run_imbalance_correcting(
    g: Digraph,
    stop: StopRule = StopRule(),
    permissive: bool = False,
) -> tuple[WeightState, RunTrace]:
    """Iterate the baseline from unit weights under the same stop rule as
    the balancing algorithm; the trace records epsilon[k] per round."""
    require_strongly_connected(g, permissive=permissive)
    src = np.array([e[0] for e in g.edges], dtype=np.int64)
    dst = np.array([e[1] for e in g.edges], dtype=np.int64)
    we = np.ones(len(g.edges))
    # padded (n, maxdeg) table of out-edge ids per node, columns ordered by
    # ascending dst so argmin's first-minimum rule implements the tie-break
    eid_of = {e: i for i, e in enumerate(g.edges)}
    maxdeg = max(1, int(g.out_degrees.max()))
    out_eids = np.zeros((g.n, maxdeg), dtype=np.int64)
    pad = np.ones((g.n, maxdeg), dtype=bool)
    for j in range(g.n):
        for col, d in enumerate(g.out_neighbors[j]):
            out_eids[j, col] = eid_of[(j, d)]
            pad[j, col] = False
    trace = RunTrace(algorithm="baseline")
    t0 = time.perf_counter()
    for _ in range(stop.max_rounds + 1):
        s_minus = np.bincount(dst, weights=we, minlength=g.n)
        s_plus = np.bincount(src, weights=we, minlength=g.n)
        x = s_minus - s_plus
        eps = float(np.abs(x).sum())
        trace.epsilon.append(eps)
        if eps <= stop.tol:
            trace.stop_reason = "tolerance"
            trace.converged = True
            break
        if len(trace.epsilon) > stop.max_rounds:
            trace.stop_reason = "round_limit"
            break
        wmat = np.where(pad, np.inf, we[out_eids])
        chosen = out_eids[np.arange(g.n), np.argmin(wmat, axis=1)]
        mask = x > 0
        we[chosen[mask]] += x[mask]
    trace.wall_time = time.perf_counter() - t0
    return WeightState({e: float(we[i]) for i, e in enumerate(g.edges)}), trace


class ImbalanceCorrectingBalancer(BaseEstimator):
    """Estimator wrapper around the imbalance-correcting baseline."""

    def __init__(self, tol=1e-10, max_rounds=100_000, permissive=False):
        self.tol = tol
        self.max_rounds = max_rounds
        self.permissive = permissive

    def fit(self, X, y=None):
        g = as_digraph(X)
        stop = StopRule(tol=self.tol, max_rounds=self.max_rounds)
        self.weights_, self.trace_ = run_imbalance_correcting(g, stop, permissive=self.permissive)
        self.graph_ = g
        self.weight_matrix_ = self.weights_.matrix(g)
        self.n_rounds_ = self.trace_.rounds
        self.converged_ = self.trace_.converged
        return self
