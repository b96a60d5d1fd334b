"""Distributed weight balancing with per-node constant gains.

Every node repeatedly nudges the common weight of all its outgoing edges
toward (in-weight / out-degree), which drives the per-node imbalance to
zero geometrically on strongly connected digraphs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from sklearn.base import BaseEstimator

from .graph import Digraph
from .metrics import WeightState, unit_weights
from .trace import RunTrace, StopRule
from .validation import as_digraph, broadcast_param, check_beta, require_strongly_connected


@dataclass
class BalancerParams:
    """Per-node gains beta_j and the validation mode.

    ``validation`` is one of ``strict`` (beta in (0,1)), ``default``
    (beta in (0,1], at least one < 1), ``permissive`` (all-ones allowed,
    non-strongly-connected graphs accepted).
    """

    beta: Any = 0.5
    validation: str = "default"

    def beta_vector(self, n: int) -> np.ndarray:
        beta = broadcast_param(self.beta, n, "beta")
        check_beta(beta, self.validation)
        return beta


def init_unit_weights(g: Digraph) -> WeightState:
    """Initialization: every edge weight set to 1."""
    return unit_weights(g)


def _round_values(values: np.ndarray, a: np.ndarray, dplus: np.ndarray, beta: np.ndarray) -> np.ndarray:
    s_minus = a @ values
    return values + beta * (s_minus / dplus - values)


def algo1_round(g: Digraph, w: WeightState, params: BalancerParams) -> WeightState:
    """One synchronous round of the weight-balancing update.

    All nodes read the same round-k snapshot, then write round k+1:
    w_lj <- w_lj + beta_j * (S_j^- / D_j^+ - w_lj).
    """
    beta = params.beta_vector(g.n)
    values = w.node_values(g)
    nxt = _round_values(values, g.adjacency(), g.out_degrees.astype(float), beta)
    return WeightState.from_node_values(g, nxt)


def run_algo1(
    g: Digraph,
    params: BalancerParams,
    stop: StopRule = StopRule(),
    record_weights: bool = False,
) -> tuple[WeightState, RunTrace]:
    """Iterate the balancing update until the absolute balance meets the
    stop rule or the round limit is hit.

    Returns the final state and the trace of epsilon[k] per round.
    """
    beta = params.beta_vector(g.n)
    require_strongly_connected(g, permissive=params.validation == "permissive")
    a = g.adjacency()
    dplus = g.out_degrees.astype(float)
    values = np.ones(g.n)
    trace = RunTrace(algorithm="balance", weight_history=[] if record_weights else None)
    t0 = time.perf_counter()
    for _ in range(stop.max_rounds + 1):
        s_minus = a @ values
        eps = float(np.abs(s_minus - dplus * values).sum())
        trace.epsilon.append(eps)
        if record_weights:
            trace.weight_history.append(values.copy())
        if eps <= stop.tol:
            trace.stop_reason = "tolerance"
            trace.converged = True
            break
        if len(trace.epsilon) > stop.max_rounds:
            trace.stop_reason = "round_limit"
            break
        values = values + beta * (s_minus / dplus - values)
    trace.wall_time = time.perf_counter() - t0
    return WeightState.from_node_values(g, values), trace


class WeightBalancer(BaseEstimator):
    """Estimator wrapper around the distributed weight-balancing algorithm.

    Parameters
    ----------
    beta : float or array-like of shape (n,), default=0.5
        Per-node gain(s) in (0, 1].
    tol : float, default=1e-10
        Stop once the absolute balance drops to tol.
    max_rounds : int, default=100000
        Round limit.
    validation : {"strict", "default", "permissive"}, default="default"
        Gain/graph validation level; see :class:`BalancerParams`.
    record_weights : bool, default=False
        Keep per-round weight snapshots in the trace.

    Attributes
    ----------
    weights_ : WeightState
        Final edge weights.
    weight_matrix_ : ndarray of shape (n, n)
        Final weight matrix (W[dst, src]).
    trace_ : RunTrace
    n_rounds_ : int
    converged_ : bool
    """

    def __init__(self, beta=0.5, tol=1e-10, max_rounds=100_000,
                 validation="default", record_weights=False):
        self.beta = beta
        self.tol = tol
        self.max_rounds = max_rounds
        self.validation = validation
        self.record_weights = record_weights

    def fit(self, X, y=None):
        g = as_digraph(X)
        params = BalancerParams(beta=self.beta, validation=self.validation)
        stop = StopRule(tol=self.tol, max_rounds=self.max_rounds)
        self.weights_, self.trace_ = run_algo1(g, params, stop, record_weights=self.record_weights)
        self.graph_ = g
        self.weight_matrix_ = self.weights_.matrix(g)
        self.n_rounds_ = self.trace_.rounds
        self.converged_ = self.trace_.converged
        return self
