"""Distributed doubly stochastic matrix formation.

A variant of the weight-balancing update whose gain is re-selected each
round so the matrix stays column stochastic (self-weights fill each
column to 1) while it converges to a doubly stochastic limit.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Any

import numpy as np
from sklearn.base import BaseEstimator

from .graph import Digraph
from .metrics import WeightState
from .trace import RunTrace, StopRule
from .validation import as_digraph, broadcast_param, check_alpha, require_strongly_connected


class ColumnStochasticityError(RuntimeError):
    """A self-weight went negative: the column-stochastic invariant broke."""


@dataclass
class BistochasticParams:
    """Per-node gains alpha_j, the gain mode, and the small-init scale m.

    mode "standard" re-selects the gain each round to cap the out-weight
    at 1; mode "prop3" uses the small initialization 1/(m(1+D+)) and keeps
    the gain constant at alpha_j, which makes the iteration linear
    time-invariant (and hence geometric).
    """

    alpha: Any = 0.5
    mode: str = "standard"
    m: int | None = None

    def alpha_vector(self, n: int) -> np.ndarray:
        alpha = broadcast_param(self.alpha, n, "alpha")
        check_alpha(alpha)
        return alpha

    def resolve_m(self, n: int) -> int:
        if self.mode not in ("standard", "prop3"):
            raise ValueError(f"unknown mode {self.mode!r}")
        m = n if self.m is None else self.m
        if self.mode == "prop3" and m < n:
            raise ValueError(f"prop3 mode requires m >= n, got m={m}, n={n}")
        return m


def init_bistochastic_weights(g: Digraph) -> WeightState:
    """Each out-edge of j and the self-weight both get 1/(1+D_j^+).

    Columns sum to exactly 1 at round 0.
    """
    dplus = g.out_degrees
    values = 1.0 / (1.0 + dplus)
    return WeightState.from_node_values(g, values, self_weights=values)


def init_prop3_weights(g: Digraph, m: int) -> WeightState:
    """Small initialization: out-edges get 1/(m(1+D_j^+)), the self-weight
    tops the column up to 1. Guarantees S_j^- < 1 and S_j^+ < 1 initially.
    """
    if m < g.n:
        raise ValueError(f"m must be >= number of nodes ({g.n}), got {m}")
    dplus = g.out_degrees
    values = 1.0 / (m * (1.0 + dplus))
    return WeightState.from_node_values(g, values, self_weights=1.0 - dplus * values)


def select_beta(s_minus: float, s_plus: float, alpha: float) -> float:
    """Round gain: alpha * (1 - S+) / (S- - S+) when S- > S+, else alpha.

    The value may exceed 1; the induced out-weight update
    S+ <- (1 - alpha) S+ + alpha still lands below 1.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError("alpha must lie in (0, 1)")
    if s_minus > s_plus:
        if s_plus >= 1.0:
            raise ValueError(
                f"out-weight {s_plus} >= 1 with positive imbalance: upstream invariant broken"
            )
        return alpha * (1.0 - s_plus) / (s_minus - s_plus)
    return alpha


def _select_beta_vector(s_minus: np.ndarray, s_plus: np.ndarray, alpha: np.ndarray,
                        mode: str) -> np.ndarray:
    if mode == "prop3":
        return alpha.copy()
    beta = alpha.copy()
    grow = s_minus > s_plus
    # S+ < 1 holds exactly in the recursion; allow rounding-level overshoot
    # (S+ can approach 1 in the sustained-growth regime)
    if np.any(grow & (s_plus > 1.0 + 1e-9)):
        raise ColumnStochasticityError("out-weight > 1 with positive imbalance")
    beta[grow] = alpha[grow] * (1.0 - s_plus[grow]) / (s_minus[grow] - s_plus[grow])
    return beta


def _round_values(values: np.ndarray, a: np.ndarray, dplus: np.ndarray,
                  alpha: np.ndarray, mode: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """One synchronous round on the per-node common values.

    Returns (next values, next self-weights, beta used).
    """
    s_minus = a @ values
    s_plus = dplus * values
    beta = _select_beta_vector(s_minus, s_plus, alpha, mode)
    nxt = values + beta * (s_minus / dplus - values)
    self_w = 1.0 - dplus * nxt
    if np.any(self_w < -1e-12):
        raise ColumnStochasticityError(
            f"self-weight went negative (min {self_w.min():.3e}): aborting run"
        )
    return nxt, np.maximum(self_w, 0.0), beta


def algo2_round(g: Digraph, w: WeightState, params: BistochasticParams) -> WeightState:
    """One synchronous round: gain selection, edge update, self-weight refill."""
    alpha = params.alpha_vector(g.n)
    params.resolve_m(g.n)
    values = w.node_values(g)
    nxt, self_w, _ = _round_values(
        values, g.adjacency(), g.out_degrees.astype(float), alpha, params.mode
    )
    return WeightState.from_node_values(g, nxt, self_weights=self_w)


def run_algo2(
    g: Digraph,
    params: BistochasticParams,
    stop: StopRule = StopRule(),
    record_weights: bool = False,
    permissive: bool = False,
) -> tuple[WeightState, RunTrace]:
    """Iterate until the bistochastic gap meets the stop rule.

    The trace records both the gap (ab) and the edge-weight absolute
    balance (epsilon) per round, plus the gain snapshot used each round.
    """
    alpha = params.alpha_vector(g.n)
    m = params.resolve_m(g.n)
    require_strongly_connected(g, permissive=permissive)
    init = init_prop3_weights(g, m) if params.mode == "prop3" else init_bistochastic_weights(g)
    a = g.adjacency()
    dplus = g.out_degrees.astype(float)
    values = init.node_values(g)
    self_w = init.self_weights.copy()
    trace = RunTrace(
        algorithm="bistochastic",
        ab=[],
        beta_history=[],
        weight_history=[] if record_weights else None,
        self_weight_history=[] if record_weights else None,
    )
    t0 = time.perf_counter()
    for _ in range(stop.max_rounds + 1):
        s_minus = a @ values
        s_plus = dplus * values
        trace.epsilon.append(float(np.abs(s_minus - s_plus).sum()))
        ab = float(np.abs(1.0 - (self_w + s_minus)).sum())
        trace.ab.append(ab)
        if record_weights:
            trace.weight_history.append(values.copy())
            trace.self_weight_history.append(self_w.copy())
        if ab <= stop.tol:
            trace.stop_reason = "tolerance"
            trace.converged = True
            break
        if len(trace.ab) > stop.max_rounds:
            trace.stop_reason = "round_limit"
            break
        values, self_w, beta = _round_values(values, a, dplus, alpha, params.mode)
        trace.beta_history.append(beta)
    trace.wall_time = time.perf_counter() - t0
    return WeightState.from_node_values(g, values, self_weights=self_w), trace


class BistochasticBalancer(BaseEstimator):
    """Estimator wrapper around the doubly stochastic formation algorithm.

    Parameters
    ----------
    alpha : float or array-like of shape (n,), default=0.5
        Per-node gain(s) in (0, 1).
    mode : {"standard", "prop3"}, default="standard"
    m : int or None, default=None
        Scale of the prop3 small initialization (defaults to n).
    tol : float, default=1e-10
        Stop once the bistochastic gap drops to tol.
    max_rounds : int, default=100000

    Attributes
    ----------
    weights_ : WeightState
        Final edge weights and self-weights.
    weight_matrix_ : ndarray of shape (n, n)
        Final doubly stochastic (up to tol) matrix, diagonal included.
    trace_ : RunTrace
    n_rounds_ : int
    converged_ : bool
    """

    def __init__(self, alpha=0.5, mode="standard", m=None, tol=1e-10, max_rounds=100_000):
        self.alpha = alpha
        self.mode = mode
        self.m = m
        self.tol = tol
        self.max_rounds = max_rounds

    def fit(self, X, y=None):
        g = as_digraph(X)
        params = BistochasticParams(alpha=self.alpha, mode=self.mode, m=self.m)
        stop = StopRule(tol=self.tol, max_rounds=self.max_rounds)
        self.weights_, self.trace_ = run_algo2(g, params, stop)
        self.graph_ = g
        self.weight_matrix_ = self.weights_.matrix(g)
        self.n_rounds_ = self.trace_.rounds
        self.converged_ = self.trace_.converged
        return self

    def transform(self, x):
        """Apply the converged weight matrix to a value vector."""
        return self.weight_matrix_ @ np.asarray(x, dtype=float)
