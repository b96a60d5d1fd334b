"""Weight states and the imbalance / balance-distance metrics."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .graph import Digraph


@dataclass
class WeightState:
    """Edge weights of a digraph, plus optional per-node self-weights.

    ``edge_weights`` is keyed by ``(src, dst)``; ``self_weights`` is only
    present in bistochastic mode (it holds the diagonal of the weight
    matrix).
    """

    edge_weights: dict[tuple[int, int], float]
    self_weights: np.ndarray | None = None

    def copy(self) -> "WeightState":
        return WeightState(
            dict(self.edge_weights),
            None if self.self_weights is None else self.self_weights.copy(),
        )

    @classmethod
    def from_node_values(
        cls,
        g: Digraph,
        values: np.ndarray,
        self_weights: np.ndarray | None = None,
    ) -> "WeightState":
        """Build a per-node-uniform state: every out-edge of j gets values[j]."""
        ew = {(src, dst): float(values[src]) for src, dst in g.edges}
        sw = None if self_weights is None else np.asarray(self_weights, dtype=float).copy()
        return cls(ew, sw)

    def node_values(self, g: Digraph) -> np.ndarray:
        """Common out-edge weight per node; requires per-node uniformity."""
        vals = np.zeros(g.n)
        for j in range(g.n):
            out = g.out_neighbors[j]
            if not out:
                continue
            w0 = self.edge_weights[(j, out[0])]
            for dst in out[1:]:
                if self.edge_weights[(j, dst)] != w0:
                    raise ValueError(f"node {j} has non-uniform outgoing weights")
            vals[j] = w0
        return vals

    def matrix(self, g: Digraph) -> np.ndarray:
        """Dense weight matrix W with W[dst, src] = weight of edge src->dst."""
        w = np.zeros((g.n, g.n))
        for (src, dst), val in self.edge_weights.items():
            w[dst, src] = val
        if self.self_weights is not None:
            w[np.diag_indices(g.n)] = self.self_weights
        return w


def unit_weights(g: Digraph) -> WeightState:
    """All edge weights 1.0, no self-weights."""
    return WeightState({e: 1.0 for e in g.edges})


def in_weight(g: Digraph, w: WeightState, j: int) -> float:
    """Total in-weight S_j^-: sum of weights on edges into j (self excluded)."""
    return sum(w.edge_weights[(i, j)] for i in g.in_neighbors[j])


def out_weight(g: Digraph, w: WeightState, j: int) -> float:
    """Total out-weight S_j^+: sum of weights on edges out of j (self excluded)."""
    return sum(w.edge_weights[(j, l)] for l in g.out_neighbors[j])


def imbalance(g: Digraph, w: WeightState, j: int) -> float:
    """Weight imbalance x_j = S_j^- - S_j^+."""
    return in_weight(g, w, j) - out_weight(g, w, j)


def imbalance_vector(g: Digraph, w: WeightState) -> np.ndarray:
    x = np.zeros(g.n)
    for (src, dst), val in w.edge_weights.items():
        x[dst] += val
        x[src] -= val
    return x


def absolute_balance(g: Digraph, w: WeightState) -> float:
    """Absolute balance: sum_j |x_j|. Zero iff the state is weight-balanced."""
    return float(np.abs(imbalance_vector(g, w)).sum())


def bistochastic_gap(g: Digraph, w: WeightState) -> float:
    """Distance from a bistochastic matrix: sum_j |1 - (w_jj + S_j^-)|.

    Assumes the state is column stochastic (w_jj + S_j^+ = 1 per node);
    the row-sum deviation then measures distance from doubly stochastic.
    A warning is emitted if column stochasticity is violated beyond 1e-9,
    since the metric's interpretation breaks there.
    """
    if w.self_weights is None:
        raise ValueError("bistochastic_gap requires a state with self-weights")
    col = np.array([w.self_weights[j] + out_weight(g, w, j) for j in range(g.n)])
    viol = float(np.abs(col - 1.0).max())
    if viol > 1e-9:
        warnings.warn(
            f"state is not column stochastic (max |column sum - 1| = {viol:.3e}); "
            "bistochastic gap may not be meaningful",
            stacklevel=2,
        )
    gap = 0.0
    for j in range(g.n):
        gap += abs(1.0 - (w.self_weights[j] + in_weight(g, w, j)))
    return gap


def total_mass(g: Digraph, w: WeightState, beta: np.ndarray) -> float:
    """Invariant mass sum_j (D_j^+ / beta_j) * w_j of the rescaled iteration.

    Requires per-node uniform out-weights (uses each node's common value).
    """
    beta = np.asarray(beta, dtype=float)
    if np.any(beta <= 0):
        raise ValueError("total_mass requires beta_j > 0 for all nodes")
    vals = w.node_values(g)
    return float(np.sum(g.out_degrees / beta * vals))
