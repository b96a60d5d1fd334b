"""Input validation helpers shared by the estimators and the functional API."""

from __future__ import annotations

from typing import Any

import numpy as np

from .graph import Digraph, GraphError, is_strongly_connected


def as_digraph(X: Any) -> Digraph:
    """Coerce input to a :class:`Digraph`.

    Accepts a Digraph, or a square 0/1 array-like A where ``A[j, i] != 0``
    means node i transmits to node j (diagonal must be zero).
    """
    if isinstance(X, Digraph):
        return X
    a = np.asarray(X)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise GraphError(f"adjacency input must be a square matrix, got shape {a.shape}")
    if np.any(np.diag(a) != 0):
        raise GraphError("adjacency diagonal must be zero (no self-loops)")
    n = a.shape[0]
    edges = [(int(i), int(j)) for j, i in zip(*np.nonzero(a))]
    return Digraph.from_edges(n, sorted(edges))


def broadcast_param(value: Any, n: int, name: str) -> np.ndarray:
    """Expand a scalar or length-n sequence into a float array of length n."""
    arr = np.asarray(value, dtype=float)
    if arr.ndim == 0:
        arr = np.full(n, float(arr))
    if arr.shape != (n,):
        raise ValueError(f"{name} must be a scalar or a length-{n} sequence, got shape {arr.shape}")
    return arr


def check_beta(beta: np.ndarray, validation: str = "default") -> None:
    """Validate the weight-balancing gains.

    strict: every beta_j in (0, 1).
    default: beta_j in (0, 1] with at least one beta_j < 1 (the primitivity
    repair).
    permissive: beta_j in (0, 1], all-ones allowed (the non-converging
    counterexample configuration).
    """
    if validation not in ("strict", "default", "permissive"):
        raise ValueError(f"unknown validation mode {validation!r}")
    if np.any(beta <= 0) or np.any(beta > 1):
        raise ValueError("beta values must lie in (0, 1]")
    if validation == "strict" and np.any(beta >= 1):
        raise ValueError("strict mode requires beta_j in (0, 1) for every node")
    if validation == "default" and not np.any(beta < 1):
        raise ValueError(
            "at least one beta_j must be < 1 for convergence "
            "(use permissive mode to run all-beta=1 anyway)"
        )


def check_alpha(alpha: np.ndarray) -> None:
    if np.any(alpha <= 0) or np.any(alpha >= 1):
        raise ValueError("alpha values must lie in (0, 1)")


def require_strongly_connected(g: Digraph, permissive: bool = False) -> None:
    """Reject graphs that are not strongly connected unless permissive.

    Nodes without outgoing edges are rejected in either mode: the update
    divides by the out-degree.
    """
    if np.any(g.out_degrees == 0):
        raise GraphError("every node needs at least one outgoing edge")
    if not permissive and not is_strongly_connected(g):
        raise GraphError(
            "graph is not strongly connected (pass permissive mode to run anyway)"
        )
