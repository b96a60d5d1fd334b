"""Directed graph model, edge-list parsing, and random generation.

Edges are stored as ``(src, dst)`` pairs meaning *src transmits to dst*.
Node ids are 0-indexed integers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input or invalid graph parameters."""


@dataclass(frozen=True)
class Digraph:
    """Immutable simple digraph (no self-loops, no parallel edges).

    Attributes
    ----------
    n : int
        Number of nodes, labeled ``0..n-1``.
    edges : tuple of (int, int)
        Directed edges ``(src, dst)``: src transmits to dst.
    out_neighbors : tuple of tuple of int
        ``out_neighbors[j]`` lists the destinations of j's outgoing edges,
        sorted ascending.
    in_neighbors : tuple of tuple of int
        ``in_neighbors[j]`` lists the sources transmitting to j, sorted
        ascending.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    out_neighbors: tuple[tuple[int, ...], ...] = field(repr=False)
    in_neighbors: tuple[tuple[int, ...], ...] = field(repr=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        if n < 2:
            raise GraphError(f"need at least 2 nodes, got n={n}")
        seen: set[tuple[int, int]] = set()
        out_adj: list[list[int]] = [[] for _ in range(n)]
        in_adj: list[list[int]] = [[] for _ in range(n)]
        edge_list: list[tuple[int, int]] = []
        for src, dst in edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise GraphError(f"edge ({src}, {dst}) references a node outside [0, {n})")
            if src == dst:
                raise GraphError(f"self-loop at node {src} is not allowed")
            if (src, dst) in seen:
                raise GraphError(f"duplicate edge ({src}, {dst})")
            seen.add((src, dst))
            edge_list.append((src, dst))
            out_adj[src].append(dst)
            in_adj[dst].append(src)
        return cls(
            n=n,
            edges=tuple(edge_list),
            out_neighbors=tuple(tuple(sorted(a)) for a in out_adj),
            in_neighbors=tuple(tuple(sorted(a)) for a in in_adj),
        )

    @property
    def out_degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.out_neighbors], dtype=np.int64)

    @property
    def in_degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.in_neighbors], dtype=np.int64)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> np.ndarray:
        """0/1 adjacency matrix A with ``A[j, i] = 1`` iff i transmits to j."""
        a = np.zeros((self.n, self.n))
        for src, dst in self.edges:
            a[dst, src] = 1.0
        return a


def parse_edge_list(text: str | Iterable[str]) -> Digraph:
    """Parse the edge-list text format into a :class:`Digraph`.

    Format: the first non-comment line is the node count ``n``; every
    following non-comment line is ``src dst`` (0-indexed, whitespace
    separated). Lines starting with ``#`` are comments; blank lines are
    ignored.
    """
    if isinstance(text, str):
        lines: Iterable[str] = text.splitlines()
    else:
        lines = text
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 1:
                raise GraphError(f"line {lineno}: expected node count, got {line!r}")
            try:
                n = int(parts[0])
            except ValueError:
                raise GraphError(f"line {lineno}: node count is not an integer: {line!r}") from None
            if n < 2:
                raise GraphError(f"line {lineno}: node count must be >= 2, got {n}")
            continue
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'src dst', got {line!r}")
        try:
            src, dst = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer node id in {line!r}") from None
        edges.append((src, dst))
    if n is None:
        raise GraphError("empty input: no node count found")
    try:
        return Digraph.from_edges(n, edges)
    except GraphError as exc:
        raise GraphError(str(exc)) from None


def format_edge_list(g: Digraph) -> str:
    """Render a digraph back into the edge-list text format."""
    lines = [str(g.n)]
    lines.extend(f"{src} {dst}" for src, dst in g.edges)
    return "\n".join(lines) + "\n"


def is_strongly_connected(g: Digraph) -> bool:
    """True iff a directed path joins every ordered pair of nodes.

    Two BFS sweeps from node 0: one along transmit direction, one along
    the reversed edges.
    """

    def reaches_all(neighbors: Sequence[Sequence[int]]) -> bool:
        seen = [False] * g.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in neighbors[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        return count == g.n

    return reaches_all(g.out_neighbors) and reaches_all(g.in_neighbors)


def random_strongly_connected(n: int, extra_edge_prob: float, seed: int) -> Digraph:
    """Seeded random strongly connected digraph.

    Construction: a random Hamiltonian directed cycle over all n nodes
    (guarantees strong connectivity), then each remaining ordered pair
    (i, j), i != j, is added independently with probability
    ``extra_edge_prob``.
    """
    if n < 2:
        raise GraphError(f"need at least 2 nodes, got n={n}")
    if not (0.0 <= extra_edge_prob <= 1.0):
        raise GraphError(f"extra_edge_prob must be in [0, 1], got {extra_edge_prob}")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(n)
    edges = {(int(perm[i]), int(perm[(i + 1) % n])) for i in range(n)}
    draws = rng.random((n, n))
    for i in range(n):
        for j in range(n):
            if i != j and (i, j) not in edges and draws[i, j] < extra_edge_prob:
                edges.add((i, j))
    return Digraph.from_edges(n, sorted(edges))
