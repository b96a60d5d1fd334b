"""Per-round run records and their CSV persistence."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class StopRule:
    """Stopping criterion: metric <= tol, or the round limit."""

    tol: float = 1e-10
    max_rounds: int = 100_000


@dataclass
class RunTrace:
    """Per-round record of a single algorithm run.

    ``epsilon[k]`` is the absolute balance after k rounds (k = 0 is the
    initial state); ``ab`` is the bistochastic gap, present only for the
    bistochastic algorithm. ``beta_history`` and ``weight_history`` are
    optional snapshots, not persisted to CSV.
    """

    algorithm: str
    epsilon: list[float] = field(default_factory=list)
    ab: Optional[list[float]] = None
    beta_history: Optional[list[np.ndarray]] = None
    weight_history: Optional[list[np.ndarray]] = None
    self_weight_history: Optional[list[np.ndarray]] = None
    stop_reason: str = "round_limit"
    converged: bool = False
    wall_time: float = 0.0

    @property
    def rounds(self) -> int:
        """Number of update rounds executed."""
        return max(len(self.epsilon) - 1, 0)


class TraceFormatError(ValueError):
    """Raised when a trace CSV does not match the expected schema."""


def save_trace(trace: RunTrace, path: str) -> None:
    """Write a trace as CSV: ``round,epsilon,ab`` plus metadata comments."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# algorithm={trace.algorithm}\n")
        fh.write(f"# stop_reason={trace.stop_reason}\n")
        fh.write(f"# converged={int(trace.converged)}\n")
        fh.write(f"# wall_time={trace.wall_time!r}\n")
        writer = csv.writer(fh)
        writer.writerow(["round", "epsilon", "ab"])
        for k, eps in enumerate(trace.epsilon):
            ab = "" if trace.ab is None else repr(trace.ab[k])
            writer.writerow([k, repr(eps), ab])


def load_trace(path: str) -> RunTrace:
    """Load a trace written by :func:`save_trace`."""
    meta: dict[str, str] = {}
    rows: list[list[str]] = []
    with open(path, newline="") as fh:
        for raw in fh:
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line.lstrip("#").strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            rows.append(next(csv.reader([line])))
    if not rows:
        raise TraceFormatError(f"{path}: no header row found")
    header = rows[0]
    for col in ("round", "epsilon", "ab"):
        if col not in header:
            raise TraceFormatError(f"{path}: missing column {col!r}")
    idx = {name: header.index(name) for name in ("round", "epsilon", "ab")}
    epsilon: list[float] = []
    ab: list[float] = []
    has_ab = False
    for row in rows[1:]:
        try:
            k = int(row[idx["round"]])
            eps = float(row[idx["epsilon"]])
        except (ValueError, IndexError) as exc:
            raise TraceFormatError(f"{path}: malformed row {row!r}") from exc
        if k != len(epsilon):
            raise TraceFormatError(f"{path}: non-contiguous round index {k}")
        epsilon.append(eps)
        ab_cell = row[idx["ab"]] if idx["ab"] < len(row) else ""
        if ab_cell != "":
            has_ab = True
            ab.append(float(ab_cell))
        elif has_ab:
            raise TraceFormatError(f"{path}: ab column has a gap at round {k}")
    return RunTrace(
        algorithm=meta.get("algorithm", "unknown"),
        epsilon=epsilon,
        ab=ab if has_ab else None,
        stop_reason=meta.get("stop_reason", "round_limit"),
        converged=bool(int(meta.get("converged", "0"))),
        wall_time=float(meta.get("wall_time", "0.0")),
    )
