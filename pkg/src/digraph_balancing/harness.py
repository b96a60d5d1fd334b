"""Experiment orchestration: single/batch runs, the consensus demo, and
summary persistence.

Config files are plain ``key = value`` lines ('#' comments allowed):

    graph.n = 50          # generator node count (or graph.file = path)
    graph.p = 0.2         # generator extra-edge probability
    graph.seed = 7        # master seed; per-rep seeds derive from it
    reps = 100
    algo = algo1(beta=0.5) baseline
    stop.tol = 1e-6
    stop.max_rounds = 100000
    out_dir = results

``algo`` holds whitespace-separated entries ``algo1(...)``, ``algo2(...)``,
``baseline``; arguments default to the top-level ``beta`` / ``alpha`` /
``mode`` / ``m`` keys when omitted.
"""

from __future__ import annotations

import csv
import os
import re
from dataclasses import dataclass, field

import numpy as np

from .balancer import BalancerParams, run_algo1
from .baseline import run_imbalance_correcting
from .bistochastic import BistochasticParams, _round_values, init_bistochastic_weights, init_prop3_weights, run_algo2
from .graph import Digraph, parse_edge_list, random_strongly_connected
from .metrics import WeightState
from .trace import RunTrace, StopRule, save_trace
from .validation import require_strongly_connected


class ConfigError(ValueError):
    """Raised for unreadable or inconsistent experiment configs."""


@dataclass(frozen=True)
class AlgoSpec:
    """One algorithm cell of a batch: name plus its parameters."""

    name: str  # algo1 | algo2 | baseline
    beta: float | None = None
    alpha: float | None = None
    mode: str = "standard"
    m: int | None = None

    @property
    def label(self) -> str:
        if self.name == "algo1":
            return f"algo1(beta={self.beta:g})"
        if self.name == "algo2":
            suffix = f",mode={self.mode}" if self.mode != "standard" else ""
            return f"algo2(alpha={self.alpha:g}{suffix})"
        return "baseline"

    @property
    def metric(self) -> str:
        return "ab" if self.name == "algo2" else "epsilon"


@dataclass
class ExperimentConfig:
    graph_file: str | None = None
    n: int | None = None
    p: float = 0.2
    seed: int = 0
    reps: int = 1
    algos: list[AlgoSpec] = field(default_factory=list)
    stop: StopRule = StopRule()
    out_dir: str = "."


@dataclass
class ExperimentSummary:
    labels: list[str]
    mean: np.ndarray  # (rounds, n_algos) mean metric per round
    median: np.ndarray
    trace_paths: list[str]
    errors: list[str]
    summary_path: str


_ALGO_RE = re.compile(r"^(algo1|algo2|baseline)(?:\(([^)]*)\))?$")


def _parse_algo_entry(entry: str, defaults: dict[str, str]) -> AlgoSpec:
    match = _ALGO_RE.match(entry)
    if not match:
        raise ConfigError(f"unparseable algo entry {entry!r}")
    name, argstr = match.group(1), match.group(2) or ""
    args = dict(defaults)
    for part in filter(None, (p.strip() for p in argstr.split(","))):
        if "=" not in part:
            raise ConfigError(f"bad algo argument {part!r} in {entry!r}")
        key, _, value = part.partition("=")
        args[key.strip()] = value.strip()
    if name == "algo1":
        return AlgoSpec(name, beta=float(args.get("beta", 0.5)))
    if name == "algo2":
        m = args.get("m")
        return AlgoSpec(name, alpha=float(args.get("alpha", 0.5)),
                        mode=args.get("mode", "standard"),
                        m=None if m is None else int(m))
    return AlgoSpec(name)


def parse_config(text: str) -> ExperimentConfig:
    """Parse the key-value config format into an :class:`ExperimentConfig`."""
    kv: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = line.partition("=")
        kv[key.strip()] = value.strip()

    cfg = ExperimentConfig()
    try:
        if "graph.file" in kv:
            cfg.graph_file = kv["graph.file"]
        if "graph.n" in kv:
            cfg.n = int(kv["graph.n"])
        if "graph.p" in kv:
            cfg.p = float(kv["graph.p"])
        if "graph.seed" in kv:
            cfg.seed = int(kv["graph.seed"])
        if "reps" in kv:
            cfg.reps = int(kv["reps"])
        cfg.stop = StopRule(
            tol=float(kv.get("stop.tol", StopRule.tol)),
            max_rounds=int(kv.get("stop.max_rounds", StopRule.max_rounds)),
        )
        cfg.out_dir = kv.get("out_dir", ".")
        defaults = {k: kv[k] for k in ("beta", "alpha", "mode", "m") if k in kv}
        cfg.algos = [_parse_algo_entry(e, defaults) for e in kv.get("algo", "").split()]
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config value: {exc}") from exc
    if cfg.graph_file is None and cfg.n is None:
        raise ConfigError("config needs graph.file or graph.n")
    if not cfg.algos:
        raise ConfigError("config names no algorithms (key 'algo')")
    return cfg


def load_config(path: str) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config(fh.read())


def rep_seed(master: int, rep: int) -> int:
    """Deterministic per-repetition seed derived from the master seed."""
    return int(np.random.SeedSequence([master, rep]).generate_state(1)[0])


def _run_one(g: Digraph, spec: AlgoSpec, stop: StopRule) -> RunTrace:
    if spec.name == "algo1":
        _, trace = run_algo1(g, BalancerParams(beta=spec.beta), stop)
    elif spec.name == "algo2":
        _, trace = run_algo2(g, BistochasticParams(alpha=spec.alpha, mode=spec.mode, m=spec.m), stop)
    else:
        _, trace = run_imbalance_correcting(g, stop)
    return trace


def run_experiment(config: ExperimentConfig) -> ExperimentSummary:
    """Execute every (repetition, algorithm) cell and persist the results.

    Writes one trace CSV per run plus ``summary.csv`` holding the mean
    metric per round for each algorithm; runs that finish early are
    padded with their final value. Per-run failures are recorded in the
    summary, not fatal to the batch.
    """
    os.makedirs(config.out_dir, exist_ok=True)
    labels = [spec.label for spec in config.algos]
    per_algo: list[list[list[float]]] = [[] for _ in config.algos]
    trace_paths: list[str] = []
    errors: list[str] = []

    for rep in range(config.reps):
        if config.graph_file is not None:
            with open(config.graph_file) as fh:
                g = parse_edge_list(fh.read())
        else:
            g = random_strongly_connected(config.n, config.p, rep_seed(config.seed, rep))
        for ai, spec in enumerate(config.algos):
            try:
                trace = _run_one(g, spec, config.stop)
            except Exception as exc:  # per-run failure must not kill the batch
                errors.append(f"rep {rep} {spec.label}: {exc}")
                continue
            path = os.path.join(config.out_dir, f"{spec.label}_rep{rep:03d}.csv")
            save_trace(trace, path)
            trace_paths.append(path)
            series = trace.ab if spec.metric == "ab" else trace.epsilon
            per_algo[ai].append(list(series))

    depth = max((len(s) for series in per_algo for s in series), default=0)
    mean = np.full((depth, len(labels)), np.nan)
    median = np.full((depth, len(labels)), np.nan)
    for ai, series in enumerate(per_algo):
        if not series:
            continue
        padded = np.array([s + [s[-1]] * (depth - len(s)) for s in series])
        mean[:, ai] = padded.mean(axis=0)
        median[:, ai] = np.median(padded, axis=0)

    summary_path = os.path.join(config.out_dir, "summary.csv")
    with open(summary_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["round"] + labels)
        for k in range(depth):
            writer.writerow([k] + [repr(float(v)) for v in mean[k]])
    return ExperimentSummary(labels=labels, mean=mean, median=median,
                             trace_paths=trace_paths, errors=errors,
                             summary_path=summary_path)


def consensus_run(
    g: Digraph,
    params: BistochasticParams,
    x0,
    stop: StopRule = StopRule(),
) -> np.ndarray:
    """Average consensus driven by the evolving column-stochastic matrix.

    Each round applies x <- W[k] x with the current weight matrix (edge
    weights plus self-weights), then advances the weight adaptation one
    round. Returns the (rounds+1, n) trajectory; the value sum is
    conserved every round because every W[k] is column stochastic.
    """
    alpha = params.alpha_vector(g.n)
    m = params.resolve_m(g.n)
    require_strongly_connected(g)
    x = np.asarray(x0, dtype=float).copy()
    if x.shape != (g.n,):
        raise ValueError(f"x0 must have length {g.n}")
    init = init_prop3_weights(g, m) if params.mode == "prop3" else init_bistochastic_weights(g)
    a = g.adjacency()
    dplus = g.out_degrees.astype(float)
    values = init.node_values(g)
    self_w = init.self_weights.copy()
    target = float(x.mean())
    trajectory = [x.copy()]
    for _ in range(stop.max_rounds):
        if float(np.abs(x - target).max()) <= stop.tol:
            break
        x = self_w * x + a @ (values * x)
        values, self_w, _ = _round_values(values, a, dplus, alpha, params.mode)
        trajectory.append(x.copy())
    return np.array(trajectory)
