"""Command-line interface.

Subcommands: balance, bistochastic, baseline, spectral, consensus,
compare, gen. Every subcommand honors --seed for full determinism.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .balancer import BalancerParams, run_algo1
from .baseline import run_imbalance_correcting
from .bistochastic import BistochasticParams, run_algo2
from .graph import Digraph, format_edge_list, parse_edge_list, random_strongly_connected
from .harness import consensus_run, load_config, run_experiment
from .metrics import WeightState, absolute_balance, bistochastic_gap
from .spectral import build_update_matrix, spectrum
from .trace import StopRule, save_trace


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", help="edge-list file (see README for the format)")
    p.add_argument("--n", type=int, help="generator: node count")
    p.add_argument("--p", type=float, default=0.2, help="generator: extra-edge probability (default 0.2)")
    p.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")


def _add_stop_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tol", type=float, default=1e-10, help="stop tolerance (default 1e-10)")
    p.add_argument("--max-rounds", type=int, default=100_000, help="round limit (default 100000)")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trace", help="write the run trace to this CSV path")
    p.add_argument("--precision", choices=["4", "full"], default="4",
                   help="weight print precision (default 4 decimals)")


def _load_graph(args) -> Digraph:
    if args.graph:
        with open(args.graph) as fh:
            return parse_edge_list(fh.read())
    if args.n is None:
        raise SystemExit2("provide --graph FILE or --n N (with optional --p, --seed)")
    return random_strongly_connected(args.n, args.p, args.seed)


def _per_node(args, key: str, n: int):
    if getattr(args, "params", None):
        vals = []
        with open(args.params) as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if line:
                    vals.append(float(line))
        if len(vals) != n:
            raise SystemExit2(f"--params file has {len(vals)} values, graph has {n} nodes")
        return np.array(vals)
    return getattr(args, key)


class SystemExit2(Exception):
    """CLI-level error carrying the one-line diagnostic."""


def _fmt(value: float, precision: str) -> str:
    return f"{value:.4f}" if precision == "4" else repr(float(value))


def _print_weights(g: Digraph, w: WeightState, precision: str) -> None:
    print("src dst weight")
    for src, dst in g.edges:
        print(f"{src} {dst} {_fmt(w.edge_weights[(src, dst)], precision)}")
    if w.self_weights is not None:
        print("node self_weight")
        for j in range(g.n):
            print(f"{j} {_fmt(w.self_weights[j], precision)}")


def _cmd_balance(args) -> int:
    g = _load_graph(args)
    validation = "permissive" if args.permissive else ("strict" if args.strict else "default")
    params = BalancerParams(beta=_per_node(args, "beta", g.n), validation=validation)
    final, trace = run_algo1(g, params, StopRule(args.tol, args.max_rounds))
    if args.trace:
        save_trace(trace, args.trace)
    _print_weights(g, final, args.precision)
    print(f"rounds={trace.rounds} epsilon={absolute_balance(g, final):.6e} "
          f"converged={trace.converged}")
    return 0


def _cmd_bistochastic(args) -> int:
    g = _load_graph(args)
    params = BistochasticParams(alpha=_per_node(args, "alpha", g.n), mode=args.mode, m=args.m)
    final, trace = run_algo2(g, params, StopRule(args.tol, args.max_rounds))
    if args.trace:
        save_trace(trace, args.trace)
    _print_weights(g, final, args.precision)
    print(f"rounds={trace.rounds} ab={bistochastic_gap(g, final):.6e} "
          f"converged={trace.converged}")
    return 0


def _cmd_baseline(args) -> int:
    g = _load_graph(args)
    final, trace = run_imbalance_correcting(g, StopRule(args.tol, args.max_rounds))
    if args.trace:
        save_trace(trace, args.trace)
    _print_weights(g, final, args.precision)
    print(f"rounds={trace.rounds} epsilon={absolute_balance(g, final):.6e} "
          f"converged={trace.converged}")
    return 0


def _cmd_spectral(args) -> int:
    g = _load_graph(args)
    m = build_update_matrix(g, _per_node(args, "beta", g.n))
    report = spectrum(m)
    print("P =")
    for row in m.entries:
        print("  " + " ".join(f"{v:.4f}" for v in row))
    print(f"rho={report.rho:.6f} delta={report.delta:.6f} "
          f"rate={report.rate:.4f} primitive={report.primitive}")
    return 0


def _cmd_consensus(args) -> int:
    g = _load_graph(args)
    if args.x0:
        with open(args.x0) as fh:
            x0 = np.array([float(line.strip()) for line in fh if line.strip()])
    elif args.x0_random:
        x0 = np.random.default_rng(args.seed).random(g.n)
    else:
        raise SystemExit2("provide --x0 FILE or --x0-random")
    params = BistochasticParams(alpha=args.alpha, mode=args.mode, m=args.m)
    traj = consensus_run(g, params, x0, StopRule(args.tol, args.max_rounds))
    final = traj[-1]
    print("node value")
    for j, v in enumerate(final):
        print(f"{j} {_fmt(v, args.precision)}")
    print(f"rounds={len(traj) - 1} mean_x0={x0.mean():.10f} "
          f"max_dev={np.abs(final - x0.mean()).max():.6e}")
    return 0


def _cmd_compare(args) -> int:
    summary = run_experiment(load_config(args.config))
    print(f"summary written to {summary.summary_path} "
          f"({len(summary.trace_paths)} traces, {len(summary.errors)} errors)")
    for err in summary.errors:
        print(f"run error: {err}", file=sys.stderr)
    return 0 if not summary.errors else 1


def _cmd_gen(args) -> int:
    g = random_strongly_connected(args.n, args.p, args.seed)
    text = format_edge_list(g)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="digraph-balance",
        description="Distributed weight balancing and bistochastic matrix formation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("balance", help="run the weight-balancing algorithm")
    _add_graph_args(p)
    p.add_argument("--beta", type=float, default=0.5, help="gain for every node (default 0.5)")
    p.add_argument("--params", help="file with one per-node gain per line")
    p.add_argument("--strict", action="store_true", help="require beta in (0,1) for every node")
    p.add_argument("--permissive", action="store_true",
                   help="allow all-beta=1 and non-strongly-connected graphs")
    _add_stop_args(p)
    _add_output_args(p)
    p.set_defaults(func=_cmd_balance)

    p = sub.add_parser("bistochastic", help="run the doubly stochastic formation algorithm")
    _add_graph_args(p)
    p.add_argument("--alpha", type=float, default=0.5, help="gain for every node (default 0.5)")
    p.add_argument("--params", help="file with one per-node gain per line")
    p.add_argument("--mode", choices=["standard", "prop3"], default="standard")
    p.add_argument("--m", type=int, help="small-init scale for prop3 mode (default n)")
    _add_stop_args(p)
    _add_output_args(p)
    p.set_defaults(func=_cmd_bistochastic)

    p = sub.add_parser("baseline", help="run the imbalance-correcting baseline")
    _add_graph_args(p)
    _add_stop_args(p)
    _add_output_args(p)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("spectral", help="print the update matrix and its rate")
    _add_graph_args(p)
    p.add_argument("--beta", type=float, default=0.5, help="gain for every node (default 0.5)")
    p.add_argument("--params", help="file with one per-node gain per line")
    p.set_defaults(func=_cmd_spectral)

    p = sub.add_parser("consensus", help="average consensus over the adapting matrix")
    _add_graph_args(p)
    p.add_argument("--alpha", type=float, default=0.5, help="gain for every node (default 0.5)")
    p.add_argument("--mode", choices=["standard", "prop3"], default="standard")
    p.add_argument("--m", type=int)
    p.add_argument("--x0", help="file with one initial value per node")
    p.add_argument("--x0-random", action="store_true", help="random initial values (uses --seed)")
    _add_stop_args(p)
    p.add_argument("--precision", choices=["4", "full"], default="4")
    p.set_defaults(func=_cmd_consensus)

    p = sub.add_parser("compare", help="batch comparison from a config file")
    p.add_argument("--config", required=True, help="key-value config file (see README)")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("gen", help="emit a random strongly connected edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=0.2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SystemExit2, OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
