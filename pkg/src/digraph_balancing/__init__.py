"""Distributed weight balancing and bistochastic matrix formation on
strongly connected digraphs, with spectral convergence-rate prediction."""

from .balancer import BalancerParams, WeightBalancer, algo1_round, init_unit_weights, run_algo1
from .baseline import (
    ImbalanceCorrectingBalancer,
    imbalance_correcting_round,
    run_imbalance_correcting,
)
from .bistochastic import (
    BistochasticBalancer,
    BistochasticParams,
    ColumnStochasticityError,
    algo2_round,
    init_bistochastic_weights,
    init_prop3_weights,
    run_algo2,
    select_beta,
)
from .graph import (
    Digraph,
    GraphError,
    format_edge_list,
    is_strongly_connected,
    parse_edge_list,
    random_strongly_connected,
)
from .harness import (
    AlgoSpec,
    ConfigError,
    ExperimentConfig,
    ExperimentSummary,
    consensus_run,
    load_config,
    parse_config,
    run_experiment,
)
from .metrics import (
    WeightState,
    absolute_balance,
    bistochastic_gap,
    imbalance,
    imbalance_vector,
    in_weight,
    out_weight,
    total_mass,
    unit_weights,
)
from .spectral import (
    SpectralReport,
    UpdateMatrix,
    build_update_matrix,
    convergence_rate,
    empirical_rate,
    spectrum,
)
from .trace import RunTrace, StopRule, TraceFormatError, load_trace, save_trace
from .validation import as_digraph

__version__ = "0.1.0"

__all__ = [
    "AlgoSpec",
    "BalancerParams",
    "BistochasticBalancer",
    "BistochasticParams",
    "ColumnStochasticityError",
    "ConfigError",
    "Digraph",
    "ExperimentConfig",
    "ExperimentSummary",
    "GraphError",
    "ImbalanceCorrectingBalancer",
    "RunTrace",
    "SpectralReport",
    "StopRule",
    "TraceFormatError",
    "UpdateMatrix",
    "WeightBalancer",
    "WeightState",
    "absolute_balance",
    "algo1_round",
    "algo2_round",
    "as_digraph",
    "bistochastic_gap",
    "build_update_matrix",
    "consensus_run",
    "convergence_rate",
    "empirical_rate",
    "format_edge_list",
    "imbalance",
    "imbalance_correcting_round",
    "imbalance_vector",
    "in_weight",
    "init_bistochastic_weights",
    "init_prop3_weights",
    "init_unit_weights",
    "is_strongly_connected",
    "load_config",
    "load_trace",
    "out_weight",
    "parse_config",
    "parse_edge_list",
    "random_strongly_connected",
    "run_algo1",
    "run_algo2",
    "run_experiment",
    "run_imbalance_correcting",
    "save_trace",
    "select_beta",
    "spectrum",
    "total_mass",
    "unit_weights",
]
