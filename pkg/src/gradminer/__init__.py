"""Gradual pattern mining: exact level-wise and closed-set miners, ant-colony and evolutionary heuristics."""
from .aco import AcoConfig, mine_aco_graank, mine_aco_paraminer
from .bench import ExperimentSpec, Report, emit_report, parse_report, run_algorithm, run_experiments
from .core import (
    DatasetError,
    GradualItem,
    GradualPattern,
    NumericDataset,
    OrderMatrix,
    SupportedPattern,
    Variation,
    build_order_matrix,
    canonicalize,
    complement,
    load_csv,
    pattern_support,
)
from .evo import EvoConfig, mine_ga, mine_pso
from .graank import mine_graank
from .paraminer import encode_transactions, mine_paraminer, reduce_dataset
from .result import CandidateLimitError, MiningResult, ResourceLimitError, WorkLimitError

__all__ = [
    "AcoConfig", "mine_aco_graank", "mine_aco_paraminer",
    "ExperimentSpec", "Report", "emit_report", "parse_report", "run_algorithm", "run_experiments",
    "DatasetError", "GradualItem", "GradualPattern", "NumericDataset", "OrderMatrix", "SupportedPattern",
    "Variation", "build_order_matrix", "canonicalize", "complement", "load_csv", "pattern_support",
    "EvoConfig", "mine_ga", "mine_pso", "mine_graank",
    "encode_transactions", "mine_paraminer", "reduce_dataset",
    "CandidateLimitError", "MiningResult", "ResourceLimitError", "WorkLimitError",
]
