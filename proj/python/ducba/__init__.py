"""Federated rule-based classification with randomized-response privacy.

The heavy lifting lives in the compiled `_core` extension; this package
re-exports its surface.
"""

from ._core import (  # noqa: F401
    ClientModel,
    Dataset,
    ExperimentConfig,
    MergedModel,
    RRChannel,
    Rule,
    RuleModel,
    bind_wire,
    build_classifier,
    chi_square,
    classify,
    derive_thalach_ratio,
    discretize,
    estimate_true_frequency,
    evaluate,
    inspect,
    load_csv,
    make_dataset,
    merge,
    mine_cars,
    parse_config,
    parse_config_file,
    perturb_dataset,
    roc_auc,
    run_single,
    run_sweep,
    select_features,
    split_partition,
    synthesize_csv,
    to_wire,
    write_synthetic_csv,
)

__all__ = [
    "ClientModel",
    "Dataset",
    "ExperimentConfig",
    "MergedModel",
    "RRChannel",
    "Rule",
    "RuleModel",
    "bind_wire",
    "build_classifier",
    "chi_square",
    "classify",
    "derive_thalach_ratio",
    "discretize",
    "estimate_true_frequency",
    "evaluate",
    "inspect",
    "load_csv",
    "make_dataset",
    "merge",
    "mine_cars",
    "parse_config",
    "parse_config_file",
    "perturb_dataset",
    "roc_auc",
    "run_single",
    "run_sweep",
    "select_features",
    "split_partition",
    "synthesize_csv",
    "to_wire",
    "write_synthetic_csv",
]
