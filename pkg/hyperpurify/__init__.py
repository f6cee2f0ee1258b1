from hyperpurify.hypergraph import Coloring, EdgeSet, format_hypergraph, parse_hypergraph
from hyperpurify.oracle import DenseState, build_state, subprotocol_dense
from hyperpurify.purify import RecycleBranch, SubprotocolResult, minus_one_probability, subprotocol_keep, subprotocol_recycle
from hyperpurify.schedule import (
    AdaptiveConfig,
    ConvergenceSettings,
    Sequence,
    adaptive_run,
    find_threshold,
    recycle_compare,
    run_sequence,
    search_sequences,
    yield_estimate,
)
from hyperpurify.states import HBState, NoiseSpec, apply_noise, fidelity, from_hbasis, noisy_target, pure_target, to_hbasis

__all__ = [
    "AdaptiveConfig",
    "Coloring",
    "ConvergenceSettings",
    "DenseState",
    "EdgeSet",
    "HBState",
    "NoiseSpec",
    "RecycleBranch",
    "Sequence",
    "SubprotocolResult",
    "adaptive_run",
    "apply_noise",
    "build_state",
    "fidelity",
    "find_threshold",
    "format_hypergraph",
    "from_hbasis",
    "minus_one_probability",
    "noisy_target",
    "parse_hypergraph",
    "pure_target",
    "recycle_compare",
    "run_sequence",
    "search_sequences",
    "subprotocol_dense",
    "subprotocol_keep",
    "subprotocol_recycle",
    "to_hbasis",
    "yield_estimate",
]
