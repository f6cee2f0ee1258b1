from hyperpurify.schedule.adaptive import ADAPTIVE_PRESETS, AdaptiveConfig, AdaptiveController, AdaptiveTrajectory, adaptive_run
from hyperpurify.schedule.runner import (
    ConvergenceMonitor,
    ConvergenceSettings,
    SequenceCursor,
    Trajectory,
    TrajectoryPoint,
    Verdict,
    drive,
    purify_until,
    run_sequence,
)
from hyperpurify.schedule.sequence import BASELINE_SEQUENCE, Sequence, full_space, triple_permutation_space
from hyperpurify.schedule.threshold import (
    TrailPoint,
    SearchEntry,
    ThresholdResult,
    candidate_space,
    find_threshold,
    is_purifiable,
    search_sequences,
)
from hyperpurify.schedule.yields import (
    Cohort,
    CohortPipeline,
    RecycleComparison,
    YieldLedger,
    YieldRound,
    recycle_compare,
    recycle_compare_one,
    yield_estimate,
)

__all__ = [
    "ADAPTIVE_PRESETS",
    "BASELINE_SEQUENCE",
    "AdaptiveConfig",
    "AdaptiveController",
    "AdaptiveTrajectory",
    "Cohort",
    "CohortPipeline",
    "ConvergenceMonitor",
    "ConvergenceSettings",
    "TrailPoint",
    "RecycleComparison",
    "SearchEntry",
    "Sequence",
    "SequenceCursor",
    "ThresholdResult",
    "Trajectory",
    "TrajectoryPoint",
    "Verdict",
    "YieldLedger",
    "YieldRound",
    "adaptive_run",
    "candidate_space",
    "drive",
    "find_threshold",
    "full_space",
    "is_purifiable",
    "purify_until",
    "recycle_compare",
    "recycle_compare_one",
    "run_sequence",
    "search_sequences",
    "triple_permutation_space",
    "yield_estimate",
]
