from hyperpurify.purify.layout import Layout, layout
from hyperpurify.purify.protocol import (
    BranchTotals,
    Pattern,
    RecycleBranch,
    SubprotocolResult,
    branch_totals,
    corrections_for,
    minus_one_probability,
    reduction_pattern_probabilities,
    subprotocol_keep,
    subprotocol_keep_or_none,
    subprotocol_recycle,
)

__all__ = [
    "BranchTotals",
    "Layout",
    "Pattern",
    "RecycleBranch",
    "SubprotocolResult",
    "branch_totals",
    "corrections_for",
    "layout",
    "minus_one_probability",
    "reduction_pattern_probabilities",
    "subprotocol_keep",
    "subprotocol_keep_or_none",
    "subprotocol_recycle",
]
