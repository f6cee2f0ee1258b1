from hyperpurify.cli.commands import (
    CommandResult,
    cmd_adaptive,
    cmd_recycle_compare,
    cmd_run,
    cmd_search,
    cmd_threshold,
    cmd_verify,
    cmd_yield,
)
from hyperpurify.cli.run_config import AdaptiveSection, NoiseConfig, RunConfig, load_config

__all__ = [
    "AdaptiveSection",
    "CommandResult",
    "NoiseConfig",
    "RunConfig",
    "cmd_adaptive",
    "cmd_recycle_compare",
    "cmd_run",
    "cmd_search",
    "cmd_threshold",
    "cmd_verify",
    "cmd_yield",
    "load_config",
]
