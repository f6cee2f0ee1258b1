from .logger_config import (
    ColorFormatter,
    LogFilter,
    SIMPLE_FORMAT,
    DETAILED_FORMAT,
    setup_logging,
    get_logger,
    _supports_color,
)

__all__ = [
    "ColorFormatter",
    "LogFilter",
    "SIMPLE_FORMAT",
    "DETAILED_FORMAT",
    "setup_logging",
    "get_logger",
    "_supports_color",
]
