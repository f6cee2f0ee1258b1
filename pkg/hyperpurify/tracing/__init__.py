from hyperpurify.tracing.op import configure_tracing, get_tracer, log_trace_id
from hyperpurify.tracing.registry import TracingConfig, TracingRegistry

__all__ = [
    "configure_tracing",
    "get_tracer",
    "log_trace_id",
    "TracingConfig",
    "TracingRegistry",
]
