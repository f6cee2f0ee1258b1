from opentelemetry import trace
from opentelemetry.trace import Span

from hyperpurify import config
from hyperpurify.logger.logger_config import get_logger
from hyperpurify.tracing.registry import TracingConfig, _registry

log = get_logger(__name__)


def configure_tracing() -> None:
    """Configure the tracing system with application settings"""
    if not config.TRACING_ENABLED or _registry.configured:
        return
    _registry.configure(TracingConfig(service_name=config.SERVICE_NAME, console_export=config.TRACING_CONSOLE_EXPORT))
    log.debug("Tracing configured for %s", config.SERVICE_NAME)


def get_tracer(name: str | None = None) -> trace.Tracer:
    """Get a tracer instance from the registry"""
    return _registry.get_tracer(name)


def log_trace_id(span: Span) -> None:
    """Log tracing information"""
    ctx = span.get_span_context()
    log.debug(f"traceID={ctx.trace_id} spanID={ctx.span_id}")
