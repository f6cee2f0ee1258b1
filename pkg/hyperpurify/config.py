import os

from dotenv import load_dotenv

if os.path.isfile("private.env"):
    load_dotenv("private.env")
if os.path.isfile(".env"):
    load_dotenv(".env")

SERVICE_NAME = os.environ.get("SERVICE_NAME", "hyperpurify")

LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")
LOG_FORMAT = os.environ.get("LOG_FORMAT", "simple")

TRACING_ENABLED = os.environ.get("TRACING_ENABLED", "false").lower() in ("1", "true", "yes")
TRACING_CONSOLE_EXPORT = os.environ.get("TRACING_CONSOLE_EXPORT", "false").lower() in ("1", "true", "yes")

# Dense simulation guard: build_state refuses hypergraphs above this many vertices.
ORACLE_MAX_QUBITS = int(os.environ.get("ORACLE_MAX_QUBITS", "12"))

DEFAULT_WORKERS = int(os.environ.get("DEFAULT_WORKERS", "1"))
