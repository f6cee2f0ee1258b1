"""Exception types raised across hyperpurify."""


class HyperpurifyError(Exception):
    """Base class of every error raised by the library."""


class VertexOutOfRangeError(HyperpurifyError, ValueError):
    def __init__(self, vertex: int, n_vertices: int) -> None:
        super().__init__(f"Vertex {vertex} outside 1..{n_vertices}")
        self.vertex = vertex
        self.n_vertices = n_vertices


class InvalidEdgeError(HyperpurifyError, ValueError):
    pass


class InvalidColoringError(HyperpurifyError, ValueError):
    pass


class HypergraphParseError(HyperpurifyError, ValueError):
    pass


class SequenceParseError(HyperpurifyError, ValueError):
    pass


class DimensionMismatchError(HyperpurifyError, ValueError):
    pass


class ResourceGuardError(HyperpurifyError, ValueError):
    pass


class NoiseParameterError(HyperpurifyError, ValueError):
    pass


class ZeroTraceError(HyperpurifyError, ValueError):
    pass


class ConfigError(HyperpurifyError, ValueError):
    pass


class NonLocalCorrectionError(HyperpurifyError):
    """A P-perp branch left a multi-vertex decoration that local Z gates cannot undo."""


class ImpossibleBranchError(HyperpurifyError):
    """Post-selection on a branch of (numerically) zero probability."""


class NonMonotoneThresholdError(HyperpurifyError):
    pass


class PoolExhaustedError(HyperpurifyError):
    pass


class NotNormalizedError(HyperpurifyError, ValueError):
    """A protocol step received a state whose trace is not one."""
