"""Exception types shared across the package."""


class HomcoverError(Exception):
    """Base class for all package-specific errors."""


class ParseError(HomcoverError, ValueError):
    """Malformed graph or cover document."""


class NotConnected(HomcoverError):
    """Operation requires a connected graph."""


class NotTwoEdgeConnected(HomcoverError):
    """Operation requires a bridgeless connected graph."""


class NotSpanningTree(HomcoverError):
    """Edge set is not a maximal spanning tree of the graph."""


class SizeCapExceeded(HomcoverError):
    """Requested object would exceed the configured vertex cap."""


class CapExceeded(HomcoverError):
    """Spanning-tree count exceeds the enumeration cap."""


class NonConstantNe(HomcoverError):
    """Per-edge tree-avoidance counts are not all equal."""


class PathMismatch(HomcoverError):
    """Walk is not contiguous or does not start where required."""


class EndpointMismatch(HomcoverError):
    """Two walks were expected to share both endpoints."""


class LengthMismatch(HomcoverError, ValueError):
    """Chain or label length does not match the expected dimension."""


class NonBinaryCoordinates(HomcoverError, ValueError):
    """Vector has coordinates outside {0, 1/2}."""
