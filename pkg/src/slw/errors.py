"""Exception types shared across the package.

The split matters operationally: HypothesisError means the caller handed us an
instance outside an operation's contract, while SearchExhaustedError means the
instance looked fine but the certificate search ran out of candidates. The two
are never conflated because the second is reportable evidence and the first is
caller error.
"""


class SlwError(Exception):
    """Base class for package errors."""


class StructureError(SlwError, ValueError):
    """Malformed combinatorial structure (rotations, twin pairing, cycles)."""


class ParseError(SlwError, ValueError):
    """Unreadable graph or instance file."""


class PartitionUndefinedError(SlwError):
    """A cycle-with-chord partition was requested where some cycle of the
    configuration is noncontractible, so the two-sided partition does not
    exist."""


class OracleSizeError(SlwError):
    """Exact-search guard exceeded (see max_vertices arguments)."""

    def __init__(self, size: int, limit: int, what: str = "instance"):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} has {size} vertices, exceeding the exact-search guard {limit}")


class HypothesisError(SlwError):
    """An operation's stated preconditions are violated by the input.

    `details` carries per-vertex/per-edge diagnostics for reporting.
    """

    def __init__(self, message: str, details=None):
        self.details = details or {}
        super().__init__(message)


class SearchExhaustedError(SlwError):
    """A certificate search ran out of candidates on a hypothesis-satisfying
    instance. Carries the partial trace so the failure is reportable."""

    def __init__(self, message: str, trace=None):
        self.trace = trace or []
        super().__init__(message)
