"""Exception types; the CLI maps each to an exit code."""


class ConfigError(ValueError):
    """Invalid experiment or function arguments (exit code 1)."""


class DataError(ValueError):
    """Unreadable or malformed input data (exit code 2)."""


class NoValidClusteringError(RuntimeError):
    """Every candidate labeling had fewer than two clusters (exit code 3)."""


class DegenerateBlockError(ValueError):
    """A block pair has edges but (numerically) zero total weight."""


class InstanceTooLargeError(ValueError):
    """Exhaustive enumeration would exceed the partition budget."""
