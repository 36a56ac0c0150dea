"""Exception types shared across the package."""


class StopforgeError(Exception):
    """Base class for errors raised by stopforge."""


class DataError(StopforgeError, ValueError):
    """Input data failed validation (malformed records, empty lists, bad config values)."""
