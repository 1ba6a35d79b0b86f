"""Shared exception types."""


class LimitExceeded(RuntimeError):
    """A brute-force guard was hit; retry with a smaller grid or higher limit."""
