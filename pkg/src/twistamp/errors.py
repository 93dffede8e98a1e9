"""Shared exception types."""


class SizeLimitError(RuntimeError):
    """An enumeration or table would exceed its configured size cap."""
