"""Exceptions shared across the package."""


class SizeLimitError(ValueError):
    """Raised when an exhaustive reference would exceed its combinatorial budget."""


class DegenerateEmbeddingError(ValueError):
    """Raised when no eigenvalue of the centered matrix clears the retention tolerance."""
