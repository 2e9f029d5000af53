"""Exception types shared across the package."""


class OverflowLimitError(OverflowError):
    """An input exceeds the supported integer width (or the certified primality range)."""


class SizeLimitError(ValueError):
    """A sequence is longer than the configured subset-sum cap."""


class InvalidCandidateError(ValueError):
    """An operation that requires a sum-distinct candidate received one that is not."""
