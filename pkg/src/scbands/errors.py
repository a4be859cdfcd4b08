"""Shared exception types."""

__all__ = ["DegenerateVarianceError", "QuantileNoSolutionError"]


class DegenerateVarianceError(ValueError):
    """A pointwise standard deviation needed for studentization is zero."""


class QuantileNoSolutionError(ValueError):
    """The tail equation EEC(u) = alpha/2 has no admissible solution."""
