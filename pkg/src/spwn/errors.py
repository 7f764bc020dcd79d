"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NotInvertibleError(DomainError):
    """The requested map has no inverse for the given parameters."""


class DegenerateSeriesError(ValueError):
    """A statistic is undefined for the series (constant or all-zero data)."""
