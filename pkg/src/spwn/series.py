"""Container for an observed or simulated time series."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class TimeSeries:
    """Ordered finite real observations plus free-form provenance metadata.

    Non-finite values are rejected at construction, so every downstream
    estimator can assume finite data.
    """

    values: np.ndarray
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        arr = np.array(self.values, dtype=np.float64)
        if arr.ndim != 1:
            raise DomainError(f"series must be one-dimensional, got shape {arr.shape}")
        if arr.size == 0:
            raise DomainError("series must contain at least one observation")
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise DomainError(f"non-finite observation {arr[bad[0]]!r} at index {bad[0]}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)


def as_values(xs) -> np.ndarray:
    """Return the observations of `xs` (a TimeSeries or array-like) as a float array."""
    if isinstance(xs, TimeSeries):
        return xs.values
    return TimeSeries(xs).values
