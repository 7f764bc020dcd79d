"""Signed power transform and the asymmetric power family.

The family is

    f_c(x) = |x|**lam       for x > 0
             0              for x = 0
             c * |x|**lam   for x < 0

with ``c = -1`` giving the signed power ``sign(x) * |x|**lam``.  Every map
here works elementwise on scalars and numpy arrays alike; scalar input
returns a Python float.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NotInvertibleError
from .series import TimeSeries, as_values


@dataclass(frozen=True)
class PowerParams:
    """Exponent and negative-branch coefficient of the power map.

    ``lam = 0`` is the sign-function limit.  ``c = 0`` is allowed but the
    resulting map is not one-to-one.
    """

    lam: float
    c: float = -1.0

    def __post_init__(self):
        _check_lambda(self.lam)
        if not math.isfinite(self.c):
            raise DomainError(f"c must be finite, got {self.c!r}")

    @property
    def invertible(self) -> bool:
        return self.lam > 0 and self.c < 0

    @property
    def is_signed_power(self) -> bool:
        return self.c == -1.0


def _check_lambda(lam):
    if not (isinstance(lam, (int, float, np.floating, np.integer)) and math.isfinite(lam)):
        raise DomainError(f"lambda must be a finite real, got {lam!r}")
    if lam < 0:
        raise DomainError(f"lambda must be >= 0, got {lam!r}")


def _check_finite(x):
    arr = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(arr)):
        bad = np.flatnonzero(~np.isfinite(arr.ravel()))[0]
        where = "" if arr.ndim == 0 else f" at index {bad}"
        raise DomainError(f"non-finite input {arr.ravel()[bad]!r}{where}")
    return arr


def _out(arr):
    return float(arr) if arr.ndim == 0 else arr


def _abs_pow(a, lam):
    # 0**0 == 1 in numpy; callers zero the x == 0 entries afterwards.
    with np.errstate(over="ignore", under="ignore"):
        return np.power(a, lam)


def signed_power(x, lam):
    """``sign(x) * |x|**lam``, with ``signed_power(0, lam) == 0`` for every lam >= 0."""
    _check_lambda(lam)
    arr = _check_finite(x)
    return _out(np.sign(arr) * _abs_pow(np.abs(arr), lam))


def asym_power(x, params: PowerParams):
    """Evaluate the asymmetric power map ``f_c`` elementwise."""
    arr = _check_finite(x)
    mag = _abs_pow(np.abs(arr), params.lam)
    res = np.where(arr > 0, mag, np.where(arr < 0, params.c * mag, 0.0))
    return _out(res)


def signed_power_inverse(y, lam):
    """Inverse of :func:`signed_power`; defined only for ``lam > 0``."""
    _check_lambda(lam)
    if lam == 0:
        raise NotInvertibleError("the sign function (lambda = 0) is not invertible")
    arr = _check_finite(y)
    return _out(np.sign(arr) * _abs_pow(np.abs(arr), 1.0 / lam))


def transform_series(xs, params: PowerParams) -> TimeSeries:
    """Apply ``asym_power`` to every observation, recording the parameters in metadata."""
    meta = dict(xs.metadata) if isinstance(xs, TimeSeries) else {}
    values = as_values(xs)
    meta.update({"lambda": float(params.lam), "c": float(params.c)})
    return TimeSeries(np.asarray(asym_power(values, params), dtype=np.float64), meta)
