"""Special functions and reproducible random streams.

The chi-square distribution function is computed from the regularized
incomplete gamma function (series below ``a + 1``, Lentz continued
fraction above), and quantiles by bracketed bisection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from statistics import NormalDist

import numpy as np

from .errors import DomainError

_EPS = 1e-16
_MAX_ITER = 10_000
_TINY = 1e-300

_U64 = 2**64


def normal_quantile(p: float) -> float:
    """Standard normal quantile."""
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    return NormalDist().inv_cdf(p)


def _gamma_series(a, x):
    # P(a, x) by the power series; converges fast for x < a + 1.
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _gamma_cfrac(a, x):
    # Q(a, x) by the modified Lentz continued fraction; for x >= a + 1.
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h * math.exp(-x + a * math.log(x) - math.lgamma(a))


def regularized_gamma(a: float, x: float) -> tuple[float, float]:
    """Return ``(P(a, x), Q(a, x))``, the lower and upper regularized incomplete gamma."""
    if a <= 0 or not math.isfinite(a):
        raise DomainError(f"shape a must be positive and finite, got {a!r}")
    if x < 0 or math.isnan(x):
        raise DomainError(f"x must be >= 0, got {x!r}")
    if x == 0:
        return 0.0, 1.0
    if math.isinf(x):
        return 1.0, 0.0
    if x < a + 1.0:
        p = _gamma_series(a, x)
        return p, 1.0 - p
    q = _gamma_cfrac(a, x)
    return 1.0 - q, q


def _check_df(k):
    if int(k) != k or k < 1:
        raise DomainError(f"degrees of freedom must be a positive integer, got {k!r}")


def chisq_cdf(x: float, k: int) -> float:
    _check_df(k)
    return regularized_gamma(k / 2.0, x / 2.0)[0]


def chisq_sf(x: float, k: int) -> float:
    """Upper tail ``1 - chisq_cdf(x, k)``, computed without cancellation."""
    _check_df(k)
    return regularized_gamma(k / 2.0, x / 2.0)[1]


def chisq_quantile(p: float, k: int) -> float:
    """Invert :func:`chisq_cdf` by bisection on a doubling bracket."""
    _check_df(k)
    if not 0.0 < p < 1.0:
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    lo, hi = 0.0, max(1.0, float(k))
    while chisq_cdf(hi, k) < p:
        lo, hi = hi, 2.0 * hi
    while hi - lo > 4 * _EPS * hi:
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if chisq_cdf(mid, k) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass
class RngStream:
    """Independent random stream identified by ``(seed, stream_id)``.

    Draws come from a Philox counter-based generator keyed by the pair, so a
    given stream yields the same sequence no matter which process or in what
    order it is consumed.  Equality and hashing use only the identifying pair.
    """

    seed: int
    stream_id: int = 0
    _gen: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if int(v) != v or not 0 <= v < _U64:
                raise DomainError(f"{name} must be a 64-bit unsigned integer, got {v!r}")
        ss = np.random.SeedSequence(int(self.seed), spawn_key=(int(self.stream_id),))
        self._gen = np.random.Generator(np.random.Philox(ss))

    def __hash__(self):
        return hash((self.seed, self.stream_id))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def fresh(self) -> "RngStream":
        """A new stream positioned at the start of the same sequence."""
        return RngStream(self.seed, self.stream_id)


def stream_id_for(row: int, rep: int) -> int:
    """Stream id of replication `rep` in grid row `row` (injective for both < 2**32)."""
    if not (0 <= row < 2**32 and 0 <= rep < 2**32):
        raise DomainError(f"row and rep must be in [0, 2**32), got {(row, rep)}")
    return (row << 32) | rep


def sample_std_normal(rng: RngStream, size=None):
    return rng.generator.standard_normal(size)


def sample_uniform(rng: RngStream, size=None):
    return rng.generator.random(size)


def sample_std_t3(rng: RngStream, size=None):
    """Student t with 3 degrees of freedom scaled to unit variance.

    Drawn as ``Z / sqrt(V)`` with ``Z`` standard normal and ``V`` chi-square
    with 3 degrees of freedom, which equals ``T / sqrt(3)`` for ``T = Z / sqrt(V / 3)``.
    The normals are drawn first, then the chi-square variates.
    """
    z = rng.generator.standard_normal(size)
    v = rng.generator.chisquare(3.0, size)
    return z / np.sqrt(v)
