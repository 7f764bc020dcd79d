"""Generators for the ARCH(1) and MAR(2;1,1) white noise models.

ARCH(1):   X_t = sigma_t * eta_t,  sigma_t^2 = omega + alpha1 * X_{t-1}^2,
           eta_t i.i.d. N(0, 1).
MAR(2;1,1): with probability weight1, X_t = phi1 * X_{t-1} + eps_t,
           otherwise X_t = phi2 * X_{t-1} + sigma2 * eps_t,
           eps_t i.i.d. standardized t_3.

Both recursions start from X_0 = 0 and discard the first ``burn_in`` values.
Each path draws its random numbers in blocks from its own stream: ARCH uses
``n + burn_in`` normals; MAR uses ``n + burn_in`` regime uniforms followed by
the same number of t_3 innovations.  The batched generators stack one path
per stream and therefore reproduce the single-path output row by row.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from .distributions import RngStream, sample_std_normal, sample_std_t3, sample_uniform
from .errors import DomainError
from .series import TimeSeries

DEFAULT_BURN_IN = 500
FOURTH_MOMENT_BOUND = 1.0 / math.sqrt(3.0)


@dataclass(frozen=True)
class ArchSpec:
    alpha1: float
    omega: float = 0.01

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise DomainError(f"omega must be positive, got {self.omega!r}")
        if not 0.0 <= self.alpha1 < 1.0:
            raise DomainError(f"alpha1 must lie in [0, 1), got {self.alpha1!r}")

    kind = "arch1"

    @property
    def label(self) -> float:
        return self.alpha1


@dataclass(frozen=True)
class MarSpec:
    sigma2: float
    weight1: float = 0.25
    phi1: float = 0.3
    phi2: float = -0.1

    def __post_init__(self):
        if not (math.isfinite(self.sigma2) and self.sigma2 > 0):
            raise DomainError(f"sigma2 must be positive, got {self.sigma2!r}")
        if not 0.0 < self.weight1 < 1.0:
            raise DomainError(f"weight1 must lie in (0, 1), got {self.weight1!r}")
        if not (math.isfinite(self.phi1) and math.isfinite(self.phi2)):
            raise DomainError("AR coefficients must be finite")

    kind = "mar"

    @property
    def weight2(self) -> float:
        return 1.0 - self.weight1

    @property
    def label(self) -> float:
        return self.sigma2


ModelSpec = Union[ArchSpec, MarSpec]


@dataclass
class SimConfig:
    n: int
    rng: RngStream = field(default_factory=lambda: RngStream(0))
    burn_in: int = DEFAULT_BURN_IN

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if int(self.burn_in) != self.burn_in or self.burn_in < 0:
            raise DomainError(f"burn_in must be a nonnegative integer, got {self.burn_in!r}")


def _arch1_recursion(eta: np.ndarray, omega: float, alpha1: float) -> np.ndarray:
    x = np.empty_like(eta)
    if eta.ndim == 1:
        # Scalar loop; the vectorized branch performs the same IEEE operations.
        prev = 0.0
        out = x
        for t, e in enumerate(eta.tolist()):
            prev = math.sqrt(omega + alpha1 * (prev * prev)) * e
            out[t] = prev
        return x
    prev = np.zeros(eta.shape[0])
    for t in range(eta.shape[1]):
        prev = np.sqrt(omega + alpha1 * (prev * prev)) * eta[:, t]
        x[:, t] = prev
    return x


def _mar_recursion(u, eps, spec: MarSpec) -> np.ndarray:
    first = u < spec.weight1
    coef = np.where(first, spec.phi1, spec.phi2)
    shock = np.where(first, eps, spec.sigma2 * eps)
    x = np.empty_like(eps)
    if eps.ndim == 1:
        prev = 0.0
        for t, (a, s) in enumerate(zip(coef.tolist(), shock.tolist())):
            prev = a * prev + s
            x[t] = prev
        return x
    prev = np.zeros(eps.shape[0])
    for t in range(eps.shape[1]):
        prev = coef[:, t] * prev + shock[:, t]
        x[:, t] = prev
    return x


def arch1_volatility(x: np.ndarray, spec: ArchSpec) -> np.ndarray:
    """Rebuild sigma_t from the emitted path alone (sigma_1 uses X_0 = 0 when no burn-in)."""
    x = np.asarray(x, dtype=np.float64)
    prev = np.concatenate(([0.0], x[:-1]))
    return np.sqrt(spec.omega + spec.alpha1 * (prev * prev))


def _draw_arch(rng: RngStream, total: int) -> np.ndarray:
    return sample_std_normal(rng, total)


def _draw_mar(rng: RngStream, total: int):
    u = sample_uniform(rng, total)
    eps = sample_std_t3(rng, total)
    return u, eps


def simulate_arch1(spec: ArchSpec, cfg: SimConfig) -> TimeSeries:
    eta = _draw_arch(cfg.rng, cfg.n + cfg.burn_in)
    x = _arch1_recursion(eta, spec.omega, spec.alpha1)[cfg.burn_in:]
    return TimeSeries(x, {"model": "arch1", "alpha1": spec.alpha1, "omega": spec.omega,
                          "seed": cfg.rng.seed, "stream_id": cfg.rng.stream_id,
                          "burn_in": cfg.burn_in})


def simulate_mar(spec: MarSpec, cfg: SimConfig) -> TimeSeries:
    u, eps = _draw_mar(cfg.rng, cfg.n + cfg.burn_in)
    x = _mar_recursion(u, eps, spec)[cfg.burn_in:]
    return TimeSeries(x, {"model": "mar", "sigma2": spec.sigma2, "weight1": spec.weight1,
                          "phi1": spec.phi1, "phi2": spec.phi2,
                          "seed": cfg.rng.seed, "stream_id": cfg.rng.stream_id,
                          "burn_in": cfg.burn_in})


def simulate(spec: ModelSpec, cfg: SimConfig) -> TimeSeries:
    if isinstance(spec, ArchSpec):
        return simulate_arch1(spec, cfg)
    if isinstance(spec, MarSpec):
        return simulate_mar(spec, cfg)
    raise TypeError(f"unknown model spec {spec!r}")


def simulate_batch(spec: ModelSpec, n: int, streams: Sequence[RngStream],
                   burn_in: int = DEFAULT_BURN_IN) -> np.ndarray:
    """One path per stream, stacked as rows of an ``(len(streams), n)`` array."""
    total = n + burn_in
    if isinstance(spec, ArchSpec):
        eta = np.stack([_draw_arch(s, total) for s in streams])
        return _arch1_recursion(eta, spec.omega, spec.alpha1)[:, burn_in:]
    if isinstance(spec, MarSpec):
        draws = [_draw_mar(s, total) for s in streams]
        u = np.stack([d[0] for d in draws])
        eps = np.stack([d[1] for d in draws])
        return _mar_recursion(u, eps, spec)[:, burn_in:]
    raise TypeError(f"unknown model spec {spec!r}")


def arch1_theoretical_w11(spec: ArchSpec) -> float | None:
    """``E[X_1^2 X_2^2] / (E X_1^2)^2`` for Gaussian ARCH(1); None without a fourth moment.

    Uses ``E X^2 = omega / (1 - alpha1)`` and
    ``E X^4 = 3 (omega^2 + 2 omega alpha1 E X^2) / (1 - 3 alpha1^2)``.
    """
    a, w = spec.alpha1, spec.omega
    if a >= FOURTH_MOMENT_BOUND:
        return None
    m2 = w / (1.0 - a)
    m4 = 3.0 * (w * w + 2.0 * w * a * m2) / (1.0 - 3.0 * a * a)
    return (w * m2 + a * m4) / (m2 * m2)
