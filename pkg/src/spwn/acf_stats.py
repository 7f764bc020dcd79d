"""Sample autocorrelations and heteroskedasticity-robust white noise diagnostics.

Conventions:

* ``sample_acvf`` is mean corrected and always divides by ``n``.
* ``w_hat`` uses raw squares with no mean correction.  It estimates
  ``E[X_1^2 X_{1+i}^2] / (E X_1^2)^2``, the asymptotic variance of
  ``sqrt(n) * rho_hat(i)`` for ARCH-type white noise.

The ``*_batch`` helpers operate along the last axis of a 2-D array of
replications and skip input validation; the Monte Carlo harness uses them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .distributions import chisq_sf, normal_quantile
from .errors import DegenerateSeriesError, DomainError
from .series import as_values
from .transform import signed_power

Correction = Literal["n_over_n_minus_i", "one"]
CORRECTIONS = ("n_over_n_minus_i", "one")


def default_max_lag(n: int) -> int:
    return max(1, min(20, n // 10))


def sample_mean(xs) -> float:
    return float(np.mean(as_values(xs)))


def sample_acvf(xs, lag: int) -> float:
    x = as_values(xs)
    n = x.size
    if not 0 <= lag < n:
        raise DomainError(f"lag must satisfy 0 <= lag < n = {n}, got {lag}")
    d = x - x.mean()
    return float(np.dot(d[: n - lag], d[lag:]) / n)


def sample_acf(xs, max_lag: int) -> np.ndarray:
    """Sample autocorrelations at lags ``1..max_lag``."""
    x = as_values(xs)
    n = x.size
    if not 1 <= max_lag < n:
        raise DomainError(f"max_lag must satisfy 1 <= m < n = {n}, got {max_lag}")
    d = x - x.mean()
    g0 = float(np.dot(d, d))
    if g0 <= 0.0:
        raise DegenerateSeriesError("sample variance is zero (constant series)")
    return np.array([np.dot(d[: n - k], d[k:]) / g0 for k in range(1, max_lag + 1)])


def _correction_factor(n, i, correction):
    if correction == "n_over_n_minus_i":
        return n / (n - i)
    if correction == "one":
        return 1.0
    raise DomainError(f"correction must be one of {CORRECTIONS}, got {correction!r}")


def w_hat(xs, lag: int, correction: Correction = "n_over_n_minus_i") -> float:
    """Robust variance estimate ``n * c_in * sum X_d^2 X_{d+i}^2 / (sum X_d^2)^2``."""
    x = as_values(xs)
    n = x.size
    if not 1 <= lag < n:
        raise DomainError(f"lag must satisfy 1 <= lag < n = {n}, got {lag}")
    c = _correction_factor(n, lag, correction)
    s = x * x
    den = float(s.sum())
    if den == 0.0:
        raise DegenerateSeriesError("all observations are zero")
    num = float(np.dot(s[: n - lag], s[lag:]))
    if num == 0.0:
        raise DegenerateSeriesError(f"no pair of nonzero observations at lag {lag}")
    return n * c * num / (den * den)


def bartlett_w(rho: Sequence[float], i: int, j: int) -> float:
    """Bartlett covariance ``w_ij`` for autocorrelations ``rho[0], rho[1], ...``.

    `rho` lists the autocorrelations at lags ``0..K``; negative lags follow by
    symmetry and lags beyond ``K`` are zero.
    """
    r = np.asarray(rho, dtype=np.float64)
    if r.ndim != 1 or r.size == 0 or r[0] != 1.0:
        raise DomainError("rho must be a 1-D sequence with rho[0] == 1")
    if i < 1 or j < 1:
        raise DomainError(f"lags must be >= 1, got {(i, j)}")
    K = r.size - 1

    def at(k):
        k = abs(k)
        return r[k] if k <= K else 0.0

    ri, rj = at(i), at(j)
    reach = K + max(i, j)
    total = 0.0
    for k in range(-reach, reach + 1):
        rk = at(k)
        total += (
            at(k + i) * at(k + j)
            + at(k - i) * at(k + j)
            + 2.0 * ri * rj * rk * rk
            - 2.0 * ri * rk * at(k + j)
            - 2.0 * rj * rk * at(k + i)
        )
    return float(total)


def significance_bands(w, n: int, level: float = 0.95) -> np.ndarray:
    """Two-sided band half-widths ``z_{(1+level)/2} * sqrt(w / n)``."""
    if not 0.0 < level < 1.0:
        raise DomainError(f"level must lie in (0, 1), got {level!r}")
    z = normal_quantile((1.0 + level) / 2.0)
    return z * np.sqrt(np.asarray(w, dtype=np.float64) / n)


def portmanteau(xs, max_lag: int, correction: Correction = "n_over_n_minus_i") -> tuple[float, float]:
    """Robust portmanteau statistic ``n * sum rho_hat(i)^2 / w_hat(i)`` and its chi-square p-value."""
    x = as_values(xs)
    rho = sample_acf(x, max_lag)
    w = np.array([w_hat(x, i, correction) for i in range(1, max_lag + 1)])
    stat = float(x.size * np.sum(rho * rho / w))
    return stat, chisq_sf(stat, max_lag)


@dataclass(frozen=True)
class AcfDiagnostics:
    n: int
    max_lag: int
    level: float
    correction: str
    rho_hat: np.ndarray
    w_hat: np.ndarray
    band_halfwidth: np.ndarray
    portmanteau_stat: float
    portmanteau_pvalue: float
    lam: float | None = None
    metadata: dict = field(default_factory=dict)

    @property
    def lags(self) -> np.ndarray:
        return np.arange(1, self.max_lag + 1)

    @property
    def outside(self) -> np.ndarray:
        """Lags whose autocorrelation falls strictly outside the band."""
        return np.abs(self.rho_hat) > self.band_halfwidth

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "n": self.n,
            "max_lag": self.max_lag,
            "level": self.level,
            "correction": self.correction,
            "lags": [
                {"lag": int(k), "rho_hat": float(r), "w_hat": float(w), "band": float(b)}
                for k, r, w, b in zip(self.lags, self.rho_hat, self.w_hat, self.band_halfwidth)
            ],
            "portmanteau": {
                "stat": self.portmanteau_stat,
                "df": self.max_lag,
                "pvalue": self.portmanteau_pvalue,
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AcfDiagnostics":
        rows = d["lags"]
        return cls(
            n=d["n"],
            max_lag=d["max_lag"],
            level=d["level"],
            correction=d["correction"],
            rho_hat=np.array([r["rho_hat"] for r in rows]),
            w_hat=np.array([r["w_hat"] for r in rows]),
            band_halfwidth=np.array([r["band"] for r in rows]),
            portmanteau_stat=d["portmanteau"]["stat"],
            portmanteau_pvalue=d["portmanteau"]["pvalue"],
            lam=d["lambda"],
        )


def diagnose(xs, max_lag: int | None = None, level: float = 0.95,
             correction: Correction = "n_over_n_minus_i", lam: float | None = None) -> AcfDiagnostics:
    """Full robust autocorrelation diagnostics for one (already transformed) series."""
    x = as_values(xs)
    n = x.size
    m = default_max_lag(n) if max_lag is None else max_lag
    rho = sample_acf(x, m)
    w = np.array([w_hat(x, i, correction) for i in range(1, m + 1)])
    stat = float(n * np.sum(rho * rho / w))
    return AcfDiagnostics(
        n=n,
        max_lag=m,
        level=level,
        correction=correction,
        rho_hat=rho,
        w_hat=w,
        band_halfwidth=significance_bands(w, n, level),
        portmanteau_stat=stat,
        portmanteau_pvalue=chisq_sf(stat, m),
        lam=lam,
    )


def acf_diagnose(xs, max_lag: int | None = None, lambda_grid: Sequence[float] = (1.0,),
                 level: float = 0.95, correction: Correction = "n_over_n_minus_i"):
    """Diagnostics of the signed powers of `xs`, one entry ``(lam, AcfDiagnostics)`` per lam."""
    x = as_values(xs)
    if len(lambda_grid) == 0:
        raise DomainError("lambda_grid must not be empty")
    out = []
    for lam in lambda_grid:
        y = signed_power(x, lam)
        out.append((float(lam), diagnose(y, max_lag, level, correction, lam=float(lam))))
    return out


# Batched kernels: rows are replications, columns are time.


def acf_batch(x: np.ndarray, lag: int) -> np.ndarray:
    d = x - x.mean(axis=-1, keepdims=True)
    n = x.shape[-1]
    num = np.einsum("...t,...t->...", d[..., : n - lag], d[..., lag:])
    den = np.einsum("...t,...t->...", d, d)
    return num / den


def w_hat_batch(x: np.ndarray, lag: int, correction: Correction = "n_over_n_minus_i") -> np.ndarray:
    n = x.shape[-1]
    c = _correction_factor(n, lag, correction)
    s = x * x
    den = s.sum(axis=-1)
    num = np.einsum("...t,...t->...", s[..., : n - lag], s[..., lag:])
    return n * c * num / (den * den)


def portmanteau_batch(x: np.ndarray, max_lag: int, correction: Correction = "n_over_n_minus_i") -> np.ndarray:
    n = x.shape[-1]
    stat = np.zeros(x.shape[:-1])
    for i in range(1, max_lag + 1):
        r = acf_batch(x, i)
        stat += r * r / w_hat_batch(x, i, correction)
    return n * stat


__all__ = [
    "AcfDiagnostics",
    "acf_diagnose",
    "bartlett_w",
    "diagnose",
    "portmanteau",
    "sample_acf",
    "sample_acvf",
    "sample_mean",
    "significance_bands",
    "w_hat",
]
