"""Monte Carlo harness for rejection rates over a (model row x lambda) grid.

Replication ``r`` of grid row ``g`` draws from ``RngStream(seed, stream_id_for(g, r))``.
Work is split into (row, rep-range) chunks whose integer rejection counts
are summed, so the report does not depend on the number of workers or the
order in which chunks finish.
"""

from __future__ import annotations

import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Literal

import numpy as np

from .acf_stats import CORRECTIONS, acf_batch, portmanteau_batch, w_hat_batch
from .distributions import RngStream, chisq_quantile, normal_quantile, stream_id_for
from .errors import DomainError
from .simulate import DEFAULT_BURN_IN, ArchSpec, MarSpec, arch1_theoretical_w11, simulate_batch
from .transform import signed_power

DEFAULT_SEED = 20240101
CHUNK = 250

TABLE1_ALPHAS = (0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75, 0.85, 0.95)
TABLE1_LAMBDAS = (0.1, 0.5, 0.75, 1.0)
TABLE2_SIGMAS = tuple(float(s) for s in range(1, 11))
TABLE2_LAMBDAS = tuple(round(0.1 * k, 1) for k in range(1, 11))


@dataclass(frozen=True)
class ExperimentConfig:
    models: tuple
    lambda_grid: tuple
    n: int = 2000
    reps: int = 10_000
    level: float = 0.95
    seed: int = DEFAULT_SEED
    correction: str = "n_over_n_minus_i"
    burn_in: int = DEFAULT_BURN_IN
    statistic: Literal["lag1", "portmanteau"] = "lag1"
    max_lag: int = 1

    def __post_init__(self):
        object.__setattr__(self, "models", tuple(self.models))
        object.__setattr__(self, "lambda_grid", tuple(float(v) for v in self.lambda_grid))
        if not self.models or not self.lambda_grid:
            raise DomainError("model and lambda grids must be non-empty")
        if any(not isinstance(m, (ArchSpec, MarSpec)) for m in self.models):
            raise DomainError("models must be ArchSpec or MarSpec instances")
        if any(not 0.0 < v <= 1.0 for v in self.lambda_grid):
            raise DomainError(f"lambda values must lie in (0, 1], got {self.lambda_grid}")
        if self.reps < 1:
            raise DomainError(f"reps must be >= 1, got {self.reps}")
        if self.n < 3:
            raise DomainError(f"n must be >= 3, got {self.n}")
        if not 0.0 < self.level < 1.0:
            raise DomainError(f"level must lie in (0, 1), got {self.level}")
        if not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.correction not in CORRECTIONS:
            raise DomainError(f"correction must be one of {CORRECTIONS}")
        if self.statistic not in ("lag1", "portmanteau"):
            raise DomainError(f"unknown statistic {self.statistic!r}")
        if not 1 <= self.max_lag < self.n:
            raise DomainError(f"max_lag must satisfy 1 <= m < n, got {self.max_lag}")

    @property
    def model_kind(self) -> str:
        kinds = {m.kind for m in self.models}
        return kinds.pop() if len(kinds) == 1 else "mixed"

    def to_dict(self) -> dict:
        return {
            "model": self.model_kind,
            "models": [{"kind": m.kind, **_spec_fields(m)} for m in self.models],
            "lambda_grid": list(self.lambda_grid),
            "n": self.n,
            "reps": self.reps,
            "level": self.level,
            "seed": self.seed,
            "correction": self.correction,
            "burn_in": self.burn_in,
            "statistic": self.statistic,
            "max_lag": self.max_lag,
        }


def _spec_fields(m):
    if isinstance(m, ArchSpec):
        return {"alpha1": m.alpha1, "omega": m.omega}
    return {"sigma2": m.sigma2, "weight1": m.weight1, "phi1": m.phi1, "phi2": m.phi2}


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    counts: np.ndarray
    theoretical_w11: list | None = None
    elapsed: float = 0.0
    row_labels: list = field(default_factory=list)

    @property
    def rejection_rate(self) -> np.ndarray:
        return self.counts / self.config.reps

    def binomial_se(self, p) -> np.ndarray:
        p = np.asarray(p, dtype=np.float64)
        return np.sqrt(p * (1.0 - p) / self.config.reps)

    def to_csv(self) -> str:
        """Matrix of rates; header row of lambdas, leading column of row parameters.

        Timing is excluded so identical runs give identical bytes.
        """
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = [_row_param_name(self.config)]
        if self.theoretical_w11 is not None:
            head.append("w11")
        w.writerow(head + [_fmt_num(v) for v in self.config.lambda_grid])
        for i, label in enumerate(self.row_labels):
            row = [_fmt_num(label)]
            if self.theoretical_w11 is not None:
                t = self.theoretical_w11[i]
                row.append("NA" if t is None else f"{t:.3f}")
            row += [f"{r:.3f}" for r in self.rejection_rate[i]]
            w.writerow(row)
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "row_parameter": _row_param_name(self.config),
            "row_labels": list(self.row_labels),
            "lambda_grid": list(self.config.lambda_grid),
            "rejection_counts": self.counts.astype(int).tolist(),
            "rejection_rate": [[round(float(r), 3) for r in row] for row in self.rejection_rate],
            "theoretical_w11": None if self.theoretical_w11 is None
            else [None if t is None else round(t, 3) for t in self.theoretical_w11],
        }

    def to_json(self) -> str:
        """JSON echo of config, matrix and metadata; timing excluded as in :meth:`to_csv`."""
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _row_param_name(cfg):
    kind = cfg.model_kind
    return {"arch1": "alpha1", "mar": "sigma2"}.get(kind, "row")


def _fmt_num(v):
    return f"{v:g}"


def _critical_value(cfg: ExperimentConfig) -> float:
    if cfg.statistic == "lag1":
        return normal_quantile((1.0 + cfg.level) / 2.0)
    return chisq_quantile(cfg.level, cfg.max_lag)


def count_rejections(paths: np.ndarray, cfg: ExperimentConfig, crit: float | None = None) -> np.ndarray:
    """Number of rejecting paths for each lambda of the grid."""
    crit = _critical_value(cfg) if crit is None else crit
    n = paths.shape[-1]
    out = np.zeros(len(cfg.lambda_grid), dtype=np.int64)
    for j, lam in enumerate(cfg.lambda_grid):
        y = paths if lam == 1.0 else signed_power(paths, lam)
        if cfg.statistic == "lag1":
            rho = acf_batch(y, 1)
            w = w_hat_batch(y, 1, cfg.correction)
            reject = np.abs(rho) > crit * np.sqrt(w / n)
        else:
            reject = portmanteau_batch(y, cfg.max_lag, cfg.correction) > crit
        out[j] = int(np.count_nonzero(reject))
    return out


def _run_chunk(args):
    cfg, row, start, stop = args
    spec = cfg.models[row]
    streams = [RngStream(cfg.seed, stream_id_for(row, r)) for r in range(start, stop)]
    paths = simulate_batch(spec, cfg.n, streams, cfg.burn_in)
    try:
        return row, stop - start, count_rejections(paths, cfg)
    except (ValueError, FloatingPointError) as exc:
        raise RuntimeError(f"row {row} reps {start}..{stop - 1}: {exc}") from exc


def _chunks(cfg: ExperimentConfig, chunk: int):
    for row in range(len(cfg.models)):
        for start in range(0, cfg.reps, chunk):
            yield cfg, row, start, min(start + chunk, cfg.reps)


def run_experiment(cfg: ExperimentConfig, workers: int = 1, chunk: int = CHUNK,
                   progress: Callable[[str], None] | None = None) -> ExperimentReport:
    """Simulate, transform and test every (row, rep); reduce to rejection counts."""
    t0 = time.perf_counter()
    nrows = len(cfg.models)
    counts = np.zeros((nrows, len(cfg.lambda_grid)), dtype=np.int64)
    done = np.zeros(nrows, dtype=np.int64)
    tasks = list(_chunks(cfg, chunk))

    def absorb(result):
        row, k, c = result
        counts[row] += c
        done[row] += k
        if progress is not None and done[row] == cfg.reps:
            progress(f"row {row + 1}/{nrows} ({_row_param_name(cfg)}={cfg.models[row].label:g}) done")

    if workers <= 1:
        for t in tasks:
            absorb(_run_chunk(t))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for result in pool.map(_run_chunk, tasks):
                absorb(result)

    theo = None
    if cfg.model_kind == "arch1":
        theo = [arch1_theoretical_w11(m) for m in cfg.models]
    return ExperimentReport(
        config=cfg,
        counts=counts,
        theoretical_w11=theo,
        elapsed=time.perf_counter() - t0,
        row_labels=[m.label for m in cfg.models],
    )


def table1_config(**overrides) -> ExperimentConfig:
    omega = overrides.pop("omega", 0.01)
    alphas = overrides.pop("alphas", TABLE1_ALPHAS)
    base = ExperimentConfig(models=tuple(ArchSpec(a, omega) for a in alphas),
                            lambda_grid=TABLE1_LAMBDAS)
    return replace(base, **overrides)


def table2_config(**overrides) -> ExperimentConfig:
    sigmas = overrides.pop("sigmas", TABLE2_SIGMAS)
    base = ExperimentConfig(models=tuple(MarSpec(s) for s in sigmas), lambda_grid=TABLE2_LAMBDAS)
    return replace(base, **overrides)


def table1(workers: int = 1, progress=None, **overrides) -> ExperimentReport:
    """ARCH(1) preset: alpha1 = 0.05..0.95, lambda in {0.1, 0.5, 0.75, 1}, omega = 0.01, n = 2000."""
    return run_experiment(table1_config(**overrides), workers=workers, progress=progress)


def table2(workers: int = 1, progress=None, **overrides) -> ExperimentReport:
    """MAR preset: sigma2 = 1..10, lambda = 0.1..1.0, n = 2000."""
    return run_experiment(table2_config(**overrides), workers=workers, progress=progress)


def stderr_progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


__all__ = [
    "ExperimentConfig",
    "ExperimentReport",
    "run_experiment",
    "table1",
    "table2",
    "table1_config",
    "table2_config",
]
