"""Reading and writing single-column series files and diagnostics reports."""

from __future__ import annotations

import json
import os
import re
import tempfile
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .acf_stats import AcfDiagnostics
from .series import TimeSeries

# Dot decimal separator only; no locale, no digit grouping, no nan/inf.
_NUMBER = re.compile(r"^[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?$")


class SeriesFileError(ValueError):
    """A series file is missing, empty, or has an unparseable line."""


def parse_number(text: str) -> float | None:
    s = text.strip()
    if not _NUMBER.match(s):
        return None
    v = float(s)
    return v if np.isfinite(v) else None


def read_series(path) -> tuple[TimeSeries, str | None]:
    """Read one observation per line; a non-numeric first line is taken as a header.

    Blank lines are skipped.  Returns the series and the header (or None).
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SeriesFileError(f"cannot read {path}: {exc.strerror or exc}") from exc
    header = None
    values = []
    seen_first = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        v = parse_number(line)
        if v is None:
            if not seen_first:
                header = line.strip()
                seen_first = True
                continue
            raise SeriesFileError(f"{path}: line {lineno}: cannot parse {line.strip()!r} as a finite number")
        seen_first = True
        values.append(v)
    if not values:
        raise SeriesFileError(f"{path}: no observations")
    return TimeSeries(np.array(values), {"source": str(path)}), header


def format_series(values, header: str | None = None) -> str:
    lines = [] if header is None else [header]
    lines += [format(float(v), ".17g") for v in values]
    return "\n".join(lines) + "\n"


@contextmanager
def atomic_write(path):
    """Yield a temporary file handle and move it onto `path` only on success."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".part", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            yield fh
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise


def write_series(path, values, header: str | None = None) -> None:
    with atomic_write(path) as fh:
        fh.write(format_series(values, header))


def diagnostics_to_json(blocks) -> str:
    return json.dumps({"diagnostics": [d.to_dict() for _, d in blocks]}, indent=2) + "\n"


def diagnostics_from_json(text: str) -> list[tuple[float, AcfDiagnostics]]:
    out = []
    for d in json.loads(text)["diagnostics"]:
        diag = AcfDiagnostics.from_dict(d)
        out.append((diag.lam, diag))
    return out


def diagnostics_to_text(blocks) -> str:
    """Aligned plain-text table, one block per lambda."""
    parts = []
    for lam, d in blocks:
        lines = [
            f"lambda = {lam:g}   n = {d.n}   level = {d.level:g}   correction = {d.correction}",
            f"{'lag':>5} {'rho_hat':>12} {'w_hat':>12} {'band':>12}  outside",
        ]
        for k, r, w, b, o in zip(d.lags, d.rho_hat, d.w_hat, d.band_halfwidth, d.outside):
            lines.append(f"{k:>5d} {r:>12.6f} {w:>12.6f} {b:>12.6f}  {'*' if o else ''}")
        lines.append(
            f"portmanteau Q = {d.portmanteau_stat:.6f}   df = {d.max_lag}   p-value = {d.portmanteau_pvalue:.6f}"
        )
        parts.append("\n".join(lines))
    return "\n\n".join(parts) + "\n"


def plot_data_csv(blocks) -> str:
    """Long-format (lambda, lag, rho, band) rows for external plotting."""
    rows = ["lambda,lag,rho,band"]
    for lam, d in blocks:
        for k, r, b in zip(d.lags, d.rho_hat, d.band_halfwidth):
            rows.append(f"{lam:g},{k},{r:.17g},{b:.17g}")
    return "\n".join(rows) + "\n"
