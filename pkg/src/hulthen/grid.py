"""Sampled functions on grids in ``y`` and their CSV form."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

import numpy as np

from .errors import ParameterDomainError

CSV_COLUMNS = ("y", "x", "psi")


def _fmt(v: float) -> str:
    # 17 significant digits round-trips every double; no locale involvement.
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


@dataclass(frozen=True)
class GridFunction:
    grid: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.ndim != 1 or g.shape != v.shape:
            raise ParameterDomainError("grid and values must be 1-d arrays of equal length")
        if g.size > 1 and not np.all(np.diff(g) > 0):
            raise ParameterDomainError("grid must be strictly increasing")
        if not np.all(np.isfinite(v)):
            raise ParameterDomainError("grid function values must be finite")
        g.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.grid.size

    def to_csv(self, out: str | Path | TextIO | None = None) -> str:
        """Write ``y, x = -ln y, psi`` rows; metadata goes in ``#`` header lines."""
        buf = io.StringIO()
        for key in sorted(self.meta):
            buf.write(f"# {key}={self.meta[key]}\n")
        buf.write(",".join(CSV_COLUMNS) + "\n")
        with np.errstate(divide="ignore"):
            xs = -np.log(self.grid)
        for y, x, v in zip(self.grid, xs, self.values):
            buf.write(f"{_fmt(y)},{_fmt(x + 0.0)},{_fmt(v)}\n")
        text = buf.getvalue()
        if isinstance(out, (str, Path)):
            Path(out).write_text(text, encoding="ascii", newline="")
        elif out is not None:
            out.write(text)
        return text

    @classmethod
    def from_csv(cls, source: str | Path | TextIO) -> "GridFunction":
        if isinstance(source, (str, Path)) and Path(source).exists():
            text = Path(source).read_text(encoding="ascii")
        elif isinstance(source, str):
            text = source
        else:
            text = source.read()
        meta = {}
        rows = []
        header_seen = False
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                meta[key] = value
            elif not header_seen:
                if tuple(line.split(",")) != CSV_COLUMNS:
                    raise ValueError(f"unexpected CSV header {line!r}")
                header_seen = True
            elif line:
                y, _, psi = line.split(",")
                rows.append((float(y), float(psi)))
        arr = np.array(rows, dtype=float).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1], meta)


def make_grid(size: int, kind: str = "uniform", interior: bool = False) -> np.ndarray:
    """Points in ``[0, 1]`` (or strictly inside when ``interior``).

    ``uniform``: evenly spaced. ``chebyshev``: clustered at both ends; the
    closed grid uses Chebyshev extrema, the interior one Chebyshev roots.
    """
    if size < 2:
        raise ParameterDomainError("grid needs at least 2 points")
    if kind == "uniform":
        if interior:
            return np.arange(1, size + 1) / (size + 1)
        return np.linspace(0.0, 1.0, size)
    if kind == "chebyshev":
        if interior:
            k = np.arange(size)
            return np.sort(0.5 * (1.0 - np.cos((2 * k + 1) * np.pi / (2 * size))))
        k = np.arange(size)
        g = 0.5 * (1.0 - np.cos(np.pi * k / (size - 1)))
        g[0], g[-1] = 0.0, 1.0
        return g
    raise ParameterDomainError(f"unknown grid kind {kind!r}")


def require_interior(grid) -> np.ndarray:
    g = np.asarray(grid, dtype=float)
    if g.size == 0 or np.any((g <= 0.0) | (g >= 1.0)):
        raise ParameterDomainError("grid must lie strictly inside (0, 1)")
    return g
