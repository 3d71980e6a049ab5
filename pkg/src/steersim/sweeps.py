"""Rectangular sweep results and their on-disk CSV form.

The CSV dialect is deliberately tiny: a header row of column names, then one
row per record, UTF-8, Unix newlines, '.' decimal separator.  Values are
rendered with ``repr`` so the decimal strings are the shortest that
round-trip back to the same float; a table written and re-read compares
equal rendering-for-rendering.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import ContractError, DomainError


@dataclass(frozen=True)
class Axis:
    """A uniformly sampled sweep axis: ``steps`` points from lo to hi inclusive."""

    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise DomainError(f"axis {self.name!r} needs at least 2 steps, got {self.steps}")
        if not self.lo < self.hi:
            raise DomainError(f"axis {self.name!r} needs lo < hi, got [{self.lo}, {self.hi}]")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


@dataclass(frozen=True)
class SweepTable:
    """Named real-valued columns of equal length, in sweep nesting order."""

    columns: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "columns", tuple(self.columns))
        object.__setattr__(self, "rows", tuple(tuple(float(x) for x in r) for r in self.rows))
        for r in self.rows:
            if len(r) != len(self.columns):
                raise ContractError(
                    f"ragged sweep row: {len(r)} values for {len(self.columns)} columns")

    def column(self, name: str) -> np.ndarray:
        try:
            i = self.columns.index(name)
        except ValueError:
            raise DomainError(f"no column named {name!r}; have {self.columns}") from None
        return np.array([r[i] for r in self.rows])

    def write_csv(self, path: str) -> None:
        lines = [",".join(self.columns)]
        lines.extend(",".join(repr(x) for x in r) for r in self.rows)
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")

    @classmethod
    def read_csv(cls, path: str) -> "SweepTable":
        with open(path, encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().split("\n") if ln]
        if not lines:
            raise ContractError(f"empty sweep file: {path}")
        header = tuple(lines[0].split(","))
        rows = tuple(tuple(float(tok) for tok in ln.split(",")) for ln in lines[1:])
        return cls(header, rows)


def default_threads() -> int:
    return max(os.cpu_count() or 1, 1)


def ordered_map(fn: Callable, items: Iterable, threads: int) -> list:
    """Map a pure function over items, preserving order regardless of pool size."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def grid_points(axes: Sequence[Axis]) -> list[tuple[float, ...]]:
    """Cartesian product of axis values, first axis outermost (row-major)."""
    values = [ax.values() for ax in axes]
    mesh = np.meshgrid(*values, indexing="ij")
    return [tuple(float(m[idx]) for m in mesh) for idx in np.ndindex(*mesh[0].shape)]
