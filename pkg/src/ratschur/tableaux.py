"""Row semistandard tableaux, Weyl module dimensions and multi-index readings."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .weights import is_dominant

MultiIndex = tuple[int, ...]


def _as_partition(shape: Sequence[int], n: int) -> tuple[int, ...]:
    shape = tuple(shape)
    if any(p < 0 for p in shape) or not is_dominant(shape):
        raise ValueError(f"{shape} is not a partition")
    core = tuple(p for p in shape if p > 0)
    if len(core) > n:
        raise ValueError(f"partition {shape} has more than n={n} parts")
    return core + (0,) * (n - len(core))


@dataclass(frozen=True)
class SemistandardTableau:
    """Filling of a Young diagram: rows weakly increase, columns strictly increase."""

    shape: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.rows) > len(self.shape):
            raise ValueError("more rows than parts in the shape")
        for i, part in enumerate(self.shape):
            row = self.rows[i] if i < len(self.rows) else ()
            if len(row) != part:
                raise ValueError(f"row {i} has length {len(row)}, shape requires {part}")
        if not rows_weakly_increase(self.rows) or not columns_strictly_increase(self.rows):
            raise ValueError(f"not semistandard: {self.rows}")

    def reading(self) -> MultiIndex:
        return tableau_to_index(self)

    def __str__(self) -> str:
        return format_tableau(self)


def rows_weakly_increase(rows: Sequence[Sequence[int]]) -> bool:
    return all(a <= b for row in rows for a, b in zip(row, row[1:]))


def columns_strictly_increase(rows: Sequence[Sequence[int]]) -> bool:
    return all(upper[j] < lower[j] for upper, lower in zip(rows, rows[1:]) for j in range(len(lower)))


def enum_ssyt(shape: Sequence[int], n: int) -> list[SemistandardTableau]:
    """All semistandard tableaux of ``shape`` with entries in 1..n, lexicographic in reading word."""
    part = _as_partition(shape, n)
    return list(_enum_ssyt(part, n))


@lru_cache(maxsize=None)
def _enum_ssyt(part: tuple[int, ...], n: int) -> tuple[SemistandardTableau, ...]:
    nrows = sum(1 for p in part if p > 0)
    cells = [(i, j) for i in range(nrows) for j in range(part[i])]
    grid = [[0] * part[i] for i in range(nrows)]
    col_len = [sum(1 for p in part if p > j) for j in range(part[0] if part else 0)]
    out = []

    def fill(k: int):
        if k == len(cells):
            rows = tuple(tuple(r) for r in grid) + ((),) * (len(part) - nrows)
            out.append(SemistandardTableau(part, rows))
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = grid[i][j - 1]
        if i > 0:
            lo = max(lo, grid[i - 1][j] + 1)
        # leave room for the strictly increasing entries below in this column
        hi = n - (col_len[j] - 1 - i)
        for v in range(lo, hi + 1):
            grid[i][j] = v
            fill(k + 1)
        grid[i][j] = 0

    fill(0)
    return tuple(out)


def weyl_dim(weight: Sequence[int], n: int | None = None) -> int:
    """Dimension of the Weyl module of a dominant weight (number of semistandard tableaux).

    Weights with negative entries are shifted by a multiple of (1,...,1)
    first; the dimension does not change under that shift.
    """
    weight = tuple(weight)
    if n is None:
        n = len(weight)
    if len(weight) != n:
        raise ValueError(f"weight {weight} does not have length {n}")
    if not is_dominant(weight):
        raise ValueError(f"weight {weight} is not dominant")
    low = min(weight, default=0)
    if low < 0:
        weight = tuple(x - low for x in weight)
    return len(_enum_ssyt(_as_partition(weight, n), n))


def tableau_to_index(tableau: SemistandardTableau) -> MultiIndex:
    """Entries read left to right across rows, top row first."""
    return tuple(x for row in tableau.rows for x in row)


def canonical_index(shape: Sequence[int]) -> MultiIndex:
    """Reading of the tableau whose i-th row is filled with i."""
    return tuple(i + 1 for i, p in enumerate(shape) for _ in range(p))


def format_tableau(tableau: SemistandardTableau) -> str:
    return "/".join(",".join(map(str, row)) for row in tableau.rows if row)


def parse_tableau(text: str, n: int) -> SemistandardTableau:
    rows = [tuple(int(x) for x in part.split(",")) for part in text.strip().split("/") if part]
    shape = _as_partition([len(r) for r in rows], n)
    rows += [()] * (len(shape) - len(rows))
    return SemistandardTableau(shape, tuple(rows))
