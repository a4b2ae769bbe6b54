"""Partitions, semistandard tableaux and the shape data of a dominant weight."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .weights import Weight, is_dominant

Partition = tuple[int, ...]


def partition(parts: Iterable[int]) -> Partition:
    """Normalize to a weakly decreasing tuple without trailing zeros."""
    parts = tuple(int(x) for x in parts)
    if any(x < 0 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"{parts} is not a partition")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def conjugate(shape: Sequence[int]) -> Partition:
    shape = partition(shape)
    if not shape:
        return ()
    return tuple(sum(1 for row in shape if row > c) for c in range(shape[0]))


def partitions_of(size: int, max_part: int | None = None) -> list[Partition]:
    """All partitions of ``size``, in decreasing lexicographic order."""
    if max_part is None:
        max_part = size
    if size == 0:
        return [()]
    out = []
    for first in range(min(size, max_part), 0, -1):
        for rest in partitions_of(size - first, first):
            out.append((first,) + rest)
    return out


def partition_dominates(small: Sequence[int], big: Sequence[int]) -> bool:
    """small <= big in the dominance order on partitions of the same size."""
    if sum(small) != sum(big):
        return False
    k = max(len(small), len(big))
    s = list(small) + [0] * (k - len(small))
    b = list(big) + [0] * (k - len(big))
    acc = 0
    for x, y in zip(b, s):
        acc += x - y
        if acc < 0:
            return False
    return True


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows if len(r))
        object.__setattr__(self, "rows", rows)
        partition(len(r) for r in rows)

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [
            tuple(r[c] for r in self.rows if len(r) > c)
            for c in range(len(self.rows[0]) if self.rows else 0)
        ]

    def is_standard(self) -> bool:
        rows_ok = all(a <= b for r in self.rows for a, b in zip(r, r[1:]))
        cols_ok = all(a < b for c in self.columns() for a, b in zip(c, c[1:]))
        return rows_ok and cols_ok

    def max_entry(self) -> int:
        return max((x for r in self.rows for x in r), default=0)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, rows) -> "Tableau":
        return cls(tuple(tuple(r) for r in rows))

    def __str__(self) -> str:
        return "/".join("".join(map(str, r)) if all(x < 10 for x in r)
                        else ",".join(map(str, r)) for r in self.rows)


def enumerate_standard(shape: Sequence[int], bound: int) -> list[Tableau]:
    """Semistandard tableaux of ``shape`` with entries in [1, bound].

    Ordered lexicographically by row reading word.
    """
    shape = partition(shape)
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    grid: dict[tuple[int, int], int] = {}
    out: list[Tableau] = []

    def fill(k: int):
        if k == len(cells):
            out.append(Tableau(tuple(
                tuple(grid[(r, c)] for c in range(length))
                for r, length in enumerate(shape))))
            return
        r, c = cells[k]
        lo = 1
        if c > 0:
            lo = max(lo, grid[(r, c - 1)])
        if r > 0:
            lo = max(lo, grid[(r - 1, c)] + 1)
        for v in range(lo, bound + 1):
            grid[(r, c)] = v
            fill(k + 1)
        grid.pop((r, c), None)

    fill(0)
    return out


def hook_content_count(shape: Sequence[int], bound: int) -> int:
    """Number of semistandard tableaux via the hook-content formula."""
    shape = partition(shape)
    conj = conjugate(shape)
    num = Fraction(1)
    for r, length in enumerate(shape):
        for c in range(length):
            hook = (length - c) + (conj[c] - r) - 1
            num *= Fraction(bound + c - r, hook)
    assert num.denominator == 1
    return int(num)


@dataclass(frozen=True)
class ShapeData:
    a: int
    b: int
    mu: Weight
    nu: tuple[Partition, Partition]

    @property
    def mu_plus(self) -> Partition:
        return partition(self.mu.plus)

    @property
    def mu_minus(self) -> Partition:
        return partition(self.mu.minus)


def shape_data(lam: Weight) -> ShapeData:
    """Split a dominant weight into determinant powers and two partitions.

    a = min(lambda_m, 0) and b = min(lambda_{m+n}, 0); removing det^a from the
    even block and det^b from the odd block leaves partitions mu_+, mu_-.
    """
    if not is_dominant(lam):
        raise ValueError(f"{lam} is not dominant")
    m, n = lam.m, lam.n
    a = min(lam[m - 1], 0) if m else 0
    b = min(lam[m + n - 1], 0) if n else 0
    mu = lam.with_entries([x - a for x in lam.plus] + [x - b for x in lam.minus])
    return ShapeData(a, b, mu, (conjugate(partition(mu.plus)), conjugate(partition(mu.minus))))
