"""Partitions, Young tableaux, tabloids and the counting primitives built on them.

Partitions are tuples of positive parts in weakly decreasing order.  All
orderings in the package use the graded reverse-lexicographic order: smaller
weight first, then larger leading parts first, so ``(4) < (3,1) < (2,2)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterable, Iterator, Sequence


class Partition(tuple):
    """An integer partition stored as a tuple of positive, weakly decreasing parts."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def from_multiset(cls, parts: Iterable[int]) -> "Partition":
        """Build from parts in any order; zero parts are dropped."""
        return cls(sorted((p for p in parts if p), reverse=True))

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def transpose(self) -> "Partition":
        if not self:
            return Partition()
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def part(self, i: int) -> int:
        """The i-th part (0-based), with zero beyond the length."""
        return self[i] if i < len(self) else 0

    def multiplicities(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for p in self:
            counts[p] = counts.get(p, 0) + 1
        return counts

    def factorial(self) -> int:
        """Product of the factorials of the parts."""
        return prod(factorial(p) for p in self)

    def sort_key(self) -> tuple:
        return partition_key(self)

    def __repr__(self) -> str:
        return f"Partition({tuple(self)})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self)) + ")" if self else "()"


def partition_key(parts: Sequence[int]) -> tuple:
    """Sort key realising the graded reverse-lexicographic order."""
    return (sum(parts), tuple(-p for p in parts))


def enumerate_partitions(n: int, max_parts: int | None = None) -> list[Partition]:
    """All partitions of ``n``, optionally with at most ``max_parts`` parts, in canonical order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_parts is not None and max_parts < 0:
        raise ValueError("max_parts must be nonnegative")
    out: list[Partition] = []

    def rec(remaining: int, largest: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(acc))
            return
        if max_parts is not None and len(acc) >= max_parts:
            return
        for p in range(min(remaining, largest), 0, -1):
            acc.append(p)
            rec(remaining - p, p, acc)
            acc.pop()

    rec(n, n, [])
    return out


def hook_lengths(shape: Sequence[int]) -> list[list[int]]:
    conj = Partition(shape).transpose()
    return [
        [shape[i] - j - 1 + conj[j] - i - 1 + 1 for j in range(shape[i])]
        for i in range(len(shape))
    ]


@lru_cache(maxsize=None)
def _syt_count(shape: tuple[int, ...]) -> int:
    n = sum(shape)
    hooks = prod(h for row in hook_lengths(shape) for h in row)
    return factorial(n) // hooks


def syt_count(shape: Sequence[int]) -> int:
    """Number of standard Young tableaux of the given shape (hook-length formula)."""
    return _syt_count(tuple(Partition(shape)))


@dataclass(frozen=True)
class StandardYoungTableau:
    """A standard filling of a Young diagram by 1..n, stored row by row."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        Partition(len(r) for r in rows)  # validates the shape
        entries = sorted(v for r in rows for v in r)
        if entries != list(range(1, len(entries) + 1)):
            raise ValueError(f"entries must be exactly 1..n: {rows}")
        for r in rows:
            if any(a >= b for a, b in zip(r, r[1:])):
                raise ValueError(f"rows must increase: {rows}")
        for i in range(1, len(rows)):
            if any(rows[i - 1][j] >= rows[i][j] for j in range(len(rows[i]))):
                raise ValueError(f"columns must increase: {rows}")

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def positions(self) -> dict[int, tuple[int, int]]:
        """Map each entry to its (row, column), both 0-based."""
        return {v: (i, j) for i, r in enumerate(self.rows) for j, v in enumerate(r)}

    def row_of(self, value: int) -> int:
        return self.positions()[value][0]

    def col_of(self, value: int) -> int:
        return self.positions()[value][1]

    def columns(self) -> list[tuple[int, ...]]:
        width = len(self.rows[0]) if self.rows else 0
        return [tuple(r[j] for r in self.rows if len(r) > j) for j in range(width)]

    def tabloid(self) -> "Tabloid":
        return Tabloid(tuple(frozenset(r) for r in self.rows))

    def restrict(self, m: int) -> "StandardYoungTableau":
        """The subtableau holding the entries 1..m."""
        return StandardYoungTableau(
            tuple(t for t in (tuple(v for v in r if v <= m) for r in self.rows) if t)
        )

    def __str__(self) -> str:
        return "/".join(" ".join(map(str, r)) for r in self.rows)


@dataclass(frozen=True)
class Tabloid:
    """A Young tableau with unordered rows: row i is a set of lambda_i values."""

    rows: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(frozenset(r) for r in self.rows))
        Partition(len(r) for r in self.rows)
        values = sorted(v for r in self.rows for v in r)
        if values != list(range(1, len(values) + 1)):
            raise ValueError("tabloid entries must be exactly 1..n")

    @property
    def shape(self) -> Partition:
        return Partition(len(r) for r in self.rows)

    def row_of(self, value: int) -> int:
        for i, r in enumerate(self.rows):
            if value in r:
                return i
        raise KeyError(value)


def enumerate_syt(shape: Sequence[int]) -> list[StandardYoungTableau]:
    """All standard tableaux of a shape, found by placing n, n-1, ... into removable corners."""
    shape = Partition(shape)
    n = shape.weight
    if n == 0:
        return [StandardYoungTableau(())]
    out = []

    def rec(current: list[int], filling: dict[tuple[int, int], int], value: int) -> None:
        if value == 0:
            rows = tuple(tuple(filling[(i, j)] for j in range(shape[i])) for i in range(len(shape)))
            out.append(StandardYoungTableau(rows))
            return
        for i in range(len(current)):
            below = current[i + 1] if i + 1 < len(current) else 0
            if current[i] > below:
                current[i] -= 1
                filling[(i, current[i])] = value
                rec(current, filling, value - 1)
                del filling[(i, current[i])]
                current[i] += 1

    rec(list(shape), {}, n)
    out.sort(key=lambda t: t.rows)
    return out


def brute_force_syt_count(shape: Sequence[int]) -> int:
    """Count standard fillings by checking every assignment of 1..n to cells."""
    from itertools import permutations

    shape = Partition(shape)
    cells = [(i, j) for i in range(len(shape)) for j in range(shape[i])]
    count = 0
    for perm in permutations(range(1, len(cells) + 1)):
        fill = dict(zip(cells, perm))
        if all(
            (j == 0 or fill[(i, j - 1)] < v) and (i == 0 or fill[(i - 1, j)] < v)
            for (i, j), v in fill.items()
        ):
            count += 1
    return count


def is_horizontal_strip(outer: Sequence[int], inner: Sequence[int]) -> bool:
    """True iff inner fits inside outer and outer/inner has no two cells in one column."""
    outer, inner = tuple(outer), tuple(inner)
    if len(inner) > len(outer):
        return False
    for i in range(len(outer)):
        lam_i = outer[i]
        mu_i = inner[i] if i < len(inner) else 0
        lam_next = outer[i + 1] if i + 1 < len(outer) else 0
        if not (lam_next <= mu_i <= lam_i):
            return False
    return True


def horizontal_strip_extensions(inner: Sequence[int], size: int) -> Iterator[Partition]:
    """Every lambda with lambda/inner a horizontal strip of the given size."""
    inner = tuple(inner)
    rows = len(inner) + 1
    # row i may grow by at most inner[i-1] - inner[i]; row 0 is unbounded
    caps = [size] + [inner[i - 1] - (inner[i] if i < len(inner) else 0) for i in range(1, rows)]

    def rec(i: int, remaining: int, acc: list[int]) -> Iterator[list[int]]:
        if i == rows:
            if remaining == 0:
                yield list(acc)
            return
        for add in range(min(caps[i], remaining), -1, -1):
            acc.append(add)
            yield from rec(i + 1, remaining - add, acc)
            acc.pop()

    for adds in rec(0, size, []):
        yield Partition.from_multiset(
            (inner[i] if i < len(inner) else 0) + adds[i] for i in range(rows)
        )


def strip_pairs(k: int, n: int) -> list[tuple[Partition, Partition]]:
    """All (mu |- k, lambda |- n) with lambda/mu a horizontal strip, in canonical order."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    pairs = [
        (mu, lam)
        for mu in enumerate_partitions(k)
        for lam in horizontal_strip_extensions(mu, n - k)
    ]
    pairs.sort(key=lambda p: (partition_key(p[0]), partition_key(p[1])))
    return pairs


def falling_factorial(n: int, k: int) -> int:
    """n! / (n-k)!, the number of injections [k] -> [n]."""
    return prod(range(n - k + 1, n + 1))


def skew_cells(outer: Sequence[int], inner: Sequence[int]) -> list[tuple[int, int]]:
    return [
        (i, j)
        for i in range(len(outer))
        for j in range(inner[i] if i < len(inner) else 0, outer[i])
    ]


@dataclass(frozen=True)
class SkewShape:
    outer: Partition
    inner: Partition

    def __post_init__(self):
        outer, inner = Partition(self.outer), Partition(self.inner)
        if len(inner) > len(outer) or any(m > outer[i] for i, m in enumerate(inner)):
            raise ValueError(f"{inner} does not fit inside {outer}")
        object.__setattr__(self, "outer", outer)
        object.__setattr__(self, "inner", inner)

    @property
    def cells(self) -> list[tuple[int, int]]:
        return skew_cells(self.outer, self.inner)

    @property
    def size(self) -> int:
        return self.outer.weight - self.inner.weight

    def is_horizontal_strip(self) -> bool:
        cols = [j for _, j in self.cells]
        return len(cols) == len(set(cols))


__all__ = [
    "Partition",
    "SkewShape",
    "StandardYoungTableau",
    "Tabloid",
    "brute_force_syt_count",
    "enumerate_partitions",
    "enumerate_syt",
    "falling_factorial",
    "horizontal_strip_extensions",
    "is_horizontal_strip",
    "partition_key",
    "skew_cells",
    "strip_pairs",
    "syt_count",
]
