"""Injections [k] -> [n], their cycle-path classification, sphere sizes and RSK."""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import permutations
from math import factorial
from typing import Iterator, Sequence

from .combinatorics import (
    Partition,
    StandardYoungTableau,
    enumerate_partitions,
    falling_factorial,
    is_horizontal_strip,
    partition_key,
)


class DimensionError(ValueError):
    """Two objects live over different (k, n)."""


@dataclass(frozen=True)
class Injection:
    """A word of k distinct values from 1..n; position i holds the image of i."""

    word: tuple[int, ...]
    n: int

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        object.__setattr__(self, "word", word)
        if len(set(word)) != len(word):
            raise ValueError(f"values must be distinct: {word}")
        if any(not 1 <= v <= self.n for v in word):
            raise ValueError(f"values must lie in 1..{self.n}: {word}")

    @property
    def k(self) -> int:
        return len(self.word)

    @classmethod
    def identity(cls, k: int, n: int) -> "Injection":
        return cls(tuple(range(1, k + 1)), n)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def act(self, tau: Sequence[int], pi: Sequence[int]) -> "Injection":
        """Apply (tau, pi) in S_k x S_n as sigma -> pi o sigma o tau^-1 (one-line notation, 1-based)."""
        if len(tau) != self.k or len(pi) != self.n:
            raise DimensionError("group element does not match (k, n)")
        tau_inv = [0] * self.k
        for i, t in enumerate(tau, start=1):
            tau_inv[t - 1] = i
        return Injection(tuple(pi[self.word[tau_inv[i] - 1] - 1] for i in range(self.k)), self.n)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.word)) + ")"


def all_injections(k: int, n: int) -> Iterator[Injection]:
    """Every injection in lexicographic order of words."""
    for w in permutations(range(1, n + 1), k):
        yield Injection(w, n)


@dataclass(frozen=True, order=False)
class CyclePathType:
    """Label (lambda | rho) of an orbital: cycle half-lengths and path half-lengths.

    ``paths`` holds the positive path lengths; ``zero_paths`` counts the
    isolated codomain points so that ``len(paths) + zero_paths == n - k``.
    """

    cycles: Partition
    paths: Partition
    zero_paths: int

    def __post_init__(self):
        object.__setattr__(self, "cycles", Partition(self.cycles))
        object.__setattr__(self, "paths", Partition(self.paths))
        if self.zero_paths < 0:
            raise ValueError("zero_paths must be nonnegative")

    @property
    def k(self) -> int:
        return self.cycles.weight + self.paths.weight

    @property
    def n(self) -> int:
        return self.k + len(self.paths) + self.zero_paths

    def validate(self, k: int, n: int) -> None:
        if self.k != k or self.n != n:
            raise ValueError(f"{self} is not a cycle-path type for (k, n) = ({k}, {n})")

    def sort_key(self) -> tuple:
        return (class_distance(self, self.k), partition_key(self.cycles), partition_key(self.paths))

    def __str__(self) -> str:
        def fmt(parts: Sequence[int], reverse: bool) -> str:
            if not parts:
                return "-"
            out = []
            for p in sorted(set(parts), reverse=reverse):
                c = list(parts).count(p)
                out.append(f"{p}^{c}" if c > 1 else str(p))
            return ",".join(out)

        rho = [0] * self.zero_paths + list(self.paths)
        return f"({fmt(self.cycles, True)}|{fmt(rho, False)})"


def classify_pair(a: Injection, b: Injection) -> CyclePathType:
    """Cycle-path type of the multigraph union of two injections seen as matchings [k] -- [n]."""
    if a.k != b.k or a.n != b.n:
        raise DimensionError(f"injections over different (k, n): {a}, {b}")
    k, n = a.k, a.n
    # domain vertex i (0..k-1) is joined to codomain a(i) and b(i)
    right_adj: list[list[int]] = [[] for _ in range(n)]
    for i in range(k):
        right_adj[a.word[i] - 1].append(i)
        right_adj[b.word[i] - 1].append(i)
    seen_left = [False] * k
    seen_right = [False] * n
    cycles, paths = [], []
    zero = 0
    for start in range(n):
        if seen_right[start]:
            continue
        if not right_adj[start]:
            seen_right[start] = True
            zero += 1
            continue
        stack = [("R", start)]
        n_left, open_end = 0, False
        while stack:
            side, v = stack.pop()
            if side == "R":
                if seen_right[v]:
                    continue
                seen_right[v] = True
                if len(right_adj[v]) < 2:
                    open_end = True
                stack.extend(("L", i) for i in right_adj[v])
            else:
                if seen_left[v]:
                    continue
                seen_left[v] = True
                n_left += 1
                stack.append(("R", a.word[v] - 1))
                stack.append(("R", b.word[v] - 1))
        (paths if open_end else cycles).append(n_left)
    return CyclePathType(Partition.from_multiset(cycles), Partition.from_multiset(paths), zero)


def enumerate_classes(k: int, n: int) -> list[CyclePathType]:
    """Every cycle-path type for (k, n): by distance, then cycles, then paths."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    out = []
    for c in range(k + 1):
        for lam in enumerate_partitions(c):
            for rho in enumerate_partitions(k - c, max_parts=n - k):
                out.append(CyclePathType(lam, rho, n - k - len(rho)))
    out.sort(key=CyclePathType.sort_key)
    return out


def sphere_size(t: CyclePathType, k: int, n: int) -> int:
    """Number of injections whose pair with the identity has type t."""
    t.validate(k, n)
    denom = 1
    for i, m in t.cycles.multiplicities().items():
        denom *= i**m * factorial(m)
    for m in t.paths.multiplicities().values():
        denom *= factorial(m)
    denom *= factorial(t.zero_paths)
    return factorial(k) * factorial(n - k) // denom


def hamming_distance(a: Injection, b: Injection) -> int:
    if a.k != b.k or a.n != b.n:
        raise DimensionError(f"injections over different (k, n): {a}, {b}")
    return sum(x != y for x, y in zip(a.word, b.word))


def class_distance(t: CyclePathType, k: int) -> int:
    """Hamming distance realised by every pair of type t: k minus the number of fixed points."""
    return k - t.cycles.multiplicities().get(1, 0)


def _row_insert(rows: list[list[int]], x: int) -> tuple[int, int]:
    r = 0
    while True:
        if r == len(rows):
            rows.append([x])
            return r, 0
        row = rows[r]
        j = bisect_right(row, x)
        if j == len(row):
            row.append(x)
            return r, j
        row[j], x = x, row[j]
        r += 1


def rsk(a: Injection) -> tuple[StandardYoungTableau, StandardYoungTableau]:
    """Insertion tableau of shape lambda |- n and recording tableau of shape mu |- k.

    The injection is read as the two-line array whose top row is 1..k
    followed by n-k copies of k+1 and whose bottom row lists the images and
    then the unused values in increasing order.  The recording cells of the
    repeated k+1 form the strip lambda/mu and are dropped.
    """
    k, n = a.k, a.n
    used = set(a.word)
    bottom = list(a.word) + [v for v in range(1, n + 1) if v not in used]
    p_rows: list[list[int]] = []
    q_rows: list[list[int]] = []
    for step, x in enumerate(bottom, start=1):
        r, c = _row_insert(p_rows, x)
        if r == len(q_rows):
            q_rows.append([])
        q_rows[r].append(min(step, k + 1))
    q_std = [[v for v in row if v <= k] for row in q_rows]
    return (
        StandardYoungTableau(tuple(map(tuple, p_rows))),
        StandardYoungTableau(tuple(tuple(r) for r in q_std if r)),
    )


def rsk_inverse(p: StandardYoungTableau, q: StandardYoungTableau) -> Injection:
    """Recover the injection from its (P, Q) pair."""
    lam, mu = p.shape, q.shape
    if not is_horizontal_strip(lam, mu):
        raise ValueError(f"shape {lam} / {mu} is not a horizontal strip")
    n, k = lam.weight, mu.weight
    p_rows = [list(r) for r in p.rows]
    # label of every cell of lambda; strip cells carry k+1
    labels = [[k + 1] * len(r) for r in p_rows]
    for i, r in enumerate(q.rows):
        labels[i][: len(r)] = r
    # removal order: strip cells right to left, then k, k-1, ..., 1
    strip = sorted(
        ((i, j) for i in range(len(labels)) for j in range(len(labels[i])) if labels[i][j] == k + 1),
        key=lambda c: -c[1],
    )
    where = {labels[i][j]: (i, j) for i in range(len(labels)) for j in range(len(labels[i])) if labels[i][j] <= k}
    order = strip + [where[v] for v in range(k, 0, -1)]
    bottom = []
    for r, c in order:
        if c != len(p_rows[r]) - 1 or (r + 1 < len(p_rows) and len(p_rows[r + 1]) > c):
            raise ValueError("recording tableau is not consistent with a reverse bump")
        x = p_rows[r].pop()
        if not p_rows[r]:
            p_rows.pop()
        for rr in range(r - 1, -1, -1):
            row = p_rows[rr]
            j = bisect_left(row, x) - 1
            row[j], x = x, row[j]
        bottom.append(x)
    bottom.reverse()
    tail = bottom[k:]
    if tail != sorted(tail):
        raise ValueError("tableau pair does not come from an injection")
    return Injection(tuple(bottom[:k]), n)


def injection_count(k: int, n: int) -> int:
    return falling_factorial(n, k)
