"""Delsarte LP bounds for injection codes and the classical comparison bounds."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Sequence

from .combinatorics import falling_factorial
from .injections import class_distance
from .lp import simplex_max
from .scheme import DEFAULT_BUDGET, CharacterTable, DualTable, character_table, dual_table


@dataclass(frozen=True)
class DistanceSet:
    """Allowed Hamming distances, a subset of 1..k, plus how the user wrote it."""

    k: int
    allowed: frozenset
    kind: str = "explicit"  # "min", "equidistant" or "explicit"

    def __post_init__(self):
        allowed = frozenset(int(d) for d in self.allowed)
        object.__setattr__(self, "allowed", allowed)
        if not allowed:
            raise ValueError("distance set must be nonempty")
        if any(not 1 <= d <= self.k for d in allowed):
            raise ValueError(f"distances must lie in 1..{self.k}: {sorted(allowed)}")
        if self.kind not in ("min", "equidistant", "explicit"):
            raise ValueError(f"unknown distance-set kind {self.kind!r}")

    @classmethod
    def min_distance(cls, d: int, k: int) -> "DistanceSet":
        return cls(k, frozenset(range(d, k + 1)), "min")

    @classmethod
    def equidistant(cls, d: int, k: int) -> "DistanceSet":
        return cls(k, frozenset([d]), "equidistant")

    @classmethod
    def explicit(cls, distances: Iterable[int], k: int) -> "DistanceSet":
        return cls(k, frozenset(distances), "explicit")

    @property
    def min(self) -> int:
        return min(self.allowed)

    def complement(self) -> "DistanceSet":
        return DistanceSet(self.k, frozenset(range(1, self.k + 1)) - self.allowed, "explicit")

    def is_proper(self) -> bool:
        return len(self.allowed) < self.k

    def __str__(self) -> str:
        if self.kind == "min":
            return f"d>={self.min}"
        return "{" + ",".join(map(str, sorted(self.allowed))) + "}"


@dataclass
class BoundReport:
    k: int
    n: int
    distances: DistanceSet
    lp_optimum: Fraction
    lp_bound: int
    singleton: int | None = None
    sphere_packing: int | None = None
    trivial_cc: int | None = None
    certificate: list[Fraction] = field(default_factory=list)

    @property
    def best(self) -> int:
        return min(b for b in (self.lp_bound, self.singleton, self.sphere_packing, self.trivial_cc) if b is not None)


def allowed_classes(table: CharacterTable, distances: DistanceSet) -> set[int]:
    """Indices of the non-identity classes whose Hamming distance lies in the set."""
    if distances.k != table.k:
        raise ValueError("distance set and table disagree on k")
    return {
        j
        for j, c in enumerate(table.classes)
        if j != 0 and class_distance(c, table.k) in distances.allowed
    }


def solve_lp(dual: DualTable, allowed: Iterable[int]) -> tuple[Fraction, list[Fraction]]:
    """Maximise sum(a) over a >= 0 with a_0 = 1, a_j = 0 off `allowed`, and a Q >= 0.

    Class 0 must be the identity class.  Returns the optimum and the optimal
    inner distribution (length d, entry 0 equal to 1).
    """
    Q = dual.Q
    d = len(Q)
    cols = sorted(set(allowed) - {0})
    if not cols:
        return Fraction(1), [Fraction(1)] + [Fraction(0)] * (d - 1)
    # (a Q)_i = Q[0][i] + sum_j a_j Q[j][i] >= 0   <=>   sum_j -Q[j][i] a_j <= Q[0][i]
    A = [[-Q[j][i] for j in cols] for i in range(d)]
    b = [Q[0][i] for i in range(d)]
    value, x = simplex_max([1] * len(cols), A, b)
    a = [Fraction(0)] * d
    a[0] = Fraction(1)
    for j, v in zip(cols, x):
        a[j] = v
    return 1 + value, a


@lru_cache(maxsize=64)
def _cached_table(k: int, n: int, budget: int) -> tuple[CharacterTable, DualTable]:
    table = character_table(k, n, budget=budget)
    return table, dual_table(table)


def table_with_dual(k: int, n: int, budget: int = DEFAULT_BUDGET) -> tuple[CharacterTable, DualTable]:
    return _cached_table(k, n, budget)


def lp_optimum(k: int, n: int, distances: DistanceSet, table: CharacterTable | None = None) -> Fraction:
    if table is None:
        table, dual = table_with_dual(k, n)
    else:
        dual = dual_table(table)
    return solve_lp(dual, allowed_classes(table, distances))[0]


def singleton_bound(n: int, k: int, d: int) -> int:
    if not 1 <= d <= k <= n:
        raise ValueError("need 1 <= d <= k <= n")
    return factorial(n) // factorial(n - k + d - 1)


def ball_size(n: int, k: int, r: int) -> int:
    """Injections within Hamming distance r of a fixed one."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    total = 0
    for j in range(min(r, k) + 1):
        inner = sum(
            (-1) ** i * comb(j, i) * factorial(n - k + j - i) // factorial(n - k) for i in range(j + 1)
        )
        total += comb(k, j) * inner
    return total


def sphere_packing_bound(n: int, k: int, d: int) -> int:
    if d < 1:
        raise ValueError("d must be positive")
    return falling_factorial(n, k) // ball_size(n, k, (d - 1) // 2)


def trivial_cc_bound(k: int, n: int, distances: DistanceSet, table: CharacterTable | None = None) -> int:
    """floor(|X| / LP bound of the complementary distance set), the LP bound being floored first."""
    if not distances.is_proper():
        raise ValueError("clique-coclique bound needs a proper distance set")
    complement = lp_optimum(k, n, distances.complement(), table)
    return falling_factorial(n, k) // (complement.numerator // complement.denominator)


def separating_check(k: int, n: int, distances: DistanceSet, table: CharacterTable | None = None) -> bool:
    """True iff M_LP(D) * M_LP(D^c) == |X| with M_LP the floored LP bound.

    Flooring matches the integer bounds the tables report; with exact optima
    every D of (5,3) would meet the equality.
    """
    if not distances.is_proper():
        raise ValueError("need a proper nonempty distance set")
    a = lp_optimum(k, n, distances, table)
    b = lp_optimum(k, n, distances.complement(), table)
    return (a.numerator // a.denominator) * (b.numerator // b.denominator) == falling_factorial(n, k)


def delsarte_bound(
    k: int,
    n: int,
    distances: DistanceSet,
    table: CharacterTable | None = None,
    budget: int = DEFAULT_BUDGET,
) -> BoundReport:
    if table is None:
        table, dual = table_with_dual(k, n, budget)
    else:
        dual = dual_table(table)
    optimum, a = solve_lp(dual, allowed_classes(table, distances))
    report = BoundReport(k, n, distances, optimum, optimum.numerator // optimum.denominator, certificate=a)
    report.singleton = singleton_bound(n, k, distances.min)
    report.sphere_packing = sphere_packing_bound(n, k, distances.min)
    if distances.kind != "min" and distances.is_proper():
        complement = solve_lp(dual, allowed_classes(table, distances.complement()))[0]
        report.trivial_cc = falling_factorial(n, k) // (complement.numerator // complement.denominator)
    return report


def inner_distribution(code: Sequence, table: CharacterTable) -> list[Fraction]:
    """a_j = (number of ordered pairs of the code in class j) / |code|."""
    from .injections import classify_pair

    index = {c: j for j, c in enumerate(table.classes)}
    counts = [0] * table.size
    for x in code:
        for y in code:
            counts[index[classify_pair(x, y)]] += 1
    return [Fraction(c, len(code)) for c in counts]
