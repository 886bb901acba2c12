"""Character table of the (k, n)-injection scheme.

Eigenvalues come from the signed cover count: for the canonical tableau pair
(s, t) of an irrep mu (x) lambda, ``P[irrep, class]`` is the sum over the
class's sphere of the signed number of column-stabiliser images of t whose
tabloid, together with {s}, covers the injection.  Two independent oracles
back it up: the projection formula over K = diag(S_k) x S_{n-k}, and the
common eigenspaces of explicitly built adjacency matrices.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import factorial, lcm
from typing import Sequence

import numpy as np

from .characters import _mn, conjugacy_class_size, sn_character
from .combinatorics import (
    Partition,
    StandardYoungTableau,
    falling_factorial,
    is_horizontal_strip,
    strip_pairs,
    syt_count,
)
from .injections import (
    CyclePathType,
    Injection,
    all_injections,
    classify_pair,
    enumerate_classes,
    sphere_size,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 3 * 10**10
DEFAULT_BRUTE_FORCE_CAP = 10**5


class IntegrityError(RuntimeError):
    """Computed scheme data violates an identity every association scheme satisfies."""


class BudgetExceeded(RuntimeError):
    def __init__(self, estimate: int, budget: int, what: str = "character table"):
        super().__init__(f"{what} needs an estimated {estimate:.3g} operations; budget is {budget:.3g}")
        self.estimate = estimate
        self.budget = budget


@dataclass(frozen=True)
class IrrepLabel:
    mu: Partition
    lam: Partition

    def __post_init__(self):
        object.__setattr__(self, "mu", Partition(self.mu))
        object.__setattr__(self, "lam", Partition(self.lam))
        if not is_horizontal_strip(self.lam, self.mu):
            raise ValueError(f"{self.lam}/{self.mu} is not a horizontal strip")

    @property
    def k(self) -> int:
        return self.mu.weight

    @property
    def n(self) -> int:
        return self.lam.weight

    @property
    def multiplicity(self) -> int:
        return syt_count(self.mu) * syt_count(self.lam)

    def __str__(self) -> str:
        return f"{self.mu}x{self.lam}"


def irrep_labels(k: int, n: int) -> list[IrrepLabel]:
    return [IrrepLabel(mu, lam) for mu, lam in strip_pairs(k, n)]


def irrep_to_class(label: IrrepLabel) -> CyclePathType:
    """Read a cycle-path type off the marked diagram of lambda/mu.

    A column of mu with a strip cell directly below it gives a path of that
    column's length; an unmarked column gives a cycle; strip cells to the
    right of mu (columns with no mu cells) give zero-length paths.
    """
    mu_cols = label.mu.transpose()
    lam_cols = label.lam.transpose()
    cycles, paths = [], []
    for j in range(len(lam_cols)):
        height = mu_cols[j] if j < len(mu_cols) else 0
        marked = lam_cols[j] > height
        (paths if marked else cycles).append(height)
    zero = paths.count(0)
    return CyclePathType(Partition.from_multiset(cycles), Partition.from_multiset(paths), zero)


def canonical_pair(mu: Sequence[int], lam: Sequence[int]) -> tuple[StandardYoungTableau, StandardYoungTableau]:
    """s fills mu with 1..k row by row; t adds the strip lambda/mu labelled k+1..n left to right."""
    mu, lam = Partition(mu), Partition(lam)
    if not is_horizontal_strip(lam, mu):
        raise ValueError(f"{lam}/{mu} is not a horizontal strip")
    k = mu.weight
    s_rows, value = [], 1
    for part in mu:
        s_rows.append(list(range(value, value + part)))
        value += part
    strip = sorted(
        ((i, j) for i in range(len(lam)) for j in range(mu.part(i), lam[i])), key=lambda c: c[1]
    )
    t_rows = [list(r) for r in s_rows] + [[] for _ in range(len(lam) - len(mu))]
    for label, (i, j) in enumerate(strip, start=k + 1):
        t_rows[i].append(label)
    return StandardYoungTableau(tuple(map(tuple, s_rows))), StandardYoungTableau(tuple(map(tuple, t_rows)))


def _det(matrix: list[list[int]]) -> int:
    """Exact integer determinant (Bareiss elimination)."""
    a = [row[:] for row in matrix]
    size = len(a)
    sign, prev = 1, 1
    for c in range(size):
        pivot = next((r for r in range(c, size) if a[r][c]), None)
        if pivot is None:
            return 0
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            sign = -sign
        for r in range(c + 1, size):
            for j in range(c + 1, size):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[-1][-1] if size else 1


def _check_shapes(sigma: Injection, s: StandardYoungTableau, t: StandardYoungTableau) -> None:
    if s.size != sigma.k or t.size != sigma.n or not is_horizontal_strip(t.shape, s.shape):
        raise ValueError("tableau shapes do not form a strip pair for this injection")


def signed_cover_count(sigma: Injection, s: StandardYoungTableau, t: StandardYoungTableau) -> int:
    """Sum of sgn(pi) over pi in C_t such that ({s}, {pi t}) covers sigma.

    C_t is a product of per-column symmetric groups, so the sum factorises as
    a product of determinants of 0/1 placement matrices, one per column of t:
    rows are the column's values, columns its row slots; a value sigma(i) may
    only land in row row_s(i), any other value may land anywhere.
    """
    _check_shapes(sigma, s, t)
    row_s = s.positions()
    preimage = {v: i for i, v in enumerate(sigma.word, start=1)}
    result = 1
    for column in t.columns():
        h = len(column)
        placement = []
        for v in column:
            if v in preimage:
                target = row_s[preimage[v]][0]
                placement.append([1 if r == target else 0 for r in range(h)])
            else:
                placement.append([1] * h)
        result *= _det(placement)
        if not result:
            return 0
    return result


def _column_stabilizer(t: StandardYoungTableau):
    """Yield (sign, mapping value -> value) for every element of C_t."""
    columns = t.columns()
    per_column = [list(permutations(range(len(c)))) for c in columns]
    for choice in product(*per_column):
        mapping, sign = {}, 1
        for col, perm in zip(columns, choice):
            for a, b in enumerate(perm):
                mapping[col[a]] = col[b]
            sign *= _perm_sign(perm)
        yield sign, mapping


def _perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _moved_tabloid_rows(t: StandardYoungTableau, pi: dict[int, int]) -> dict[int, int]:
    """row_{pi t}(v) for every value v: pi t puts pi(x) where x sat in t."""
    return {pi[x]: i for i, row in enumerate(t.rows) for x in row}


def covers(sigma: Injection, s_rows: dict[int, int], t_rows: dict[int, int]) -> bool:
    return all(s_rows[i] == t_rows[sigma(i)] for i in range(1, sigma.k + 1))


def signed_cover_count_bruteforce(sigma: Injection, s: StandardYoungTableau, t: StandardYoungTableau) -> int:
    """Direct enumeration of the signed sum over C_t."""
    _check_shapes(sigma, s, t)
    s_rows = {v: i for i, row in enumerate(s.rows) for v in row}
    return sum(sign for sign, pi in _column_stabilizer(t) if covers(sigma, s_rows, _moved_tabloid_rows(t, pi)))


def double_cover_sum(sigma: Injection, s: StandardYoungTableau, t: StandardYoungTableau) -> int:
    """Signed sum over C_s x C_t of the cover indicator of ({pi s}, {pi' t}).

    This is the value of the polytabloid image e_s (x) e_t at sigma; at the
    identity with the canonical pair it equals |C_s| = prod of factorials of
    the column lengths of mu.
    """
    _check_shapes(sigma, s, t)
    total = 0
    for sign_s, pi_s in _column_stabilizer(s):
        s_rows = _moved_tabloid_rows(s, pi_s)
        for sign_t, pi_t in _column_stabilizer(t):
            if covers(sigma, s_rows, _moved_tabloid_rows(t, pi_t)):
                total += sign_s * sign_t
    return total


def _row_codes(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Like np.unique(rows, axis=0, return_inverse=True) for small nonnegative ints, but fast.

    Columns are packed into int64 keys in chunks that cannot overflow.
    """
    count, width = rows.shape
    base = int(rows.max(initial=0)) + 1
    per_chunk = max(1, int(62 // max(1, np.log2(base + 1))))
    codes = np.zeros(count, dtype=np.int64)
    for start in range(0, width, per_chunk):
        key = np.zeros(count, dtype=np.int64)
        for c in range(start, min(width, start + per_chunk)):
            key = key * base + rows[:, c]
        uniq, inv = np.unique(key, return_inverse=True)
        codes = codes * len(uniq) + inv.reshape(-1)
        _, codes = np.unique(codes, return_inverse=True)
        codes = codes.reshape(-1)
    first = np.zeros(int(codes.max(initial=-1)) + 1, dtype=np.int64)
    first[codes[::-1]] = np.arange(count - 1, -1, -1)
    return rows[first], codes


class InjectionSpace:
    """All injections of S_{k,n} as a numpy array, with their classes relative to the identity."""

    def __init__(self, k: int, n: int):
        self.k, self.n = k, n
        self.classes = enumerate_classes(k, n)
        count = falling_factorial(n, k)
        flat = np.fromiter(
            (v for w in permutations(range(n), k) for v in w), dtype=np.int8, count=count * k
        )
        self.words = flat.reshape(count, k)
        self.unused = self._unused_values()
        self.class_index = self._classify()

    @property
    def size(self) -> int:
        return len(self.words)

    def _unused_values(self) -> np.ndarray:
        count, k, n = self.size, self.k, self.n
        in_image = np.zeros((count, n), dtype=bool)
        rows = np.arange(count)
        for i in range(k):
            in_image[rows, self.words[:, i]] = True
        # stable argsort puts the n-k values outside the image first, in increasing order
        return np.argsort(in_image, axis=1, kind="stable")[:, : n - k].astype(np.int8)

    def _classify(self) -> np.ndarray:
        count, k, n = self.size, self.k, self.n
        if count == 0:
            return np.zeros(0, dtype=np.int64)
        nxt = np.full((count, n + 1), n, dtype=np.int16)
        nxt[:, :k] = self.words
        # cycle length through each domain point
        ret = np.zeros((count, k), dtype=np.int16)
        cur = nxt[:, :k].copy()
        target = np.arange(k, dtype=np.int16)
        for step in range(1, k + 1):
            hit = (cur == target) & (ret == 0)
            ret[hit] = step
            cur = np.take_along_axis(nxt, cur.astype(np.int64), axis=1)
        # path length from each of the n-k heads: domain points visited before leaving [k]
        plen = np.zeros((count, n - k), dtype=np.int16)
        cur = self.unused.astype(np.int64)
        for _ in range(k):
            active = cur < k
            plen += active
            cur = np.where(active, np.take_along_axis(nxt, cur, axis=1), cur)
        sig = np.zeros((count, 2 * k + 2), dtype=np.int16)
        for length in range(1, k + 1):
            sig[:, length] = (ret == length).sum(axis=1) // length
        for length in range(0, k + 1):
            sig[:, k + 1 + length] = (plen == length).sum(axis=1)
        uniq, inverse = _row_codes(sig)
        lookup = {self._signature(c): j for j, c in enumerate(self.classes)}
        mapped = np.array([lookup[tuple(int(x) for x in row)] for row in uniq], dtype=np.int64)
        return mapped[inverse.reshape(-1)]

    def _signature(self, c: CyclePathType) -> tuple[int, ...]:
        k = self.k
        sig = [0] * (2 * k + 2)
        for length, m in c.cycles.multiplicities().items():
            sig[length] = m
        for length, m in c.paths.multiplicities().items():
            sig[k + 1 + length] = m
        sig[k + 1] = c.zero_paths
        return tuple(sig)

    def cover_signs(self, label: IrrepLabel) -> np.ndarray:
        """signed_cover_count for every injection at once, with the canonical pair of the label."""
        s, t = canonical_pair(label.mu, label.lam)
        k, n = self.k, self.n
        count = self.size
        pos_t = t.positions()
        row_s = np.array([s.positions()[i][0] for i in range(1, k + 1)], dtype=np.int16)
        col_t = np.array([pos_t[v][1] for v in range(1, n + 1)], dtype=np.int16)
        heights = np.array(label.lam.transpose(), dtype=np.int16)
        width = len(heights)
        # cell (r, c) -> its t-label minus one, so permutations act on 0..n-1
        cell_label = np.full((len(label.lam), width), -1, dtype=np.int16)
        for v, (r, c) in pos_t.items():
            cell_label[r, c] = v - 1

        cols = col_t[self.words]  # column of each image value
        ok = (row_s[None, :] < heights[cols]).all(axis=1)
        # distinct target cells: images from the same s-row must sit in distinct columns
        for r in range(len(label.mu)):
            idx = np.nonzero(row_s == r)[0]
            for a in range(len(idx)):
                for b in range(a + 1, len(idx)):
                    ok &= cols[:, idx[a]] != cols[:, idx[b]]
        live = np.nonzero(ok)[0]
        cols = cols[live].astype(np.int64)
        words = self.words[live].astype(np.int64)
        rows = np.arange(len(live))
        filled = np.zeros((len(live), width), dtype=np.int16)
        row_sum = np.zeros((len(live), width), dtype=np.int16)
        for i in range(k):
            filled[rows, cols[:, i]] += 1
            row_sum[rows, cols[:, i]] += row_s[i]
        # two free values in one column cancel in pairs
        keep = ((heights[None, :] - filled) <= 1).all(axis=1)
        live, cols, words, rows = live[keep], cols[keep], words[keep], np.arange(int(keep.sum()))
        leftover = ((heights * (heights - 1) // 2)[None, :] - row_sum[keep]).astype(np.int64)

        perm = np.empty((len(live), n), dtype=np.int16)
        perm[rows[:, None], words] = cell_label[row_s[None, :], cols]
        if n > k:
            unused = self.unused[live].astype(np.int64)
            ucols = col_t[unused].astype(np.int64)
            urow = np.take_along_axis(leftover, ucols, axis=1)
            perm[rows[:, None], unused] = cell_label[urow, ucols]
        # value v starts in its own cell of t (label v-1), so the sign is that of perm
        parity = np.zeros(len(live), dtype=bool)
        for a in range(n):
            for b in range(a + 1, n):
                parity ^= perm[:, a] > perm[:, b]
        signs = np.zeros(count, dtype=np.int8)
        signs[live] = np.where(parity, -1, 1)
        return signs

    def eigenvalue_row(self, label: IrrepLabel) -> list[int]:
        signs = self.cover_signs(label)
        d = len(self.classes)
        plus = np.bincount(self.class_index[signs == 1], minlength=d)
        minus = np.bincount(self.class_index[signs == -1], minlength=d)
        return [int(a) - int(b) for a, b in zip(plus, minus)]


@lru_cache(maxsize=8)
def injection_space(k: int, n: int) -> InjectionSpace:
    return InjectionSpace(k, n)


def eigenvalue(label: IrrepLabel, cls: CyclePathType, k: int, n: int) -> int:
    """Sum of the signed cover count over the sphere of cls."""
    if label.k != k or label.n != n:
        raise ValueError(f"{label} is not an irrep of the ({k}, {n}) scheme")
    cls.validate(k, n)
    space = injection_space(k, n)
    j = space.classes.index(cls)
    signs = space.cover_signs(label)
    return int(signs[space.class_index == j].astype(np.int64).sum())


@dataclass
class CharacterTable:
    k: int
    n: int
    classes: list[CyclePathType]
    irreps: list[IrrepLabel]
    P: list[list[int]]
    valencies: list[int] = field(default_factory=list)
    multiplicities: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.valencies:
            self.valencies = [sphere_size(c, self.k, self.n) for c in self.classes]
        if not self.multiplicities:
            self.multiplicities = [lab.multiplicity for lab in self.irreps]

    @property
    def order(self) -> int:
        """|X|, the number of injections."""
        return falling_factorial(self.n, self.k)

    @property
    def size(self) -> int:
        return len(self.classes)

    def class_distances(self) -> list[int]:
        from .injections import class_distance

        return [class_distance(c, self.k) for c in self.classes]


def table_cost(k: int, n: int) -> int:
    """Rough operation count of the combinatorial table assembly."""
    if k == n:
        return len(enumerate_classes(k, n)) ** 2 * n
    return falling_factorial(n, k) * len(strip_pairs(k, n)) * (n * n // 2 + k)


def character_table(
    k: int,
    n: int,
    method: str = "auto",
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> CharacterTable:
    """Exact character table P, rows indexed by irreps and columns by classes.

    ``method`` is "combinatorial" (signed cover counts), "characters"
    (only for k == n: |C| chi(C) / chi(1)), or "auto" which picks the latter
    when k == n.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if method == "auto":
        method = "characters" if k == n else "combinatorial"
    classes = enumerate_classes(k, n)
    irreps = irrep_labels(k, n)
    if method == "characters":
        if k != n:
            raise ValueError("the character path needs k == n")
        P = []
        for lab in irreps:
            dim = syt_count(lab.lam)
            row = []
            for c in classes:
                value = Fraction(conjugacy_class_size(c.cycles) * sn_character(lab.lam, c.cycles), dim)
                if value.denominator != 1:
                    raise IntegrityError(f"non-integral eigenvalue at {lab}, {c}")
                row.append(int(value))
            P.append(row)
        return CharacterTable(k, n, classes, irreps, P)
    if method != "combinatorial":
        raise ValueError(f"unknown method {method!r}")
    cost = table_cost(k, n)
    if cost > budget:
        raise BudgetExceeded(cost, budget)
    space = injection_space(k, n)
    log.info("assembling (%d,%d) table: %d irreps over %d injections", k, n, len(irreps), space.size)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            P = list(pool.map(space.eigenvalue_row, irreps))
    else:
        P = [space.eigenvalue_row(lab) for lab in irreps]
    return CharacterTable(k, n, classes, irreps, P)


# ---------------------------------------------------------------- oracles


def class_representative(cls: CyclePathType, k: int, n: int) -> Injection:
    """An injection of type cls against the identity, laid out block by block."""
    cls.validate(k, n)
    word = [0] * k
    nxt = 1
    for length in cls.cycles:
        block = list(range(nxt, nxt + length))
        for a, b in zip(block, block[1:] + block[:1]):
            word[a - 1] = b
        nxt += length
    outside = iter(range(k + 1, n + 1))
    for length in cls.paths:
        block = list(range(nxt, nxt + length)) + [next(outside)]
        for a, b in zip(block, block[1:]):
            word[a - 1] = b
        nxt += length
    return Injection(tuple(word), n)


def _extend_to_permutation(sigma: Injection) -> list[int]:
    """0-based one-line permutation of [n] agreeing with sigma on [k]."""
    used = set(sigma.word)
    rest = [v for v in range(1, sigma.n + 1) if v not in used]
    return [v - 1 for v in sigma.word] + [v - 1 for v in rest]


def _cycle_signatures(perms: np.ndarray) -> np.ndarray:
    """Row-wise cycle-type counts (column L = number of L-cycles)."""
    count, n = perms.shape
    length = np.zeros((count, n), dtype=np.int16)
    cur = perms.astype(np.int64)
    ident = np.arange(n)
    for step in range(1, n + 1):
        hit = (cur == ident) & (length == 0)
        length[hit] = step
        cur = np.take_along_axis(perms.astype(np.int64), cur, axis=1)
    sig = np.zeros((count, n + 1), dtype=np.int16)
    for size in range(1, n + 1):
        sig[:, size] = (length == size).sum(axis=1) // size
    return sig


def _sig_to_partition(sig: Sequence[int]) -> tuple[int, ...]:
    parts = []
    for size in range(len(sig) - 1, 0, -1):
        parts.extend([size] * int(sig[size]))
    return tuple(parts)


@lru_cache(maxsize=4)
def _subgroup_elements(k: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    """(k1 k2 as permutations of [n], cycle signature of k1 on [k])."""
    k1 = np.array(list(permutations(range(k))), dtype=np.int16).reshape(factorial(k), k)
    k2 = np.array(list(permutations(range(k, n))), dtype=np.int16).reshape(factorial(n - k), n - k)
    a = np.repeat(k1, len(k2), axis=0)
    b = np.tile(k2, (len(k1), 1))
    sig1 = np.repeat(_cycle_signatures(k1) if k else np.zeros((1, 1), np.int16), len(k2), axis=0)
    return np.concatenate([a, b], axis=1), sig1


@lru_cache(maxsize=256)
def _projection_histogram(cls: CyclePathType, k: int, n: int) -> tuple[tuple[tuple, tuple, int], ...]:
    return _histogram_for(class_representative(cls, k, n))


def _histogram_for(rep: Injection) -> tuple[tuple[tuple, tuple, int], ...]:
    """Counts of (cycle type of k1, cycle type of sigma^-1 k1 k2) over K."""
    k, n = rep.k, rep.n
    sigma = _extend_to_permutation(rep)
    sigma_inv = np.empty(n, dtype=np.int64)
    sigma_inv[sigma] = np.arange(n)
    elems, sig1 = _subgroup_elements(k, n)
    composed = sigma_inv[elems.astype(np.int64)]
    sig2 = _cycle_signatures(composed)
    joint = np.concatenate([sig1, sig2], axis=1)
    uniq, codes = _row_codes(joint)
    counts = np.bincount(codes)
    w = sig1.shape[1]
    return tuple(
        (_sig_to_partition(row[:w]), _sig_to_partition(row[w:]), int(c)) for row, c in zip(uniq, counts)
    )


def spherical_oracle(
    label: IrrepLabel,
    cls: CyclePathType,
    k: int,
    n: int,
    cap: int = DEFAULT_BRUTE_FORCE_CAP,
    representative: Injection | None = None,
) -> Fraction:
    """Spherical function value from the projection formula, summed over K.

    ``representative`` overrides the built-in element of the sphere; any
    element must give the same value.
    """
    size = factorial(k) * factorial(n - k)
    if size > cap:
        raise BudgetExceeded(size, cap, "projection-formula oracle")
    if representative is None:
        hist = _projection_histogram(cls, k, n)
    else:
        if classify_pair(Injection.identity(k, n), representative) != cls:
            raise ValueError(f"{representative} is not in the sphere of {cls}")
        hist = _histogram_for(representative)
    total = 0
    for ct1, ct2, count in hist:
        chi_a = sn_character(label.mu, ct1) if k else 1
        total += count * chi_a * sn_character(label.lam, ct2)
    return Fraction(total, size)


def spherical_oracle_table(
    k: int, n: int, cap: int = DEFAULT_BRUTE_FORCE_CAP
) -> list[list[Fraction]]:
    """spherical_oracle for every (irrep, class) of the (k, n) scheme, sharing the K-histograms."""
    size = factorial(k) * factorial(n - k)
    if size > cap:
        raise BudgetExceeded(size, cap, "projection-formula oracle")
    irreps, classes = irrep_labels(k, n), enumerate_classes(k, n)
    columns = []
    for cls in classes:
        hist = _projection_histogram(cls, k, n)
        columns.append(
            [
                Fraction(sum(c * _mn(tuple(lab.mu), a) * _mn(tuple(lab.lam), b) for a, b, c in hist), size)
                for lab in irreps
            ]
        )
    return [[columns[j][i] for j in range(len(classes))] for i in range(len(irreps))]


def adjacency_spectra(k: int, n: int) -> list[tuple[tuple[int, ...], int]]:
    """Common eigenspaces of the explicit adjacency matrices, found numerically.

    Returns (eigenvalue of each A_j, eigenspace dimension) pairs; eigenvalues
    are rounded to integers after checking they are within 1e-6 of one.
    """
    points = list(all_injections(k, n))
    classes = enumerate_classes(k, n)
    index = {c: j for j, c in enumerate(classes)}
    size = len(points)
    labels = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        for b in range(a, size):
            labels[a, b] = labels[b, a] = index[classify_pair(points[a], points[b])]
    mats = [(labels == j).astype(float) for j in range(len(classes))]
    rng = np.random.default_rng(12345)
    weights = rng.normal(size=len(classes))
    combo = sum(w * m for w, m in zip(weights, mats))
    values, vectors = np.linalg.eigh(combo)
    groups: list[list[int]] = []
    for i in range(size):
        if groups and abs(values[i] - values[groups[-1][0]]) < 1e-6:
            groups[-1].append(i)
        else:
            groups.append([i])
    out = []
    for g in groups:
        basis = vectors[:, g]
        eig = []
        for m in mats:
            image = m @ basis
            lam = float(np.sum(basis * image) / len(g))
            if not np.allclose(image, lam * basis, atol=1e-6):
                raise IntegrityError("eigenspace of the combination is not common to all A_j")
            r = round(lam)
            if abs(lam - r) > 1e-6:
                raise IntegrityError(f"non-integral eigenvalue {lam}")
            eig.append(r)
        out.append((tuple(eig), len(g)))
    return out


# ---------------------------------------------------------------- derived data


@dataclass
class DualTable:
    Q: list[list[Fraction]]


def _row_orthogonality_ok(ct: CharacterTable) -> bool:
    """P Q = |X| I with Q given by the closed form, in integer arithmetic."""
    big = lcm(*ct.valencies)
    scale = [big // v for v in ct.valencies]
    X = ct.order
    d = ct.size
    for h in range(d):
        for i in range(d):
            s = sum(ct.P[h][j] * ct.P[i][j] * scale[j] for j in range(d)) * ct.multiplicities[i]
            if s != (X * big if h == i else 0):
                return False
    return True


def dual_table(ct: CharacterTable) -> DualTable:
    """Q = |X| P^-1, via Q[j][i] = m_i P[i][j] / v_j and an exact check of P Q = |X| I."""
    Q = [
        [Fraction(ct.multiplicities[i] * ct.P[i][j], ct.valencies[j]) for i in range(ct.size)]
        for j in range(ct.size)
    ]
    if not _row_orthogonality_ok(ct):
        raise IntegrityError("P Q != |X| I: P is not the character table of a scheme")
    return DualTable(Q)


def intersection_numbers(ct: CharacterTable, check: bool = True) -> np.ndarray:
    """p[i][j][l] = (1 / (|X| v_l)) sum_h m_h P[h,i] P[h,j] P[h,l], as an object array of ints."""
    d = ct.size
    P = np.array(ct.P, dtype=object)
    m = np.array(ct.multiplicities, dtype=object)
    X = ct.order
    out = np.empty((d, d, d), dtype=object)
    for l in range(d):
        weighted = P * (m * P[:, l])[:, None]
        numer = P.T.dot(weighted)
        denom = X * ct.valencies[l]
        for i in range(d):
            for j in range(d):
                value = numer[i, j]
                if check and (value % denom or value < 0):
                    raise IntegrityError(f"p[{i}][{j}]({l}) = {Fraction(value, denom)} is not a nonnegative integer")
                out[i, j, l] = value // denom
    return out


def brute_force_intersection_numbers(k: int, n: int) -> np.ndarray:
    """Count, for a fixed pair (x, y) of class l, the z with (x,z) in class i and (z,y) in class j."""
    classes = enumerate_classes(k, n)
    index = {c: j for j, c in enumerate(classes)}
    points = list(all_injections(k, n))
    d = len(classes)
    x = Injection.identity(k, n)
    rel_x = [index[classify_pair(x, z)] for z in points]
    out = np.zeros((d, d, d), dtype=object)
    for l, cls in enumerate(classes):
        y = class_representative(cls, k, n)
        for z, i in zip(points, rel_x):
            out[i, index[classify_pair(z, y)], l] += 1
    return out


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ValidationReport:
    k: int
    n: int
    level: str
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def lines(self) -> list[str]:
        return [f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail else "") for c in self.checks]


def _first(pred_cells) -> str:
    for cell in pred_cells:
        return cell
    return ""


def validate(ct: CharacterTable, level: str = "algebraic", cap: int = DEFAULT_BRUTE_FORCE_CAP) -> ValidationReport:
    """Run the integrity checks; failures carry the offending (irrep, class) location."""
    if level not in ("algebraic", "bruteforce"):
        raise ValueError("level must be 'algebraic' or 'bruteforce'")
    checks: list[Check] = []
    d, P, X = ct.size, ct.P, ct.order

    def add(name: str, bad: str) -> None:
        checks.append(Check(name, not bad, bad))

    square = len(P) == d and all(len(r) == d for r in P) and len(ct.irreps) == d
    add("square table", "" if square else f"{len(P)} rows for {d} classes")
    if not square:
        return ValidationReport(ct.k, ct.n, level, checks)
    add("integer entries", _first(f"{ct.irreps[i]}, {ct.classes[j]}" for i in range(d) for j in range(d) if not isinstance(P[i][j], int)))
    add("identity column is all ones", _first(f"{ct.irreps[i]}" for i in range(d) if P[i][0] != 1))
    add("trivial row equals valencies", _first(f"{ct.classes[j]}" for j in range(d) if P[0][j] != ct.valencies[j]))
    add("valencies sum to |X|", "" if sum(ct.valencies) == X else f"{sum(ct.valencies)} != {X}")
    add("multiplicities sum to |X|", "" if sum(ct.multiplicities) == X else f"{sum(ct.multiplicities)} != {X}")
    bad = ""
    for i in range(d):
        for j in range(i, d):
            s = sum(ct.multiplicities[h] * P[h][i] * P[h][j] for h in range(d))
            if s != (X * ct.valencies[i] if i == j else 0):
                bad = f"classes {ct.classes[i]}, {ct.classes[j]}"
                break
        if bad:
            break
    add("column orthogonality", bad)
    add("P Q = |X| I", "" if _row_orthogonality_ok(ct) else "row orthogonality fails")
    try:
        p = intersection_numbers(ct)
        sym = _first(f"p[{i}][{j}]" for i in range(d) for j in range(d) for l in range(d) if p[i, j, l] != p[j, i, l])
        add("intersection numbers are nonnegative integers", sym)
    except IntegrityError as exc:
        add("intersection numbers are nonnegative integers", str(exc))

    if level == "bruteforce":
        size = factorial(ct.k) * factorial(ct.n - ct.k)
        if size <= cap:
            omega = spherical_oracle_table(ct.k, ct.n, cap)
            add(
                "projection-formula oracle",
                _first(
                    f"{ct.irreps[i]}, {ct.classes[j]}"
                    for i in range(d)
                    for j in range(d)
                    if omega[i][j] * ct.valencies[j] != P[i][j]
                ),
            )
        else:
            checks.append(Check("projection-formula oracle", True, f"skipped: k!(n-k)! = {size} > cap"))
        if X <= 720:
            spectra = sorted(adjacency_spectra(ct.k, ct.n))
            mine = sorted((tuple(r), m) for r, m in zip(P, ct.multiplicities))
            add("adjacency common eigenspaces", "" if spectra == mine else "eigenvalue/dimension multiset differs")
        else:
            checks.append(Check("adjacency common eigenspaces", True, f"skipped: |X| = {X} > 720"))
    return ValidationReport(ct.k, ct.n, level, checks)


__all__ = [
    "BudgetExceeded",
    "CharacterTable",
    "Check",
    "DualTable",
    "IntegrityError",
    "IrrepLabel",
    "ValidationReport",
    "adjacency_spectra",
    "brute_force_intersection_numbers",
    "canonical_pair",
    "character_table",
    "class_representative",
    "double_cover_sum",
    "dual_table",
    "eigenvalue",
    "intersection_numbers",
    "irrep_labels",
    "irrep_to_class",
    "signed_cover_count",
    "signed_cover_count_bruteforce",
    "sn_character",
    "spherical_oracle",
    "spherical_oracle_table",
    "validate",
]
