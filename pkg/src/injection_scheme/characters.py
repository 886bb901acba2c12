"""Irreducible characters of the symmetric group (Murnaghan-Nakayama rule)."""
from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Sequence

from .combinatorics import Partition


def _beta_set(shape: tuple[int, ...]) -> list[int]:
    length = len(shape)
    return [shape[i] + length - 1 - i for i in range(length)]


def _from_beta(beta: list[int]) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    length = len(beta)
    return tuple(p for p in (beta[i] - (length - 1 - i) for i in range(length)) if p)


@lru_cache(maxsize=None)
def _mn(shape: tuple[int, ...], cycles: tuple[int, ...]) -> int:
    if not cycles:
        return 1 if not shape else 0
    r, rest = cycles[0], cycles[1:]
    beta = _beta_set(shape)
    occupied = set(beta)
    total = 0
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        # leg length = number of beads jumped over
        height = sum(1 for x in beta if target < x < b)
        new_shape = _from_beta([target if x == b else x for x in beta])
        value = _mn(new_shape, rest)
        total += -value if height % 2 else value
    return total


def sn_character(shape: Sequence[int], cycle_type: Sequence[int]) -> int:
    """chi_shape evaluated on a permutation of the given cycle type."""
    shape, cycle_type = Partition(shape), Partition(cycle_type)
    if shape.weight != cycle_type.weight:
        raise ValueError(f"{shape} and {cycle_type} are partitions of different integers")
    return _mn(tuple(shape), tuple(cycle_type))


def centralizer_size(cycle_type: Sequence[int]) -> int:
    z = 1
    for i, m in Partition(cycle_type).multiplicities().items():
        z *= i**m * factorial(m)
    return z


def conjugacy_class_size(cycle_type: Sequence[int]) -> int:
    cycle_type = Partition(cycle_type)
    return factorial(cycle_type.weight) // centralizer_size(cycle_type)


def cycle_type_of(perm: Sequence[int]) -> Partition:
    """Cycle type of a permutation given in 0-based one-line notation."""
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            lengths.append(length)
    return Partition.from_multiset(lengths)
