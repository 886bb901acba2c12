import random
from fractions import Fraction
from itertools import combinations
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from injection_scheme.bounds import (
    DistanceSet,
    allowed_classes,
    ball_size,
    delsarte_bound,
    inner_distribution,
    lp_optimum,
    separating_check,
    singleton_bound,
    solve_lp,
    sphere_packing_bound,
    table_with_dual,
    trivial_cc_bound,
)
from injection_scheme.cli import golden_rows
from injection_scheme.injections import Injection, all_injections, classify_pair, hamming_distance
from injection_scheme.lp import InfeasibleStart, UnboundedLP, simplex_max
from injection_scheme.scheme import CharacterTable, character_table

SMALL_KN = [(2, 3), (2, 4), (3, 4), (3, 5), (4, 5), (3, 6), (4, 6)]


def all_distance_sets(k):
    return [DistanceSet.explicit(c, k) for r in range(1, k + 1) for c in combinations(range(1, k + 1), r)]


# ---------------------------------------------------------------- simplex


def test_simplex_small_problem():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    opt, x = simplex_max([3, 2], [[1, 1], [1, 3], [1, 0]], [4, 6, 3])
    assert opt == 11 and x == [3, 1]


def test_simplex_fractional_optimum():
    opt, x = simplex_max([1, 1], [[2, 1], [1, 2]], [1, 1])
    assert opt == Fraction(2, 3) and x == [Fraction(1, 3), Fraction(1, 3)]


def test_simplex_errors():
    with pytest.raises(UnboundedLP):
        simplex_max([1, 0], [[0, 1]], [1])
    with pytest.raises(InfeasibleStart):
        simplex_max([1], [[1]], [-1])


def test_simplex_degenerate_does_not_cycle():
    # the classic Beale example cycles under the largest-coefficient rule
    c = [Fraction(3, 4), -150, Fraction(1, 50), -6]
    A = [[Fraction(1, 4), -60, Fraction(-1, 25), 9], [Fraction(1, 2), -90, Fraction(-1, 50), 3], [0, 0, 1, 0]]
    opt, _ = simplex_max(c, A, [0, 0, 1])
    assert opt == Fraction(1, 20)


# ---------------------------------------------------------------- distance sets


def test_distance_set_validation():
    assert DistanceSet.min_distance(2, 4).allowed == {2, 3, 4}
    assert DistanceSet.equidistant(3, 4).allowed == {3}
    assert DistanceSet.explicit([1, 3], 4).complement().allowed == {2, 4}
    assert str(DistanceSet.min_distance(3, 5)) == "d>=3"
    assert str(DistanceSet.explicit([3, 1], 5)) == "{1,3}"
    for bad in ([], [0], [5]):
        with pytest.raises(ValueError):
            DistanceSet.explicit(bad, 4)
    assert not DistanceSet.min_distance(1, 3).is_proper()


def test_allowed_classes_examples():
    ct = character_table(5, 5)
    got = {ct.classes[j].cycles for j in allowed_classes(ct, DistanceSet.explicit([2, 4, 5], 5))}
    assert got == {(2, 1, 1, 1), (2, 2, 1), (4, 1), (3, 2), (5,)}
    ct = character_table(2, 4)
    got = {str(ct.classes[j]) for j in allowed_classes(ct, DistanceSet.explicit([2], 2))}
    assert got == {"(2|0^2)", "(-|0,2)", "(-|1^2)"}
    assert allowed_classes(ct, DistanceSet.min_distance(1, 2)) == set(range(1, ct.size))


# ---------------------------------------------------------------- LP


@pytest.mark.parametrize("k,n", SMALL_KN)
def test_lp_extremes(k, n):
    table, dual = table_with_dual(k, n)
    assert solve_lp(dual, range(1, table.size))[0] == table.order
    assert solve_lp(dual, [])[0] == 1


def test_lp_examples():
    assert delsarte_bound(6, 7, DistanceSet.min_distance(4, 6)).lp_bound == 199
    assert delsarte_bound(6, 8, DistanceSet.min_distance(3, 6)).lp_bound == 1513
    r = delsarte_bound(3, 5, DistanceSet.equidistant(2, 3))
    assert (r.lp_bound, r.trivial_cc) == (5, 6)
    r = delsarte_bound(3, 5, DistanceSet.explicit([1, 3], 3))
    assert (r.lp_bound, r.trivial_cc) == (10, 12)
    r = delsarte_bound(4, 5, DistanceSet.explicit([2, 4], 4))
    assert (r.lp_optimum, r.lp_bound, r.trivial_cc) == (12, 12, 13)


@pytest.mark.parametrize("k,n", SMALL_KN)
def test_certificate_is_feasible(k, n):
    table, dual = table_with_dual(k, n)
    for D in all_distance_sets(k):
        allowed = allowed_classes(table, D)
        opt, a = solve_lp(dual, allowed)
        assert a[0] == 1 and sum(a) == opt
        assert all(x >= 0 for x in a)
        assert all(a[j] == 0 for j in range(1, table.size) if j not in allowed)
        assert all(sum(a[j] * dual.Q[j][i] for j in range(table.size)) >= 0 for i in range(table.size))


@pytest.mark.parametrize("k,n", SMALL_KN)
def test_lp_monotone_in_distance_set(k, n):
    sets = all_distance_sets(k)
    opts = {D.allowed: lp_optimum(k, n, D) for D in sets}
    for a in opts:
        for b in opts:
            if a <= b:
                assert opts[a] <= opts[b]
    bounds = [delsarte_bound(k, n, DistanceSet.min_distance(d, k)).lp_bound for d in range(1, k + 1)]
    assert bounds == sorted(bounds, reverse=True)


@pytest.mark.parametrize("k,n", SMALL_KN)
def test_clique_coclique_inequality(k, n):
    X = factorial(n) // factorial(n - k)
    for D in all_distance_sets(k):
        if D.is_proper():
            assert lp_optimum(k, n, D) * lp_optimum(k, n, D.complement()) <= X
            assert trivial_cc_bound(k, n, D) >= delsarte_bound(k, n, D).lp_bound


def _permuted(ct: CharacterTable, order):
    # keep the identity class first; shuffle the others and the irreps
    irr = [0] + random.Random(3).sample(range(1, ct.size), ct.size - 1)
    return CharacterTable(
        ct.k,
        ct.n,
        [ct.classes[j] for j in order],
        [ct.irreps[i] for i in irr],
        [[ct.P[i][j] for j in order] for i in irr],
    )


@pytest.mark.parametrize("k,n", [(3, 5), (4, 6), (5, 7)])
def test_lp_order_independent(k, n):
    ct = character_table(k, n)
    order = [0] + random.Random(k * n).sample(range(1, ct.size), ct.size - 1)
    shuffled = _permuted(ct, order)
    for D in all_distance_sets(k):
        assert lp_optimum(k, n, D, shuffled) == lp_optimum(k, n, D)


# ---------------------------------------------------------------- classical bounds


def test_singleton_examples():
    assert singleton_bound(9, 8, 5) == 3024
    assert singleton_bound(7, 4, 1) == 7 * 6 * 5 * 4
    assert singleton_bound(6, 6, 6) == 6
    with pytest.raises(ValueError):
        singleton_bound(5, 3, 4)


def brute_ball(k, n, r):
    ident = Injection.identity(k, n)
    return sum(hamming_distance(ident, s) <= r for s in all_injections(k, n))


def test_ball_size_examples():
    assert ball_size(7, 4, 0) == 1
    assert ball_size(5, 3, 1) == 7
    assert ball_size(6, 4, 2) == brute_ball(4, 6, 2)
    with pytest.raises(ValueError):
        ball_size(5, 3, -1)


@pytest.mark.parametrize("k,n", [(k, n) for n in range(1, 7) for k in range(1, min(n, 4) + 1)])
def test_ball_size_exhaustive(k, n):
    for r in range(k + 1):
        assert ball_size(n, k, r) == brute_ball(k, n, r)


def test_sphere_packing_examples():
    assert sphere_packing_bound(5, 3, 1) == 60
    assert sphere_packing_bound(5, 3, 3) == 8
    r = delsarte_bound(6, 8, DistanceSet.min_distance(3, 6))
    assert r.sphere_packing > r.lp_bound and r.singleton > r.lp_bound and r.best == 1513


# ---------------------------------------------------------------- clique-coclique and separation


def test_trivial_cc_examples():
    assert trivial_cc_bound(3, 5, DistanceSet.explicit([2], 3)) == 6
    assert trivial_cc_bound(6, 7, DistanceSet.explicit([4], 6)) == 30
    assert trivial_cc_bound(3, 5, DistanceSet.explicit([1, 3], 3)) == 12
    with pytest.raises(ValueError):
        trivial_cc_bound(3, 5, DistanceSet.min_distance(1, 3))


def test_separating_examples():
    D = DistanceSet.explicit([2], 3)
    assert not separating_check(3, 5, D)
    assert separating_check(3, 5, D) == separating_check(3, 5, D.complement())
    assert any(separating_check(3, 5, D) for D in all_distance_sets(3) if D.is_proper())


def test_published_general_rows_are_strict():
    # the general-distance tables only list D with M_LP(D) M_LP(D^c) < |X|
    for row in golden_rows():
        if row.table in (3, 4) and row.n <= 7:
            assert not separating_check(row.k, row.n, row.distance_set())


# ---------------------------------------------------------------- real codes


def maximal_codes(k, n, D):
    """Every maximal D-code containing the identity (Bron-Kerbosch with pivoting)."""
    points = list(all_injections(k, n))
    adj = {p: {q for q in points if q != p and hamming_distance(p, q) in D} for p in points}
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in list(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    ident = points[0]
    expand([ident], set(adj[ident]), set())
    return out


@pytest.mark.parametrize("k,n", [(2, 3), (2, 4), (3, 4), (3, 5)])
def test_exhaustive_codes_obey_lp(k, n):
    table, dual = table_with_dual(k, n)
    points = list(all_injections(k, n))
    where = {p: i for i, p in enumerate(points)}
    index = {c: j for j, c in enumerate(table.classes)}
    rel = [[index[classify_pair(a, b)] for b in points] for a in points]
    for D in all_distance_sets(k):
        if len(D.allowed) == k:
            continue
        bound = delsarte_bound(k, n, D).lp_bound
        seen = set()
        for code in maximal_codes(k, n, D.allowed):
            ids = [where[p] for p in code]
            counts = [0] * table.size
            for a in ids:
                for b in ids:
                    counts[rel[a][b]] += 1
            seen.add((len(ids), tuple(counts)))
        for size, counts in seen:
            assert size <= bound
            a = [Fraction(c, size) for c in counts]
            assert all(sum(a[j] * dual.Q[j][i] for j in range(table.size)) >= 0 for i in range(table.size))


def test_inner_distribution_of_whole_space():
    table = character_table(2, 4)
    a = inner_distribution(list(all_injections(2, 4)), table)
    assert a == table.valencies
    code = [Injection((1, 2), 4), Injection((3, 4), 4)]
    a = inner_distribution(code, table)
    assert a[0] == 1 and sum(a) == 2


@settings(max_examples=40, deadline=None)
@given(st.sets(st.integers(1, 5), min_size=1), st.sets(st.integers(1, 5)))
def test_lp_monotone_property(small, extra):
    D, bigger = DistanceSet.explicit(small, 5), DistanceSet.explicit(small | extra, 5)
    assert lp_optimum(5, 7, D) <= lp_optimum(5, 7, bigger)
