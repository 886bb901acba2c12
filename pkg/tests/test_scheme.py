import random
from fractions import Fraction
from math import factorial, prod

import pytest
from hypothesis import given, settings, strategies as st

from injection_scheme.characters import conjugacy_class_size, sn_character
from injection_scheme.combinatorics import Partition, enumerate_syt, strip_pairs, syt_count
from injection_scheme.injections import (
    CyclePathType,
    Injection,
    all_injections,
    classify_pair,
    enumerate_classes,
)
from injection_scheme.scheme import (
    BudgetExceeded,
    CharacterTable,
    IntegrityError,
    IrrepLabel,
    brute_force_intersection_numbers,
    canonical_pair,
    character_table,
    double_cover_sum,
    dual_table,
    eigenvalue,
    injection_space,
    intersection_numbers,
    irrep_labels,
    irrep_to_class,
    signed_cover_count,
    signed_cover_count_bruteforce,
    spherical_oracle,
    spherical_oracle_table,
    table_cost,
    validate,
)


def cpt(cycles, paths, zero):
    return CyclePathType(Partition(cycles), Partition(paths), zero)


# ---------------------------------------------------------------- labels


def test_irrep_labels_cover_the_space():
    for n in range(1, 8):
        for k in range(1, n + 1):
            labels = irrep_labels(k, n)
            assert sum(lab.multiplicity for lab in labels) == factorial(n) // factorial(n - k)
            assert labels[0] == IrrepLabel((k,), (n,))


def test_irrep_label_rejects_non_strip():
    with pytest.raises(ValueError):
        IrrepLabel((1,), (2, 2))


def test_irrep_to_class_examples():
    assert irrep_to_class(IrrepLabel((2, 1), (4, 2, 1))) == cpt((), (2, 1), 2)
    assert irrep_to_class(IrrepLabel((2, 1), (5, 1, 1))) == cpt((1,), (2,), 3)
    assert irrep_to_class(IrrepLabel((2, 1), (5, 2))) == cpt((2,), (1,), 3)
    assert irrep_to_class(IrrepLabel((2, 1), (6, 1))) == cpt((2, 1), (), 4)


def test_irrep_to_class_symmetric_group_case():
    for mu in [(3, 1), (2, 2), (2, 1, 1), (4,)]:
        assert irrep_to_class(IrrepLabel(mu, mu)).cycles == Partition(mu).transpose()


@pytest.mark.parametrize("n", range(1, 10))
def test_irrep_to_class_is_a_bijection(n):
    for k in range(n + 1):
        image = [irrep_to_class(IrrepLabel(mu, lam)) for mu, lam in strip_pairs(k, n)]
        assert sorted(image, key=CyclePathType.sort_key) == enumerate_classes(k, n)


# ---------------------------------------------------------------- cover counts


def test_canonical_pair_examples():
    s, t = canonical_pair((3, 2, 1), (4, 3, 2))
    assert s.rows == ((1, 2, 3), (4, 5), (6,))
    assert t.rows == ((1, 2, 3, 9), (4, 5, 8), (6, 7))
    s, t = canonical_pair((3,), (5,))
    assert s.rows == ((1, 2, 3),) and t.rows == ((1, 2, 3, 4, 5),)
    s, t = canonical_pair((1, 1), (2, 1))
    assert s.rows == ((1,), (2,)) and t.rows == ((1, 3), (2,))


@pytest.mark.parametrize("mu,lam", [((1, 1), (2, 1)), ((2, 1), (3, 2)), ((2, 2), (3, 2, 1)), ((3, 2, 1), (4, 3, 2)), ((1, 1, 1), (2, 1, 1))])
def test_identity_double_sum_is_column_stabilizer_order(mu, lam):
    s, t = canonical_pair(mu, lam)
    ident = Injection.identity(s.size, t.size)
    assert double_cover_sum(ident, s, t) == Partition(mu).transpose().factorial()
    # only the identity of C_t keeps {s},{t} aligned on the image
    assert signed_cover_count(ident, s, t) == 1


def test_single_column_values():
    s, t = canonical_pair((1, 1), (1, 1, 1))
    for sigma in all_injections(2, 3):
        assert signed_cover_count(sigma, s, t) in (-1, 0, 1)


@st.composite
def cover_cases(draw):
    n = draw(st.integers(min_value=1, max_value=7))
    k = draw(st.integers(min_value=0, max_value=n))
    mu, lam = draw(st.sampled_from(strip_pairs(k, n)))
    s = draw(st.sampled_from(enumerate_syt(mu)))
    t = draw(st.sampled_from(enumerate_syt(lam)))
    word = draw(st.permutations(range(1, n + 1)))[:k]
    return Injection(tuple(word), n), s, t


@settings(max_examples=200, deadline=None)
@given(cover_cases())
def test_determinant_evaluation_matches_enumeration(case):
    sigma, s, t = case
    assert prod(factorial(c) for c in t.shape.transpose()) <= 10**4
    assert signed_cover_count(sigma, s, t) == signed_cover_count_bruteforce(sigma, s, t)


def test_cover_count_rejects_wrong_shapes():
    s, t = canonical_pair((2,), (3,))
    with pytest.raises(ValueError):
        signed_cover_count(Injection((1, 2, 3), 3), s, t)


@pytest.mark.parametrize("k,n", [(2, 4), (3, 5), (3, 6)])
def test_vectorised_sum_matches_scalar_formula(k, n):
    space = injection_space(k, n)
    words = list(all_injections(k, n))
    for lab in irrep_labels(k, n):
        s, t = canonical_pair(lab.mu, lab.lam)
        signs = space.cover_signs(lab)
        for idx in random.Random(7).sample(range(len(words)), min(40, len(words))):
            w = Injection(tuple(int(v) + 1 for v in space.words[idx]), n)
            assert signs[idx] == signed_cover_count(w, s, t)


# ---------------------------------------------------------------- eigenvalues


def test_table_1_2():
    assert character_table(1, 2).P == [[1, 1], [1, -1]]


def test_trivial_row_and_identity_column():
    for k, n in [(2, 4), (3, 5), (4, 6)]:
        ct = character_table(k, n)
        assert ct.P[0] == ct.valencies
        assert [row[0] for row in ct.P] == [1] * ct.size
        assert eigenvalue(ct.irreps[1], ct.classes[0], k, n) == 1


@pytest.mark.parametrize("n", range(2, 9))
def test_mu_bar_vanishing(n):
    for k in range(1, n):
        ct = character_table(k, n)
        for i, lab in enumerate(ct.irreps):
            mu = lab.mu
            if lab.lam != Partition((mu[0] + n - k,) + tuple(mu[1:])):
                continue
            for j, c in enumerate(ct.classes):
                if len(c.paths) > mu[0]:
                    assert ct.P[i][j] == 0, (lab, c)


def test_characters_examples():
    assert sn_character((4,), (2, 1, 1)) == 1
    assert sn_character((1, 1, 1, 1), (2, 1, 1)) == -1
    assert sn_character((1, 1, 1, 1), (3, 1)) == 1
    assert sn_character((2, 1), (3,)) == -1
    assert sn_character((2, 1), (1, 1, 1)) == 2


def _permutation_trace_character():
    # the standard rep of S_3 is the permutation rep minus the trivial one
    from itertools import permutations

    from injection_scheme.characters import cycle_type_of

    out = {}
    for perm in permutations(range(3)):
        out[cycle_type_of(perm)] = sum(perm[i] == i for i in range(3)) - 1
    return out


def test_standard_character_by_traces():
    for ctype, value in _permutation_trace_character().items():
        assert sn_character((2, 1), ctype) == value


@pytest.mark.parametrize("n", range(1, 6))
def test_character_path_matches_combinatorial(n):
    assert character_table(n, n, "characters").P == character_table(n, n, "combinatorial").P


@pytest.mark.parametrize("n", range(6, 9))
def test_character_path_is_a_scheme(n):
    ct = character_table(n, n)
    assert validate(ct).passed
    for i, lab in enumerate(ct.irreps):
        for j, c in enumerate(ct.classes):
            assert ct.P[i][j] * syt_count(lab.lam) == conjugacy_class_size(c.cycles) * sn_character(lab.lam, c.cycles)


def test_character_path_needs_square():
    with pytest.raises(ValueError):
        character_table(2, 3, "characters")


def test_threads_do_not_change_result():
    assert character_table(4, 7, threads=3).P == character_table(4, 7, threads=1).P


def test_budget_refusal():
    with pytest.raises(BudgetExceeded) as exc:
        character_table(4, 6, budget=10)
    assert exc.value.estimate == table_cost(4, 6)


# ---------------------------------------------------------------- oracles


def test_oracle_trivial_cases():
    for lab in irrep_labels(2, 4):
        assert spherical_oracle(lab, enumerate_classes(2, 4)[0], 2, 4) == 1
    for c in enumerate_classes(2, 4):
        assert spherical_oracle(IrrepLabel((2,), (4,)), c, 2, 4) == 1


@pytest.mark.parametrize("k,n", [(k, n) for n in range(1, 7) for k in range(1, n + 1)])
def test_oracle_matches_table(k, n):
    ct = character_table(k, n)
    omega = spherical_oracle_table(k, n)
    for i in range(ct.size):
        for j in range(ct.size):
            assert omega[i][j] == Fraction(ct.P[i][j], ct.valencies[j])


@pytest.mark.parametrize("k,n", [(2, 4), (3, 5), (2, 5)])
def test_oracle_does_not_depend_on_representative(k, n):
    ident = Injection.identity(k, n)
    members: dict = {}
    for s in all_injections(k, n):
        members.setdefault(classify_pair(ident, s), []).append(s)
    for lab in irrep_labels(k, n):
        for cls, group in members.items():
            values = {spherical_oracle(lab, cls, k, n, representative=s) for s in group}
            assert len(values) == 1


def test_oracle_rejects_foreign_representative():
    with pytest.raises(ValueError):
        spherical_oracle(IrrepLabel((2,), (4,)), enumerate_classes(2, 4)[0], 2, 4, representative=Injection((2, 1), 4))


# ---------------------------------------------------------------- derived data


def test_dual_table_2_4():
    ct = character_table(2, 4)
    Q = dual_table(ct).Q
    assert Q[0] == ct.multiplicities
    d = ct.size
    for h in range(d):
        for i in range(d):
            assert sum(ct.P[h][j] * Q[j][i] for j in range(d)) == (12 if h == i else 0)
    for i in range(d):
        assert sum(Q[j][i] * ct.valencies[j] for j in range(d)) / ct.order == (1 if i == 0 else 0)


def test_dual_table_rejects_broken_table():
    ct = character_table(2, 4)
    bad = CharacterTable(2, 4, ct.classes, ct.irreps, [row[:] for row in ct.P])
    bad.P[2][3] += 1
    with pytest.raises(IntegrityError):
        dual_table(bad)


def test_intersection_numbers_2_4():
    ct = character_table(2, 4)
    p = intersection_numbers(ct)
    assert (p == brute_force_intersection_numbers(2, 4)).all()
    for j in range(ct.size):
        for l in range(ct.size):
            assert p[0, j, l] == (1 if j == l else 0)
        assert p[j, j, 0] == ct.valencies[j]


def test_intersection_numbers_3_5():
    ct = character_table(3, 5)
    assert (intersection_numbers(ct) == brute_force_intersection_numbers(3, 5)).all()


@pytest.mark.parametrize("k,n", [(2, 4), (3, 5)])
def test_validate_bruteforce_passes(k, n):
    report = validate(character_table(k, n), "bruteforce")
    assert report.passed, report.lines()
    assert any("adjacency" in c.name for c in report.checks)


def test_validate_catches_perturbation():
    ct = character_table(2, 4)
    bad = CharacterTable(2, 4, ct.classes, ct.irreps, [row[:] for row in ct.P])
    bad.P[1][2] += 1
    report = validate(bad)
    assert not report.passed
    failed = {c.name for c in report.checks if not c.passed}
    assert "column orthogonality" in failed
    with pytest.raises(ValueError):
        validate(ct, "sloppy")
