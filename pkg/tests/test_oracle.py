from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bandperm.errors import NonSquare, Singular
from bandperm.fixtures import get_fixture
from bandperm.generators import (
    random_eventual_shift,
    random_invertible_rational,
    random_permutation,
    random_rational,
    random_structured_rational,
)
from bandperm.index import center, plus_index, split_at
from bandperm.oracle import (
    EXHAUSTIVE_LIMIT,
    RationalMatrix,
    asplund_check,
    asplund_check_exhaustive,
    corner_blocks,
    finite_index,
    inverse_exact,
    max_corner_rank,
    max_selection_rank,
    minus_truncation_index,
    rank_exact,
    section_counts,
    truncation_counts,
    truncation_index,
)
from bandperm.permutations import identity, shift_power, window_matrix


S = shift_power(1)
SWEEP = range(-25, 26)


def test_shift_truncation_counts():
    counts = truncation_counts(S, 1)
    assert (counts.alpha, counts.beta, counts.index) == (0, 1, -1)
    assert all(truncation_index(S, k) == -1 for k in range(-20, 21))


def test_identity_and_inverse_shift():
    assert truncation_index(identity(), 3) == 0
    counts = truncation_counts(S.inverse(), 0)
    assert (counts.alpha, counts.beta) == (1, 0)
    assert truncation_index(S.inverse(), 0) == 1


def test_minus_side_of_shift():
    assert all(minus_truncation_index(S, k) == 1 for k in range(-5, 6))


def test_window_formula_agrees_with_truncations():
    rng = random.Random(2024)
    for _ in range(1000):
        P = random_permutation(rng)
        values = {plus_index(P, jstar) for jstar in SWEEP}
        values |= {truncation_index(P, k) for k in SWEEP}
        assert len(values) == 1, P


def test_transpose_negates_the_truncation_index():
    rng = random.Random(8)
    for _ in range(200):
        P = random_permutation(rng)
        inv = P.inverse()
        for k in range(-10, 11):
            assert truncation_index(inv, k) == -truncation_index(P, k)
            assert truncation_index(P, k + 1) + minus_truncation_index(P, k) == 0


def test_section_counts_match_zero_row_counting():
    P = get_fixture("rewire-demo").permutation
    w = P.bandwidth()
    k, stop = P.lo - w, P.hi + w
    section = section_counts(P, k, stop)
    counted = truncation_counts(P, k)
    assert (section.alpha, section.beta) == (counted.alpha, counted.beta)

    rng = random.Random(4)
    for _ in range(100):
        Q = random_permutation(rng, max_window=16, max_period=8)
        k = rng.randint(-10, 10)
        stop = k + 2 * Q.bandwidth() + rng.randint(0, 4)
        section = section_counts(Q, k, stop)
        counted = truncation_counts(Q, k)
        assert (section.alpha, section.beta) == (counted.alpha, counted.beta)


def test_section_shorter_than_bandwidth_is_rejected():
    with pytest.raises(ValueError):
        section_counts(get_fixture("rewire-demo").permutation, 0, 2)


def test_rank_exact():
    assert rank_exact(RationalMatrix.identity(3)) == 3
    assert rank_exact(RationalMatrix.zeros(4, 2)) == 0
    assert rank_exact(RationalMatrix.from_rows([[1, 2], [2, 4]])) == 1
    assert rank_exact(RationalMatrix.from_rows([[Fraction(1, 2), 1], [1, 2]])) == 1
    assert rank_exact(RationalMatrix.from_rows([["1/3", "2/3"], [1, 1]])) == 2


def test_rank_of_permutation_window_counts_ones():
    span = range(0, 4)
    matrix = window_matrix(S, span, span)
    assert rank_exact(RationalMatrix.from_binary(matrix)) == matrix.count() == 3


def test_float_entries_are_rejected():
    with pytest.raises(TypeError):
        RationalMatrix.from_rows([[0.5]])


def test_matrix_helpers():
    M = RationalMatrix.from_rows([[1, 2, 3], [4, 5, 6]])
    assert M.transpose().entries == ((1, 4), (2, 5), (3, 6))
    assert M.submatrix([1], [0, 2]).entries == ((4, 6),)
    assert (M @ RationalMatrix.identity(3)) == M
    assert RationalMatrix.zeros(0, 3).transpose().rows == 3


def test_finite_index():
    assert finite_index(RationalMatrix.identity(4)) == 0
    assert finite_index(RationalMatrix.zeros(3, 3)) == 0
    with pytest.raises(NonSquare):
        finite_index(RationalMatrix.zeros(2, 3))

    rng = random.Random(13)
    for _ in range(100):
        n = rng.randint(0, 8)
        M = RationalMatrix.from_rows([[random_rational(rng) for _ in range(n)] for _ in range(n)])
        assert finite_index(M) == 0


def test_inverse_exact():
    M = RationalMatrix.from_rows([[2, 1], [1, 1]])
    assert inverse_exact(M) == RationalMatrix.from_rows([[1, -1], [-1, 2]])
    assert inverse_exact(M) @ M == RationalMatrix.identity(2)
    with pytest.raises(Singular):
        inverse_exact(RationalMatrix.from_rows([[1, 2], [2, 4]]))


def test_corner_blocks():
    assert list(corner_blocks(3, 0)) == [(range(0, 1), range(1, 3)), (range(0, 2), range(2, 3))]
    assert list(corner_blocks(2, -1))[0] == (range(0, 1), range(0, 2))


def test_lower_triangular_inverse_is_lower_triangular():
    M = RationalMatrix.from_rows([[1, 0, 0], [2, 3, 0], [4, 5, 6]])
    assert asplund_check(M, 0, 1) == (True, True)


def test_tridiagonal_inverse_corners_have_rank_one():
    M = RationalMatrix.from_rows([[2, 1, 0, 0], [1, 2, 1, 0], [0, 1, 2, 1], [0, 0, 1, 2]])
    assert asplund_check(M, 1, 1) == (True, True)
    assert max_corner_rank(inverse_exact(M), -1) == 1


def test_full_rank_upper_corner_fails_both_sides():
    M = RationalMatrix.from_rows([[1, 1], [0, 1]])
    assert asplund_check(M, 0, 1) == (False, False)


def test_singular_matrix_is_rejected():
    with pytest.raises(Singular):
        asplund_check(RationalMatrix.zeros(2, 2), 0, 1)


def test_asplund_conditions_agree_on_random_matrices():
    rng = random.Random(99)
    for trial in range(200):
        n = rng.randint(1, 8)
        if trial % 2:
            M = random_invertible_rational(rng, n)
        else:
            M = random_structured_rational(rng, n, rng.randint(0, 2), rng.randint(1, 3))
        for p in (0, 1, 2):
            for k in (1, 2, 3):
                cond_i, cond_ii = asplund_check(M, p, k)
                assert cond_i == cond_ii


def test_structured_matrices_satisfy_the_rank_condition():
    rng = random.Random(21)
    for _ in range(30):
        n, p, k = rng.randint(2, 7), rng.randint(0, 2), rng.randint(1, 3)
        M = random_structured_rational(rng, n, p, k)
        assert asplund_check(M, p, k) == (True, True)


def test_exhaustive_selection_agrees_with_corners():
    rng = random.Random(17)
    for trial in range(12):
        n = rng.randint(1, EXHAUSTIVE_LIMIT)
        if trial % 2:
            M = random_invertible_rational(rng, n)
        else:
            M = random_structured_rational(rng, n, rng.choice((0, 1, 2)), rng.choice((1, 2, 3)))
        for p in (0, 1, 2):
            assert max_selection_rank(M, p) == max_corner_rank(M, p)
            for k in (1, 2, 3):
                assert asplund_check_exhaustive(M, p, k) == asplund_check(M, p, k)


def test_exhaustive_selection_at_the_size_limit():
    rng = random.Random(23)
    for p, k in ((0, 1), (1, 2), (2, 3)):
        M = random_structured_rational(rng, EXHAUSTIVE_LIMIT, p, k)
        assert asplund_check_exhaustive(M, p, k) == asplund_check(M, p, k) == (True, True)


def test_exhaustive_selection_is_limited():
    with pytest.raises(ValueError):
        max_selection_rank(RationalMatrix.identity(EXHAUSTIVE_LIMIT + 1), 0)


def test_rank_equivalence_on_permutation_sections():
    rng = random.Random(29)
    for _ in range(40):
        P = random_eventual_shift(rng, max_window=10, max_w=3, shift=0)
        span = P.non_trivial_range()
        M = RationalMatrix.from_binary(window_matrix(P, span, span))
        w = P.bandwidth()
        for p in (0, 1, 2):
            for k in (1, 2, 3):
                cond_i, cond_ii = asplund_check(M, p, k)
                assert cond_i == cond_ii
                if p >= w:
                    assert cond_i


def test_rank_equivalence_on_a_section_cut_at_split_points():
    P_c = center(get_fixture("rewire-demo").permutation).centered
    first, last = split_at(P_c, 1), split_at(P_c, 5)
    assert (first.jstar, last.jstar) == (1, 5)
    assert all(split_at(P_c, istar) is None for istar in (2, 3, 4))
    rows = range(first.istar, last.istar)
    M = RationalMatrix.from_binary(window_matrix(P_c, rows, rows))
    assert rank_exact(M) == len(rows)
    for p in (0, 1, 2):
        for k in (1, 2, 3):
            cond_i, cond_ii = asplund_check(M, p, k)
            assert cond_i == cond_ii
