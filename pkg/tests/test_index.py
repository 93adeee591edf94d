from __future__ import annotations

import random
from itertools import product

import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from bandperm.errors import IncompatibleBackends, InvalidPermutation
from bandperm.fixtures import fixture_names, get_fixture
from bandperm.generators import (
    random_eventual_shift,
    random_like,
    random_lower_triangular,
    random_permutation,
)
from bandperm.index import (
    center,
    default_search_range,
    dependent_rows,
    find_split,
    is_lower_triangular,
    main_diagonal_offset,
    minus_index,
    plus_index,
    plus_index_sweep,
    rewire_split,
    split_at,
    window_R,
)
from bandperm.permutations import (
    EventualShift,
    Periodic,
    compose,
    equals,
    identity,
    shift_power,
)


S = shift_power(1)
S_INV = shift_power(-1)


def test_shift_has_index_minus_one():
    window = window_R(S)
    assert (window.w, window.n, window.kappa) == (1, 0, -1)
    assert window.matrix.entries == ((0, 0), (0, 0))
    assert plus_index(S) == -1
    assert minus_index(S) == 1
    assert main_diagonal_offset(S) == -1


def test_inverse_shift_has_index_plus_one():
    assert plus_index(S_INV) == 1


def test_identity_window_is_empty():
    window = window_R(identity())
    assert (window.w, window.n, window.kappa) == (0, 0, 0)
    assert window.matrix.rows == 0
    assert plus_index(identity(), jstar=17) == 0


def test_rewire_demo_counts_four_ones():
    P = get_fixture("rewire-demo").permutation
    window = window_R(P, 0)
    assert (window.w, window.n, window.kappa) == (3, 4, 1)
    assert dependent_rows(P, 0) == 4


@pytest.mark.parametrize("name", fixture_names())
def test_fixture_index_does_not_depend_on_jstar(name):
    P = get_fixture(name).permutation
    assert len(set(plus_index_sweep(P, range(-10, 11)).values())) == 1


def test_intertwined_fixtures():
    intertwined = get_fixture("intertwined").permutation
    assert plus_index(intertwined) == 0
    assert find_split(intertwined) is None
    assert equals(intertwined, intertwined.inverse())

    shifted = get_fixture("intertwined-shifted").permutation
    assert plus_index(shifted) == 1
    assert window_R(shifted).n == 5


def test_center_shift_gives_identity():
    centering = center(S)
    assert centering.kappa == -1
    assert centering.centered == identity()


def test_center_periodic():
    centering = center(get_fixture("intertwined-shifted").permutation)
    assert centering.kappa == 1
    assert centering.centered == Periodic(2, (3, -3))
    assert plus_index(centering.centered) == 0


def test_shift_splits_one_column_left():
    split = find_split(S)
    assert split is not None
    assert (split.istar, split.jstar) == (-2, -3)
    assert split_at(S, 10).jstar == 9


def test_rewire_split_sorts_the_window():
    P = get_fixture("rewire-demo").permutation
    rewired = rewire_split(P, 0)
    assert rewired == EventualShift(1, 1, (3, 4, 2))
    assert plus_index(rewired) == 1
    split = split_at(rewired, -1)
    assert split is not None
    assert split.jstar == 0


def test_rewire_of_intertwined_periodic_is_rejected():
    with pytest.raises(IncompatibleBackends):
        rewire_split(get_fixture("intertwined").permutation, 0)


def test_rewire_of_identity_is_identity():
    assert rewire_split(identity(), 4) == identity()
    assert rewire_split(S, 0) == S


def test_lower_triangular_helper():
    assert is_lower_triangular(S)
    assert is_lower_triangular(identity())
    assert not is_lower_triangular(S_INV)


def test_tridiagonal_permutations_with_nonzero_index_are_shifts():
    seen = 0
    for p in range(1, 7):
        for displacements in product((-1, 0, 1), repeat=p):
            try:
                P = Periodic(p, displacements)
            except InvalidPermutation:
                continue
            if P.bandwidth() != 1:
                continue
            seen += 1
            if plus_index(P) != 0:
                assert equals(P, S) or equals(P, S_INV)
    assert seen > 0


def test_lower_triangular_permutations_have_nonpositive_index():
    rng = random.Random(11)
    for _ in range(200):
        L = random_lower_triangular(rng)
        assert is_lower_triangular(L)
        assert plus_index(L) <= 0


def test_split_points_give_the_index():
    rng = random.Random(3)
    found = 0
    for _ in range(300):
        P = random_permutation(rng)
        split = find_split(P)
        if split is not None:
            found += 1
            assert split.jstar - split.istar == plus_index(P)
    assert found > 0


def test_rewire_keeps_index_and_splits_where_predicted():
    rng = random.Random(5)
    for _ in range(100):
        P = random_eventual_shift(rng, max_window=24)
        kappa = plus_index(P)
        span = P.non_trivial_range()
        for jstar in range(span.start - 3, span.stop + 3):
            window = window_R(P, jstar)
            rewired = rewire_split(P, jstar)
            assert plus_index(rewired) == kappa
            if window.w:
                split = split_at(rewired, jstar + window.w - window.n)
                assert split is not None
                assert split.jstar == jstar


def test_index_is_additive():
    rng = random.Random(7)
    for _ in range(500):
        P = random_permutation(rng, max_window=32, max_period=12)
        Q = random_like(rng, P)
        assert plus_index(compose(P, Q)) == plus_index(P) + plus_index(Q)


@settings(max_examples=300, derandomize=True)
@given(rng=st.randoms(use_true_random=False), jstar=st.integers(min_value=-50, max_value=50))
def test_index_is_independent_of_jstar(rng, jstar):
    P = random_permutation(rng)
    assert plus_index(P, jstar) == plus_index(P)


@settings(max_examples=300, derandomize=True)
@given(rng=st.randoms(use_true_random=False))
def test_centering_cancels_the_index(rng):
    P = random_permutation(rng)
    centering = center(P)
    assert centering.kappa == plus_index(P)
    assert plus_index(centering.centered) == 0
    assert equals(compose(shift_power(-centering.kappa), centering.centered), P)


@settings(max_examples=200, derandomize=True)
@given(rng=st.randoms(use_true_random=False), jstar=st.integers(min_value=-40, max_value=40))
def test_counting_window_is_lower_triangular(rng, jstar):
    P = random_permutation(rng, max_window=32, max_period=12)
    window = window_R(P, jstar)
    w = window.w
    for t in range(2 * w):
        for u in range(t + 1, 2 * w):
            assert window.matrix.entry(jstar - w + t, jstar + u) == 0


def test_lower_triangular_with_lower_triangular_inverse_is_centered():
    rng = random.Random(13)
    both = 0
    candidates = [identity(), S, EventualShift(0, 0, (1, 0))]
    candidates += [random_lower_triangular(rng) for _ in range(200)]
    for P in candidates:
        probe = default_search_range(P)
        if is_lower_triangular(P, probe) and is_lower_triangular(P.inverse(), probe):
            both += 1
            assert plus_index(P) == 0
    assert both > 0
