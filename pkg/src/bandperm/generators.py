"""Seeded random instances for the verification suite and the tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List

from .oracle import RationalMatrix, rank_exact
from .permutations import BandedPermutation, EventualShift, Periodic, compose


def banded_block(rng: random.Random, m: int, w: int) -> List[int]:
    """A permutation σ of range(m) with |σ(i) - i| <= w.

    Value i - w is forced at row i when still free; no later row could take it.
    """

    used = [False] * m
    images = []
    for i in range(m):
        forced = i - w
        if forced >= 0 and not used[forced]:
            value = forced
        else:
            value = rng.choice([v for v in range(max(0, i - w), min(m, i + w + 1)) if not used[v]])
        used[value] = True
        images.append(value)
    return images


def random_eventual_shift(
    rng: random.Random, max_window: int = 64, max_w: int = 6, shift: int | None = None
) -> EventualShift:
    s = rng.randint(-max_w, max_w) if shift is None else shift
    inner = rng.randint(0, max_w - abs(s))
    m = rng.randint(0, max_window)
    lo = rng.randint(-20, 20)
    sigma = banded_block(rng, m, inner)
    return EventualShift(s, lo, tuple(lo + value + s for value in sigma))


def random_periodic(
    rng: random.Random, max_period: int = 24, max_w: int = 6, shift: int | None = None
) -> Periodic:
    """Product of two block patterns offset against each other, then shifted.

    The offset makes split-free (intertwined) instances common.
    """

    p = rng.randint(1, max_period)
    s = rng.randint(-max_w, max_w) if shift is None else shift
    budget = max_w - abs(s)
    w1 = rng.randint(0, budget)
    w2 = rng.randint(0, budget - w1)
    first = banded_block(rng, p, w1)
    second = banded_block(rng, p, w2)
    offset = rng.randrange(p)

    def pi(i: int) -> int:
        base, t = divmod(i, p)
        j = base * p + first[t]
        base, t = divmod(j - offset, p)
        return base * p + offset + second[t] + s

    return Periodic(p, tuple(pi(r) - r for r in range(p)))


def random_permutation(
    rng: random.Random, max_window: int = 64, max_period: int = 24, max_w: int = 6
) -> BandedPermutation:
    if rng.random() < 0.5:
        return random_eventual_shift(rng, max_window, max_w)
    return random_periodic(rng, max_period, max_w)


def random_centered(
    rng: random.Random, max_window: int = 64, max_period: int = 24, max_w: int = 6
) -> BandedPermutation:
    # Both constructions have plus-index equal to the applied shift.
    if rng.random() < 0.5:
        return random_eventual_shift(rng, max_window, max_w, shift=0)
    return random_periodic(rng, max_period, max_w, shift=0)


def random_like(rng: random.Random, P: BandedPermutation, max_w: int = 6) -> BandedPermutation:
    """A random permutation that composes with P."""

    if isinstance(P, Periodic):
        return random_periodic(rng, max_period=12, max_w=max_w)
    return random_eventual_shift(rng, max_window=32, max_w=max_w)


def random_lower_triangular(rng: random.Random, max_window: int = 64, max_w: int = 6) -> BandedPermutation:
    """A permutation with π(i) <= i for every i."""

    if rng.random() < 0.5:
        return _lower_eventual_shift(rng, max_window, max_w)
    return _lower_periodic(rng, max_w)


def _lower_eventual_shift(rng: random.Random, max_window: int, max_w: int) -> EventualShift:
    d = rng.randint(0, max_w)
    m = rng.randint(0, max_window)
    lo = rng.randint(-10, 10)
    bottom, top = lo - d, lo + m - d
    used: set[int] = set()
    images = []
    for i in range(lo, lo + m):
        forced = i - max_w
        if forced >= bottom and forced not in used:
            value = forced
        else:
            value = rng.choice([v for v in range(max(bottom, i - max_w), min(i, top - 1) + 1) if v not in used])
        used.add(value)
        images.append(value)
    return EventualShift(-d, lo, tuple(images))


def _lower_periodic(rng: random.Random, max_w: int) -> Periodic:
    # Products of S^d and of moves that push one residue class down one period.
    d = rng.randint(0, max(0, max_w // 2))
    result: BandedPermutation = Periodic(1, (-d,))
    for _ in range(rng.randint(0, 2)):
        q = rng.randint(1, 3)
        moves = [0] * q
        moves[rng.randrange(q)] = -q
        candidate = compose(result, Periodic(q, tuple(moves)))
        if candidate.bandwidth() <= max_w:
            result = candidate
    assert isinstance(result, Periodic)
    return result


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 4))


def random_invertible_rational(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        M = RationalMatrix.from_rows([[random_rational(rng) for _ in range(n)] for _ in range(n)])
        if rank_exact(M) == n:
            return M


def random_structured_rational(rng: random.Random, n: int, p: int, k: int) -> RationalMatrix:
    """Invertible M whose part above the p-th superdiagonal comes from a rank k-1 product.

    Every submatrix above that diagonal then has rank < k.
    """

    while True:
        left = [[random_rational(rng) for _ in range(k - 1)] for _ in range(n)]
        right = [[random_rational(rng) for _ in range(k - 1)] for _ in range(n)]
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                if j - i > p:
                    row.append(sum((left[i][c] * right[j][c] for c in range(k - 1)), Fraction(0)))
                else:
                    row.append(random_rational(rng))
            rows.append(row)
        M = RationalMatrix.from_rows(rows)
        if rank_exact(M) == n:
            return M


__all__ = [
    "banded_block",
    "random_centered",
    "random_eventual_shift",
    "random_invertible_rational",
    "random_like",
    "random_lower_triangular",
    "random_periodic",
    "random_permutation",
    "random_rational",
    "random_structured_rational",
]
