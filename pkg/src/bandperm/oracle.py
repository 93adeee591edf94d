"""Brute-force checks that do not rely on the 2w-row window.

Truncation indices are read off from zero rows and zero columns of the
singly infinite submatrix P_k; everything else is exact rank work over
``fractions.Fraction``. No floating point anywhere in this module.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from numbers import Rational
from typing import Iterable, Iterator, List, Sequence, Tuple, Union

from .errors import NonSquare, Singular
from .permutations import BandedPermutation, FiniteBinaryMatrix, window_matrix


logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction, str]

EXHAUSTIVE_LIMIT = 6


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} grid")
        object.__setattr__(
            self,
            "entries",
            tuple(tuple(_exact(value) for value in row) for row in self.entries),
        )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "RationalMatrix":
        width = len(rows[0]) if rows else 0
        return cls(len(rows), width, tuple(tuple(row) for row in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_binary(cls, matrix: FiniteBinaryMatrix) -> "RationalMatrix":
        return cls(matrix.rows, matrix.cols, matrix.entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "RationalMatrix":
        rows, cols = list(rows), list(cols)
        return RationalMatrix(
            len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows)
        )

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = list(zip(*other.entries))
        return RationalMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in columns) for row in self.entries),
        )


def _exact(value: Scalar) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (Rational, str)):
        raise TypeError(f"exact rational entry expected, got {type(value).__name__}")
    return Fraction(value)


def _integer_rows(M: RationalMatrix) -> List[List[int]]:
    rows = []
    for row in M.entries:
        scale = lcm(*(value.denominator for value in row)) if row else 1
        rows.append([int(value * scale) for value in row])
    return rows


def rank_exact(M: RationalMatrix) -> int:
    """Rank by fraction-free (Bareiss) elimination on integer-scaled rows."""

    rows = _integer_rows(M)
    rank, previous = 0, 1
    for col in range(M.cols):
        pivot = next((r for r in range(rank, M.rows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        head = rows[rank]
        p = head[col]
        for r in range(rank + 1, M.rows):
            row = rows[r]
            factor = row[col]
            rows[r] = [(p * row[c] - factor * head[c]) // previous for c in range(M.cols)]
        previous = p
        rank += 1
        if rank == M.rows:
            break
    return rank


def finite_index(M: RationalMatrix) -> int:
    if not M.is_square:
        raise NonSquare(M.rows, M.cols)
    rank = rank_exact(M)
    nullity = M.cols - rank
    corank = M.rows - rank
    return nullity - corank


def inverse_exact(M: RationalMatrix) -> RationalMatrix:
    """Gauss-Jordan inverse over the rationals."""

    if not M.is_square:
        raise NonSquare(M.rows, M.cols)
    n = M.rows
    work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M.entries)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise Singular(f"matrix is singular (no pivot in column {col})")
        work[col], work[pivot] = work[pivot], work[col]
        head = work[col]
        scale = head[col]
        work[col] = head = [value / scale for value in head]
        for r in range(n):
            if r != col and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], head)]
    return RationalMatrix(n, n, tuple(tuple(row[n:]) for row in work))


def corner_blocks(n: int, offset: int) -> Iterator[Tuple[range, range]]:
    """Maximal contiguous blocks strictly above diagonal ``offset``.

    Entry (i, j) lies above diagonal d when j - i > d. Every submatrix above
    that diagonal sits inside one of these upper-right corners.
    """

    for r in range(1, n + 1):
        c = max(r + offset, 0)
        if c < n:
            yield range(0, r), range(c, n)


def max_corner_rank(M: RationalMatrix, offset: int) -> int:
    return max((rank_exact(M.submatrix(rows, cols)) for rows, cols in corner_blocks(M.rows, offset)), default=0)


def max_selection_rank(M: RationalMatrix, offset: int) -> int:
    """Largest rank over arbitrary row/column selections above diagonal ``offset``."""

    n = M.rows
    if n > EXHAUSTIVE_LIMIT:
        raise ValueError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_LIMIT}")
    best = 0
    for size in range(1, n + 1):
        for rows in combinations(range(n), size):
            allowed = [j for j in range(n) if j - rows[-1] > offset]
            for width in range(1, len(allowed) + 1):
                for cols in combinations(allowed, width):
                    best = max(best, rank_exact(M.submatrix(rows, cols)))
    return best


def asplund_check(M: RationalMatrix, p: int, k: int) -> Tuple[bool, bool]:
    """Both sides of Asplund's rank equivalence for an invertible M.

    (i)  submatrices of M above the p-th superdiagonal have rank < k;
    (ii) submatrices of M^-1 above the p-th subdiagonal have rank < p + k.
    """

    inv = inverse_exact(M)
    cond_i = max_corner_rank(M, p) < k
    cond_ii = max_corner_rank(inv, -p) < p + k
    return cond_i, cond_ii


def asplund_check_exhaustive(M: RationalMatrix, p: int, k: int) -> Tuple[bool, bool]:
    inv = inverse_exact(M)
    return max_selection_rank(M, p) < k, max_selection_rank(inv, -p) < p + k


@dataclass(frozen=True)
class TruncationCounts:
    k: int
    alpha: int
    beta: int

    @property
    def index(self) -> int:
        return self.alpha - self.beta


def truncation_counts(P: BandedPermutation, k: int) -> TruncationCounts:
    """Zero columns (alpha) and zero rows (beta) of P_k = (p_ij), i, j >= k."""

    w = P.bandwidth()
    inv = P.inverse()
    alpha = sum(1 for j in range(k, k + w) if inv.apply(j) < k)
    beta = sum(1 for i in range(k, k + w) if P.apply(i) < k)
    return TruncationCounts(k=k, alpha=alpha, beta=beta)


def truncation_index(P: BandedPermutation, k: int) -> int:
    return truncation_counts(P, k).index


def minus_truncation_index(P: BandedPermutation, k: int) -> int:
    """Index of the section with rows and columns <= k."""

    w = P.bandwidth()
    inv = P.inverse()
    zero_cols = sum(1 for j in range(k - w + 1, k + 1) if inv.apply(j) > k)
    zero_rows = sum(1 for i in range(k - w + 1, k + 1) if P.apply(i) > k)
    return zero_cols - zero_rows


@dataclass(frozen=True)
class SectionCounts:
    k: int
    stop: int
    rank: int
    alpha: int
    beta: int


def section_counts(P: BandedPermutation, k: int, stop: int) -> SectionCounts:
    """Recover alpha and beta of P_k from the finite square section [k, stop).

    The cut at ``stop`` adds zero rows and columns of its own; those are the
    rows mapping to columns >= stop and the columns fed from rows >= stop.
    """

    w = P.bandwidth()
    if stop < k + w:
        raise ValueError(f"section [{k}, {stop}) is shorter than the bandwidth {w}")
    span = range(k, stop)
    section = RationalMatrix.from_binary(window_matrix(P, span, span))
    rank = rank_exact(section)
    inv = P.inverse()
    bottom_rows = sum(1 for i in span if P.apply(i) >= stop)
    bottom_cols = sum(1 for j in span if inv.apply(j) >= stop)
    size = len(span)
    logger.debug("section [%d, %d): rank=%d bottom rows=%d cols=%d", k, stop, rank, bottom_rows, bottom_cols)
    return SectionCounts(
        k=k,
        stop=stop,
        rank=rank,
        alpha=(size - rank) - bottom_cols,
        beta=(size - rank) - bottom_rows,
    )


__all__ = [
    "EXHAUSTIVE_LIMIT",
    "RationalMatrix",
    "SectionCounts",
    "TruncationCounts",
    "asplund_check",
    "asplund_check_exhaustive",
    "corner_blocks",
    "finite_index",
    "inverse_exact",
    "max_corner_rank",
    "max_selection_rank",
    "minus_truncation_index",
    "rank_exact",
    "section_counts",
    "truncation_counts",
    "truncation_index",
]
