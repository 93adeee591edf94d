"""Plus-index of a banded permutation from 2w consecutive rows.

For rows j*-w .. j*+w-1 count the ones in columns >= j*; with n ones and
bandwidth w the plus-index is n - w, whatever j* is.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Optional

from .errors import IncompatibleBackends
from .permutations import (
    BandedPermutation,
    EventualShift,
    FiniteBinaryMatrix,
    as_eventual_shift,
    compose,
    shift_power,
    window_matrix,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WindowR:
    jstar: int
    w: int
    matrix: FiniteBinaryMatrix
    n: int

    @property
    def kappa(self) -> int:
        return self.n - self.w


@dataclass(frozen=True)
class SplitPoint:
    istar: int
    jstar: int


@dataclass(frozen=True)
class Centering:
    kappa: int
    centered: BandedPermutation


def window_R(P: BandedPermutation, jstar: int = 0) -> WindowR:
    """Rows [j*-w, j*+w), columns [j*, j*+2w) of P and its one-count.

    The band keeps every image of those rows below j*+2w, so the count covers
    all ones right of the split. For w = 0 the window is empty and n = 0.
    """

    w = P.bandwidth()
    rows = range(jstar - w, jstar + w)
    matrix = window_matrix(P, rows, range(jstar, jstar + 2 * w))
    n = matrix.count()
    logger.debug("window R at j*=%d: w=%d n=%d", jstar, w, n)
    return WindowR(jstar=jstar, w=w, matrix=matrix, n=n)


def plus_index(P: BandedPermutation, jstar: Optional[int] = None) -> int:
    window = window_R(P, 0 if jstar is None else jstar)
    return window.kappa


def minus_index(P: BandedPermutation) -> int:
    # ind(P) = 0 for an invertible P, and ind = ind+ + ind-.
    return -plus_index(P)


def main_diagonal_offset(P: BandedPermutation) -> int:
    """Number of diagonals the main diagonal sits above the zeroth one."""

    return plus_index(P)


def plus_index_sweep(P: BandedPermutation, jstars: Iterable[int]) -> Dict[int, int]:
    return {jstar: plus_index(P, jstar) for jstar in jstars}


def dependent_rows(P: BandedPermutation, jstar: int = 0) -> int:
    """Rows among [j*-w, j*+w) whose part left of column j* is zero."""

    w = P.bandwidth()
    return sum(1 for i in range(jstar - w, jstar + w) if P.apply(i) >= jstar)


def center(P: BandedPermutation) -> Centering:
    """Index cancellation: P_c = S^κ P, so that π_c(i) = π(i - κ)."""

    kappa = plus_index(P)
    centered = compose(shift_power(kappa), P)
    return Centering(kappa=kappa, centered=centered)


def default_search_range(P: BandedPermutation) -> range:
    span = P.non_trivial_range()
    margin = 2 * P.bandwidth()
    return range(span.start - margin, span.stop + margin + 1)


def split_at(P: BandedPermutation, istar: int) -> Optional[SplitPoint]:
    """The split point with this i*, if {π(i) : i < i*} is a left half-line.

    j* must be the smallest image of the rows i >= i*, which the band places
    among rows i* .. i*+2w. Rows below i*-2w map below j* automatically.
    """

    w = P.bandwidth()
    jstar = min(P.apply(i) for i in range(istar, istar + 2 * w + 1))
    if all(P.apply(i) < jstar for i in range(istar - 2 * w, istar)):
        return SplitPoint(istar=istar, jstar=jstar)
    return None


def find_split(P: BandedPermutation, search_range: Optional[range] = None) -> Optional[SplitPoint]:
    for istar in search_range if search_range is not None else default_search_range(P):
        split = split_at(P, istar)
        if split is not None:
            return split
    return None


def rewire_split(P: BandedPermutation, jstar: int) -> EventualShift:
    """Reassign the images of rows j*-w .. j*+w-1 in ascending order.

    Only finitely many arrows change, so the result has the same plus-index
    and splits at i* = j* + w - n.
    """

    base = as_eventual_shift(P)
    if base is None:
        raise IncompatibleBackends(
            "rewiring a periodic permutation with non-constant displacement "
            "has no eventual-shift or periodic description"
        )
    w = base.bandwidth()
    if w == 0:
        return base
    rows = range(jstar - w, jstar + w)
    ordered = sorted(base.apply(i) for i in rows)
    lo = min(base.lo, rows.start) if base.images else rows.start
    hi = max(base.hi, rows.stop) if base.images else rows.stop
    images = []
    for i in range(lo, hi):
        images.append(ordered[i - rows.start] if i in rows else base.apply(i))
    return EventualShift(base.s, lo, tuple(images))


def is_lower_triangular(P: BandedPermutation, probe: Optional[range] = None) -> bool:
    probe = probe if probe is not None else default_search_range(P)
    return all(P.apply(i) <= i for i in probe)


__all__ = [
    "Centering",
    "SplitPoint",
    "WindowR",
    "center",
    "default_search_range",
    "dependent_rows",
    "find_split",
    "is_lower_triangular",
    "main_diagonal_offset",
    "minus_index",
    "plus_index",
    "plus_index_sweep",
    "rewire_split",
    "split_at",
    "window_R",
]
