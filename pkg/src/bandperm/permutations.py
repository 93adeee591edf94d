"""Finite descriptions of banded permutations of the integers.

A permutation π of Z is read as the doubly infinite 0/1 matrix P with
p_ij = 1 iff j = π(i). Two finite backends are supported:

* ``EventualShift``: π(i) = i + s outside a finite window [lo, lo + m).
* ``Periodic``: π(i) = i + δ(i mod p).

Matrix products follow the row convention: row i of P·Q has its single 1 in
column π_Q(π_P(i)), so ``compose(P, Q)`` evaluates P first.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Iterator, List, Optional, Tuple

from .errors import IncompatibleBackends, InvalidPermutation


class BandedPermutation:
    """Common interface of the two backends."""

    def apply(self, i: int) -> int:
        raise NotImplementedError

    def bandwidth(self) -> int:
        raise NotImplementedError

    def inverse(self) -> "BandedPermutation":
        raise NotImplementedError

    def non_trivial_range(self) -> range:
        raise NotImplementedError

    def __call__(self, i: int) -> int:
        return self.apply(i)

    def __matmul__(self, other: "BandedPermutation") -> "BandedPermutation":
        return compose(self, other)


@dataclass(frozen=True)
class EventualShift(BandedPermutation):
    s: int
    lo: int = 0
    images: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        s = int(self.s)
        lo = int(self.lo)
        images = tuple(int(v) for v in self.images)
        target = range(lo + s, lo + len(images) + s)
        seen: set[int] = set()
        for t, value in enumerate(images):
            if value not in target:
                raise InvalidPermutation(
                    "window-bijection",
                    f"image {value} outside [{target.start}, {target.stop})",
                    lo + t,
                )
            if value in seen:
                raise InvalidPermutation("window-bijection", f"image {value} repeated", lo + t)
            seen.add(value)

        # Trim to the minimal window where π(i) != i + s.
        start, stop = 0, len(images)
        while start < stop and images[start] == lo + start + s:
            start += 1
        while stop > start and images[stop - 1] == lo + stop - 1 + s:
            stop -= 1
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "lo", lo + start if start < stop else 0)
        object.__setattr__(self, "images", images[start:stop])

    @property
    def hi(self) -> int:
        return self.lo + len(self.images)

    def apply(self, i: int) -> int:
        if self.lo <= i < self.hi:
            return self.images[i - self.lo]
        return i + self.s

    def bandwidth(self) -> int:
        window = (abs(value - (self.lo + t)) for t, value in enumerate(self.images))
        return max(abs(self.s), max(window, default=0))

    def inverse(self) -> "EventualShift":
        start = self.lo + self.s
        inv = [0] * len(self.images)
        for t, value in enumerate(self.images):
            inv[value - start] = self.lo + t
        return EventualShift(-self.s, start, tuple(inv))

    def non_trivial_range(self) -> range:
        return range(self.lo, self.hi)


@dataclass(frozen=True)
class Periodic(BandedPermutation):
    period: int
    displacements: Tuple[int, ...]

    def __post_init__(self) -> None:
        period = int(self.period)
        displacements = tuple(int(d) for d in self.displacements)
        if period < 1:
            raise InvalidPermutation("period-positive", f"period {period} must be >= 1")
        if len(displacements) != period:
            raise InvalidPermutation(
                "period-length",
                f"expected {period} displacements, got {len(displacements)}",
            )
        owner: dict[int, int] = {}
        for r, d in enumerate(displacements):
            residue = (r + d) % period
            if residue in owner:
                raise InvalidPermutation(
                    "residue-bijection",
                    f"residues {owner[residue]} and {r} both land on {residue} mod {period}",
                    r,
                )
            owner[residue] = r
        # Redundant: a residue bijection already makes the sum divisible by the period.
        if sum(displacements) % period:
            raise InvalidPermutation(
                "displacement-sum",
                f"sum of displacements {sum(displacements)} is not divisible by {period}",
            )
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "displacements", displacements)

    def apply(self, i: int) -> int:
        return i + self.displacements[i % self.period]

    def bandwidth(self) -> int:
        return max(abs(d) for d in self.displacements)

    def inverse(self) -> "Periodic":
        inv = [0] * self.period
        for r, d in enumerate(self.displacements):
            inv[(r + d) % self.period] = -d
        return Periodic(self.period, tuple(inv))

    def non_trivial_range(self) -> range:
        return range(0, self.period)

    @property
    def mean_displacement(self) -> int:
        return sum(self.displacements) // self.period

    def expanded(self, period: int) -> "Periodic":
        """The same map described over a multiple of the stored period."""

        if period % self.period:
            raise ValueError(f"{period} is not a multiple of {self.period}")
        return Periodic(period, tuple(self.displacements[r % self.period] for r in range(period)))


@dataclass(frozen=True)
class FiniteBinaryMatrix:
    row_lo: int
    col_lo: int
    entries: Tuple[Tuple[int, ...], ...]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def entry(self, i: int, j: int) -> int:
        """Entry at absolute position (i, j)."""

        return self.entries[i - self.row_lo][j - self.col_lo]

    def ones(self) -> Iterator[Tuple[int, int]]:
        for r, row in enumerate(self.entries):
            for c, value in enumerate(row):
                if value:
                    yield self.row_lo + r, self.col_lo + c

    def count(self) -> int:
        return sum(sum(row) for row in self.entries)


def apply(P: BandedPermutation, i: int) -> int:
    return P.apply(i)


def inverse(P: BandedPermutation) -> BandedPermutation:
    return P.inverse()


# P^-1 = P^T for permutation matrices.
transpose = inverse


def bandwidth(P: BandedPermutation) -> int:
    return P.bandwidth()


def displacement(P: BandedPermutation, i: int) -> int:
    return P.apply(i) - i


def identity() -> EventualShift:
    return EventualShift(0)


def shift_power(k: int) -> EventualShift:
    """S^k, where S has its ones on the first subdiagonal: π(i) = i - k."""

    return EventualShift(-k)


def as_eventual_shift(P: BandedPermutation) -> Optional[EventualShift]:
    if isinstance(P, EventualShift):
        return P
    if isinstance(P, Periodic) and len(set(P.displacements)) == 1:
        return EventualShift(P.displacements[0])
    return None


def as_periodic(P: BandedPermutation) -> Optional[Periodic]:
    if isinstance(P, Periodic):
        return P
    if isinstance(P, EventualShift) and not P.images:
        return Periodic(1, (P.s,))
    return None


def is_identity(P: BandedPermutation) -> bool:
    return P.bandwidth() == 0


def compose(P: BandedPermutation, Q: BandedPermutation) -> BandedPermutation:
    """Matrix product P·Q, i.e. the map i -> π_Q(π_P(i))."""

    if isinstance(P, EventualShift) and isinstance(Q, EventualShift):
        return _compose_eventual(P, Q)
    if isinstance(P, Periodic) and isinstance(Q, Periodic):
        return _compose_periodic(P, Q)

    left, right = as_eventual_shift(P), as_eventual_shift(Q)
    if left is not None and right is not None:
        return _compose_eventual(left, right)
    left_p, right_p = as_periodic(P), as_periodic(Q)
    if left_p is not None and right_p is not None:
        return _compose_periodic(left_p, right_p)
    raise IncompatibleBackends(
        "cannot compose a periodic permutation with non-constant displacement "
        "and an eventual shift with a non-empty window"
    )


def _compose_eventual(P: EventualShift, Q: EventualShift) -> EventualShift:
    s = P.s + Q.s
    spans = []
    if P.images:
        spans.append((P.lo, P.hi))
    if Q.images:
        spans.append((Q.lo - P.s, Q.hi - P.s))
    if not spans:
        return EventualShift(s)
    lo = min(start for start, _ in spans)
    hi = max(stop for _, stop in spans)
    return EventualShift(s, lo, tuple(Q.apply(P.apply(i)) for i in range(lo, hi)))


def _compose_periodic(P: Periodic, Q: Periodic) -> Periodic:
    period = lcm(P.period, Q.period)
    return Periodic(period, tuple(Q.apply(P.apply(r)) - r for r in range(period)))


def window_matrix(P: BandedPermutation, rows: range, cols: range) -> FiniteBinaryMatrix:
    if rows.step != 1 or cols.step != 1:
        raise ValueError("window ranges must have step 1")
    width = len(cols)
    entries: List[Tuple[int, ...]] = []
    for i in rows:
        row = [0] * width
        j = P.apply(i)
        if j in cols:
            row[j - cols.start] = 1
        entries.append(tuple(row))
    return FiniteBinaryMatrix(rows.start, cols.start, tuple(entries))


def default_probe_range(P: BandedPermutation, Q: BandedPermutation) -> range:
    """Window/period union of both operands, widened by their bandwidths."""

    margin = max(P.bandwidth(), Q.bandwidth()) + 1
    spans = [P.non_trivial_range(), Q.non_trivial_range()]
    periods = [X.period for X in (P, Q) if isinstance(X, Periodic)]
    lo = min((span.start for span in spans if span), default=0)
    hi = max((span.stop for span in spans if span), default=0)
    if periods:
        hi = max(hi, lo + lcm(*periods))
    return range(lo - margin, hi + margin)


def equals(P: BandedPermutation, Q: BandedPermutation, probe_range: Optional[range] = None) -> bool:
    """True iff P and Q are the same map on all of Z.

    Same-backend comparisons are structural. A non-constant periodic map is
    never eventually a shift, so mixed comparisons reduce to pure shifts.
    ``probe_range`` additionally demands pointwise agreement on that range.
    """

    if isinstance(P, Periodic) and isinstance(Q, Periodic):
        period = lcm(P.period, Q.period)
        same = P.expanded(period) == Q.expanded(period)
    else:
        left, right = as_eventual_shift(P), as_eventual_shift(Q)
        same = left is not None and right is not None and left == right
    if same and probe_range is not None:
        same = all(P.apply(i) == Q.apply(i) for i in probe_range)
    return same


__all__ = [
    "BandedPermutation",
    "EventualShift",
    "FiniteBinaryMatrix",
    "Periodic",
    "apply",
    "as_eventual_shift",
    "as_periodic",
    "bandwidth",
    "compose",
    "default_probe_range",
    "displacement",
    "equals",
    "identity",
    "inverse",
    "is_identity",
    "shift_power",
    "transpose",
    "window_matrix",
]
