"""Factorizations of centered banded permutations.

* ``factor_bc``: P_c = B·C with B, C block diagonal, blocks of size 2w and
  the C blocks offset by w from the B blocks.
* ``factor_layers``: P_c = F_1 F_2 ... F_N where each F exchanges disjoint
  pairs of neighbouring rows, N < 2w.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .errors import BoundViolation, InvalidPermutation, NotCentered
from .index import center, plus_index
from .permutations import (
    BandedPermutation,
    EventualShift,
    Periodic,
    compose,
    identity,
    shift_power,
)


logger = logging.getLogger(__name__)

TAIL_IDENTITY = "identity"
TAIL_PERIODIC = "periodic"
TAILS = (TAIL_IDENTITY, TAIL_PERIODIC)


@dataclass(frozen=True)
class BlockFactorization:
    """B-block g covers [anchor + 2wg, anchor + 2w(g+1)); C-block k starts w later.

    Blocks are stored in one-line notation relative to the block start.
    Unstored blocks are the identity. With a periodic tail, block g repeats
    as block g mod ``period``.
    """

    w: int
    anchor: int
    b_blocks: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    c_blocks: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    tail: str = TAIL_IDENTITY
    period: int = 0

    def __post_init__(self) -> None:
        if self.tail not in TAILS:
            raise ValueError(f"unknown tail {self.tail!r}")
        if self.tail == TAIL_PERIODIC and self.w and self.period < 1:
            raise ValueError("a periodic factorization needs a positive block period")
        size = 2 * self.w
        for name, blocks in (("b_blocks", self.b_blocks), ("c_blocks", self.c_blocks)):
            for g, block in blocks.items():
                if sorted(block) != list(range(size)):
                    raise InvalidPermutation(
                        "block-permutation", f"{name}[{g}] is not a permutation of {size} symbols", g
                    )

    @property
    def block_size(self) -> int:
        return 2 * self.w


class Crossing(NamedTuple):
    i: int
    j: int
    x: Fraction


@dataclass(frozen=True)
class TranspositionLayers:
    """Layer t lists the positions p whose rows p and p + 1 are exchanged.

    With a periodic tail, positions are residues modulo ``period``.
    """

    layers: Tuple[Tuple[int, ...], ...] = ()
    tail: str = TAIL_IDENTITY
    period: int = 0
    strategy: str = "ascending"

    def __post_init__(self) -> None:
        if self.tail not in TAILS:
            raise ValueError(f"unknown tail {self.tail!r}")
        layers = tuple(tuple(sorted(layer)) for layer in self.layers)
        for number, layer in enumerate(layers):
            for left, right in zip(layer, layer[1:]):
                if right - left < 2:
                    raise InvalidPermutation(
                        "non-adjacent-swaps", f"layer {number} swaps overlapping pairs", right
                    )
            if self.tail == TAIL_PERIODIC and layer:
                if any(not 0 <= t < self.period for t in layer):
                    raise InvalidPermutation(
                        "non-adjacent-swaps", f"layer {number} has a position outside [0, {self.period})"
                    )
                if len(layer) > 1 and layer[0] + self.period - layer[-1] < 2:
                    raise InvalidPermutation(
                        "non-adjacent-swaps", f"layer {number} wraps onto itself", layer[-1]
                    )
        object.__setattr__(self, "layers", layers)

    @property
    def N(self) -> int:
        return len(self.layers)


@dataclass(frozen=True)
class FullFactorization:
    """P = S^(-κ) F_1 ... F_N."""

    kappa: int
    centered: BandedPermutation
    layers: TranspositionLayers


def _require_centered(P_c: BandedPermutation) -> None:
    kappa = plus_index(P_c)
    if kappa:
        raise NotCentered(kappa)


def _b_order(P_c: BandedPermutation, start: int, w: int) -> List[int]:
    """Rows of one B-block, those landing left of the bisecting boundary first."""

    boundary = start + w
    rows = range(start, start + 2 * w)
    left = [i for i in rows if P_c.apply(i) < boundary]
    right = [i for i in rows if P_c.apply(i) >= boundary]
    if len(left) != w:
        raise NotCentered(len(right) - w)
    return left + right


def factor_bc(P_c: BandedPermutation, anchor: Optional[int] = None) -> BlockFactorization:
    _require_centered(P_c)
    w = P_c.bandwidth()
    if w == 0:
        return BlockFactorization(w=0, anchor=anchor or 0)
    size = 2 * w

    if isinstance(P_c, Periodic):
        a = 0 if anchor is None else anchor
        count = lcm(P_c.period, size) // size
        b_groups = range(count)
        c_groups = range(count)
        tail, period = TAIL_PERIODIC, count
    else:
        lo, hi = P_c.non_trivial_range().start, P_c.non_trivial_range().stop
        a = (lo - size) // size * size if anchor is None else anchor
        first = (lo - a) // size - 1
        last = (hi - a) // size + 1
        b_groups = range(first, last + 1)
        c_groups = range(first - 1, last + 1)
        tail, period = TAIL_IDENTITY, 0
    logger.debug("factor_bc: w=%d anchor=%d tail=%s", w, a, tail)

    orders: Dict[int, List[int]] = {}

    def order(g: int) -> List[int]:
        if g not in orders:
            orders[g] = _b_order(P_c, a + size * g, w)
        return orders[g]

    b_blocks: Dict[int, Tuple[int, ...]] = {}
    for g in b_groups:
        start = a + size * g
        block = [0] * size
        for t, row in enumerate(order(g)):
            block[row - start] = t
        b_blocks[g] = tuple(block)

    c_blocks: Dict[int, Tuple[int, ...]] = {}
    for k in c_groups:
        start = a + w + size * k
        sources = order(k)[w:] + order(k + 1)[:w]
        c_blocks[k] = tuple(P_c.apply(row) - start for row in sources)

    if tail == TAIL_IDENTITY:
        trivial = tuple(range(size))
        b_blocks = {g: block for g, block in b_blocks.items() if block != trivial}
        c_blocks = {k: block for k, block in c_blocks.items() if block != trivial}
    return BlockFactorization(w=w, anchor=a, b_blocks=b_blocks, c_blocks=c_blocks, tail=tail, period=period)


def _block_diagonal(
    blocks: Dict[int, Tuple[int, ...]], origin: int, size: int, tail: str, count: int
) -> BandedPermutation:
    if size == 0:
        return identity()

    if tail == TAIL_PERIODIC:
        length = size * count
        displacements = []
        for r in range(length):
            g, t = divmod(r - origin, size)
            block = blocks.get(g % count)
            image = origin + size * g + block[t] if block else r
            displacements.append(image - r)
        return Periodic(length, tuple(displacements))

    if not blocks:
        return identity()
    lo = origin + size * min(blocks)
    hi = origin + size * (max(blocks) + 1)
    images = []
    for i in range(lo, hi):
        g, t = divmod(i - origin, size)
        block = blocks.get(g)
        images.append(origin + size * g + block[t] if block else i)
    return EventualShift(0, lo, tuple(images))


def block_permutations(f: BlockFactorization) -> Tuple[BandedPermutation, BandedPermutation]:
    """The block-diagonal permutations B and C described by ``f``."""

    B = _block_diagonal(f.b_blocks, f.anchor, f.block_size, f.tail, f.period)
    C = _block_diagonal(f.c_blocks, f.anchor + f.w, f.block_size, f.tail, f.period)
    return B, C


def reconstruct_bc(f: BlockFactorization) -> BandedPermutation:
    B, C = block_permutations(f)
    return compose(B, C)


def _greedy_layers(values: List[int], cyclic: bool, descending: bool) -> List[Tuple[int, ...]]:
    """Sort ``values`` by rounds of disjoint adjacent exchanges.

    Each round takes a maximal set of pairwise non-adjacent positions holding
    an adjacent inversion, scanning in the requested direction. In the cyclic
    case position len-1 pairs with position 0 of the next period.
    """

    work = list(values)
    length = len(work)
    last = length if cyclic else length - 1
    scan = range(last - 1, -1, -1) if descending else range(last)

    def inverted(t: int) -> bool:
        if t + 1 < length:
            return work[t] > work[t + 1]
        return work[t] > work[0] + length

    layers: List[Tuple[int, ...]] = []
    while True:
        chosen: List[int] = []
        blocked: set[int] = set()
        for t in scan:
            if t in blocked or not inverted(t):
                continue
            chosen.append(t)
            blocked.update(((t - 1) % length, (t + 1) % length) if cyclic else (t - 1, t + 1))
        if not chosen:
            return layers
        for t in chosen:
            if t + 1 < length:
                work[t], work[t + 1] = work[t + 1], work[t]
            else:
                work[t], work[0] = work[0] + length, work[t] - length
        layers.append(tuple(sorted(chosen)))


def factor_layers(P_c: BandedPermutation) -> TranspositionLayers:
    _require_centered(P_c)
    w = P_c.bandwidth()
    if w == 0:
        return TranspositionLayers()
    bound = 2 * w

    if isinstance(P_c, Periodic):
        period = lcm(P_c.period, bound)
        values = [P_c.apply(r) for r in range(period)]
        origin, tail, cyclic = 0, TAIL_PERIODIC, True
    else:
        span = P_c.non_trivial_range()
        values = [P_c.apply(i) for i in span]
        origin, tail, cyclic, period = span.start, TAIL_IDENTITY, False, 0

    layers: List[Tuple[int, ...]] = []
    for strategy, descending in (("ascending", False), ("descending", True)):
        layers = _greedy_layers(values, cyclic, descending)
        if len(layers) < bound:
            shifted = tuple(tuple(origin + t for t in layer) for layer in layers)
            return TranspositionLayers(shifted, tail=tail, period=period, strategy=strategy)
        logger.debug("%s greedy scan used %d layers, bound is %d", strategy, len(layers), bound)
    raise BoundViolation(len(layers), bound, P_c)


def layer_permutation(positions: Sequence[int], tail: str = TAIL_IDENTITY, period: int = 0) -> BandedPermutation:
    """The bandwidth-1 permutation exchanging rows p and p + 1 for each position p."""

    if not positions:
        return identity()
    if tail == TAIL_PERIODIC:
        displacements = [0] * period
        for t in positions:
            displacements[t] += 1
            displacements[(t + 1) % period] -= 1
        return Periodic(period, tuple(displacements))
    lo = min(positions)
    images = list(range(lo, max(positions) + 2))
    for t in positions:
        images[t - lo], images[t + 1 - lo] = images[t + 1 - lo], images[t - lo]
    return EventualShift(0, lo, tuple(images))


def reconstruct_layers(f: TranspositionLayers) -> BandedPermutation:
    factors = [layer_permutation(layer, f.tail, f.period) for layer in f.layers]
    return reduce(compose, factors, identity())


def crossing_diagnostics(P_c: BandedPermutation, rows: range) -> List[Crossing]:
    """Crossings of the wiring diagram joining (0, i) to (1, π(i)).

    Lines i < j cross iff π(i) > π(j), at abscissa (j - i) / ((j - i) + (π(i) - π(j))).
    """

    w = P_c.bandwidth()
    crossings = []
    for i in rows:
        for j in range(i + 1, min(i + 2 * w + 1, rows.stop)):
            gap = P_c.apply(i) - P_c.apply(j)
            if gap > 0:
                crossings.append(Crossing(i, j, Fraction(j - i, (j - i) + gap)))
    return crossings


def distinct_crossing_lines(crossings: Sequence[Crossing]) -> List[Fraction]:
    return sorted({c.x for c in crossings})


def concurrent_points(P_c: BandedPermutation, crossings: Sequence[Crossing]) -> List[Tuple[Fraction, Fraction, Tuple[int, ...]]]:
    """Points where three or more wires meet, as (x, y, wires)."""

    wires: Dict[Tuple[Fraction, Fraction], set[int]] = {}
    for c in crossings:
        y = c.i + c.x * (P_c.apply(c.i) - c.i)
        wires.setdefault((c.x, y), set()).update((c.i, c.j))
    return [(x, y, tuple(sorted(lines))) for (x, y), lines in sorted(wires.items()) if len(lines) > 2]


def factor_full(P: BandedPermutation) -> FullFactorization:
    centering = center(P)
    return FullFactorization(
        kappa=centering.kappa,
        centered=centering.centered,
        layers=factor_layers(centering.centered),
    )


def reconstruct_full(f: FullFactorization) -> BandedPermutation:
    return compose(shift_power(-f.kappa), reconstruct_layers(f.layers))


__all__ = [
    "BlockFactorization",
    "Crossing",
    "FullFactorization",
    "TAIL_IDENTITY",
    "TAIL_PERIODIC",
    "TranspositionLayers",
    "block_permutations",
    "concurrent_points",
    "crossing_diagnostics",
    "distinct_crossing_lines",
    "factor_bc",
    "factor_full",
    "factor_layers",
    "layer_permutation",
    "reconstruct_bc",
    "reconstruct_full",
    "reconstruct_layers",
]
