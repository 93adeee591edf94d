"""Text renderings of a finite piece of a permutation matrix."""

from __future__ import annotations

from typing import List, Optional

from .permutations import BandedPermutation


ONE = "●"
DIAGONAL = "×"
ZERO = "·"


def default_columns(P: BandedPermutation, rows: range) -> range:
    w = P.bandwidth()
    return range(rows.start - w, rows.stop + w)


def render_ascii(P: BandedPermutation, rows: range, cols: Optional[range] = None) -> str:
    """Rows of P over ``cols``; the zeroth diagonal is drawn with ×, other ones with ●."""

    cols = cols if cols is not None else default_columns(P, rows)
    labels = [str(i) for i in rows] + [str(j) for j in cols]
    width = max((len(label) for label in labels), default=1) + 1
    lines: List[str] = [" " * (width + 1) + "".join(str(j).rjust(width) for j in cols)]
    for i in rows:
        image = P.apply(i)
        cells = []
        for j in cols:
            if j == i:
                cells.append(DIAGONAL)
            elif j == image:
                cells.append(ONE)
            else:
                cells.append(ZERO)
        lines.append(str(i).rjust(width) + " " + "".join(cell.rjust(width) for cell in cells))
    return "\n".join(lines) + "\n"


def _node(side: str, value: int) -> str:
    return f'"{side}{value}"'


def render_dot(P: BandedPermutation, rows: range) -> str:
    """Bipartite arrow diagram i -> π(i), the i's and the j's drawn separately."""

    images = sorted(P.apply(i) for i in rows)
    lines = [
        "digraph bandperm {",
        "  rankdir=TB;",
        "  node [shape=circle];",
        "  { rank=same; " + " ".join(f'{_node("i", i)} [label="{i}"];' for i in rows) + " }",
        "  { rank=same; " + " ".join(f'{_node("j", j)} [label="{j}"];' for j in images) + " }",
    ]
    for i in rows:
        lines.append(f"  {_node('i', i)} -> {_node('j', P.apply(i))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["DIAGONAL", "ONE", "ZERO", "default_columns", "render_ascii", "render_dot"]
