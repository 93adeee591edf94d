from __future__ import annotations

from bandperm.render import DIAGONAL, ONE, ZERO, render_ascii, render_dot
from bandperm.permutations import identity, shift_power


def _cells(output: str):
    return [line.split()[1:] for line in output.splitlines()[1:]]


def test_identity_shows_only_the_diagonal():
    output = render_ascii(identity(), range(0, 3))
    rows = _cells(output)
    assert len(rows) == 3
    for r, cells in enumerate(rows):
        assert cells.count(DIAGONAL) == 1
        assert cells.index(DIAGONAL) == r
        assert ONE not in cells
    assert output.splitlines()[0].split() == ["0", "1", "2"]


def test_shift_ones_sit_left_of_the_diagonal():
    rows = _cells(render_ascii(shift_power(1), range(0, 3)))
    for cells in rows:
        assert cells.index(ONE) + 1 == cells.index(DIAGONAL)
        assert cells.count(ZERO) == len(cells) - 2


def test_explicit_columns():
    output = render_ascii(shift_power(1), range(0, 2), range(0, 2))
    assert _cells(output) == [[DIAGONAL, ZERO], [ONE, DIAGONAL]]


def test_dot_output():
    output = render_dot(shift_power(1), range(0, 3))
    assert output.startswith("digraph bandperm {")
    assert output.rstrip().endswith("}")
    assert output.count("{") == output.count("}")
    assert '"i0" -> "j-1";' in output
    assert output.count("->") == 3
