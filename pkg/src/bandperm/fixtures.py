"""Named example permutations shipped with the CLI."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict, List

from .documents import permutation_to_document
from .permutations import BandedPermutation, EventualShift, Periodic, identity


@dataclass(frozen=True)
class Fixture:
    name: str
    build: Callable[[], BandedPermutation]
    note: str

    @property
    def permutation(self) -> BandedPermutation:
        return self.build()

    def document(self) -> Dict[str, Any]:
        return permutation_to_document(self.permutation, name=self.name, note=self.note)


FIXTURES: Dict[str, Fixture] = {
    fixture.name: fixture
    for fixture in (
        Fixture("shift", lambda: EventualShift(-1), "S: ones on the first subdiagonal, pi(i) = i - 1, kappa = -1"),
        Fixture("identity", identity, "identity, trivially centered"),
        Fixture(
            "intertwined",
            lambda: Periodic(2, (-3, 3)),
            "reconstructed: symmetric (pi = pi^-1) and intertwined, no split point, kappa = 0",
        ),
        Fixture(
            "intertwined-shifted",
            lambda: Periodic(2, (-2, 4)),
            "reconstructed: the intertwined example moved one column right, kappa = 1",
        ),
        Fixture(
            "rewire-demo",
            lambda: EventualShift(1, 0, (3, 1, 4, 2)),
            "w = 3 with n = 4 ones right of j* = 0, kappa = 1; rewiring at j* = 0 splits at i* = -1",
        ),
    )
}


def fixture_names() -> List[str]:
    return list(FIXTURES)


def get_fixture(name: str) -> Fixture:
    try:
        return FIXTURES[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(FIXTURES)}") from None


__all__ = ["FIXTURES", "Fixture", "fixture_names", "get_fixture"]
