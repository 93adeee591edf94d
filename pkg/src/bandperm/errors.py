from __future__ import annotations

from typing import Any, Optional


class BandpermError(ValueError):
    """Base class for every error raised by bandperm."""


class InvalidPermutation(BandpermError):
    def __init__(self, invariant: str, message: str, index: Optional[int] = None):
        self.invariant = invariant
        self.index = index
        where = f" at index {index}" if index is not None else ""
        super().__init__(f"{invariant} violated{where}: {message}")


class IncompatibleBackends(BandpermError):
    pass


class NotCentered(BandpermError):
    def __init__(self, kappa: int):
        self.kappa = kappa
        super().__init__(f"permutation is not centered (plus-index {kappa}); center it first")


class BoundViolation(BandpermError):
    def __init__(self, layers: int, bound: int, instance: Any):
        self.layers = layers
        self.bound = bound
        self.instance = instance
        super().__init__(f"layer count {layers} is not below 2w = {bound}")


class NonSquare(BandpermError):
    def __init__(self, rows: int, cols: int):
        self.rows = rows
        self.cols = cols
        super().__init__(f"matrix is {rows}x{cols}, expected square")


class Singular(BandpermError):
    pass


class DocumentError(BandpermError):
    """Schema violation in a JSON document."""


__all__ = [
    "BandpermError",
    "BoundViolation",
    "DocumentError",
    "IncompatibleBackends",
    "InvalidPermutation",
    "NonSquare",
    "NotCentered",
    "Singular",
]
