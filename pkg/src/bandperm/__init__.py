"""bandperm: Fredholm index and factorizations of banded permutation matrices."""

__all__ = ["__version__"]

__version__ = "0.1.0"
