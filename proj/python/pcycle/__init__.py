"""Permutation-cycle TSP solver: phases 1-3 and exact oracles."""

from ._core import (
    Error,
    Matrix,
    derangement_value,
    held_karp_tsp,
    hungarian_ap,
    is_tour,
    solve,
)

__all__ = [
    "Error",
    "Matrix",
    "derangement_value",
    "held_karp_tsp",
    "hungarian_ap",
    "is_tour",
    "solve",
]
