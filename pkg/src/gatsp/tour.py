"""Tour representation, validity checking and closed-tour length evaluation.

A tour is a 1-D numpy integer array holding a permutation of the city
indices 0..n-1. City numbering is 0-based everywhere inside the package;
the 1-based convention of instance files and reports is applied only at
the I/O boundary (see :func:`render_tour` and the instance parser).
"""

from __future__ import annotations

import numpy as np
from numba import njit

TOUR_DTYPE = np.int64


@njit(cache=True)
def _closed_length(order, w):
    n = order.shape[0]
    total = w[order[n - 1], order[0]]
    for k in range(n - 1):
        total += w[order[k], order[k + 1]]
    return total


@njit(cache=True)
def _closed_lengths(tours, w, out):
    m, n = tours.shape
    for r in range(m):
        total = w[tours[r, n - 1], tours[r, 0]]
        for k in range(n - 1):
            total += w[tours[r, k], tours[r, k + 1]]
        out[r] = total


@njit(cache=True)
def _is_permutation(order, n):
    if order.shape[0] != n:
        return False
    seen = np.zeros(n, np.bool_)
    for k in range(n):
        c = order[k]
        if c < 0 or c >= n or seen[c]:
            return False
        seen[c] = True
    return True


def validate_tour(order: np.ndarray, n: int) -> str | None:
    """Check that ``order`` is a permutation of the n cities.

    Returns None when the tour is valid, otherwise a human-readable
    violation report (wrong length, duplicated or missing cities).
    City labels in the report are 1-based, matching file/report output.
    """
    order = np.asarray(order)
    if order.ndim != 1 or order.shape[0] != n:
        return f"wrong length: expected {n} cities, got {order.shape[0] if order.ndim == 1 else order.shape}"
    order = np.ascontiguousarray(order, dtype=TOUR_DTYPE)
    if _is_permutation(order, n):
        return None
    if order.size and (order.min() < 0 or order.max() >= n):
        bad = order[(order < 0) | (order >= n)]
        return f"city index out of range: {int(bad[0]) + 1} not in 1..{n}"
    counts = np.bincount(order, minlength=n)
    dupes = np.flatnonzero(counts > 1) + 1
    missing = np.flatnonzero(counts == 0) + 1
    parts = []
    if dupes.size:
        parts.append("duplicate city " + ", ".join(str(c) for c in dupes))
    if missing.size:
        parts.append("missing city " + ", ".join(str(c) for c in missing))
    return "; ".join(parts)


def tour_length(order: np.ndarray, weights: np.ndarray):
    """Length of the closed tour, including the edge back to the start.

    Raises ValueError when the tour and matrix dimensions disagree.
    """
    order = np.ascontiguousarray(order, dtype=TOUR_DTYPE)
    if weights.shape[0] != order.shape[0]:
        raise ValueError(
            f"tour has {order.shape[0]} cities but matrix is {weights.shape[0]}x{weights.shape[1]}"
        )
    return _closed_length(order, weights)


def population_lengths(tours: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Closed-tour length of every row of a (m, n) tour array."""
    tours = np.ascontiguousarray(tours, dtype=TOUR_DTYPE)
    if weights.shape[0] != tours.shape[1]:
        raise ValueError(
            f"tours have {tours.shape[1]} cities but matrix is {weights.shape[0]}x{weights.shape[1]}"
        )
    out = np.empty(tours.shape[0], dtype=weights.dtype)
    _closed_lengths(tours, weights, out)
    return out


def random_tour(n: int, rng: np.random.Generator) -> np.ndarray:
    """Uniformly random permutation of the n cities (Fisher-Yates)."""
    return rng.permutation(n).astype(TOUR_DTYPE)


def render_tour(order: np.ndarray) -> str:
    """Render a tour for reports: 1-based cities, space separated."""
    return " ".join(str(int(c) + 1) for c in order)
