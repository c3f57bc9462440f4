"""The two tour-improvement strategies layered on top of the plain GA.

Strategy 1 slides a four-city window over the tour and swaps the two
middle cities whenever that shortens the tour. A tour of n cities has
exactly n-3 such windows; they do not wrap past the tour end.

Strategy 2 is a guarded extra mutation: with a small probability a tour
is picked, a random interior segment is reversed, and the reversal is
kept only when it shortens the tour.

Both strategies report the exact length change they caused, so callers
can maintain cached lengths without re-summing the tour.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .tour import TOUR_DTYPE

DEFAULT_REVERSAL_RATE = 0.02


@njit(cache=True)
def _window_delta(order, i, w):
    a = order[i]
    b = order[i + 1]
    c = order[i + 2]
    d = order[i + 3]
    # swapping b and c changes three edges; w[c, b] != w[b, c] on
    # asymmetric instances, so all three terms are required
    return w[a, c] + w[c, b] + w[b, d] - (w[a, b] + w[b, c] + w[c, d])


@njit(cache=True)
def _window_pass(order, w):
    n = order.shape[0]
    total = w[0, 0] - w[0, 0]  # zero of the weight dtype
    for i in range(n - 3):
        delta = _window_delta(order, i, w)
        if delta < 0:
            order[i + 1], order[i + 2] = order[i + 2], order[i + 1]
            total += delta
    return total


@njit(cache=True)
def _segment_reversal_delta(order, lo, hi, w):
    before = order[lo - 1]
    after = order[hi + 1]
    first = order[lo]
    last = order[hi]
    delta = w[before, last] + w[first, after] - w[before, first] - w[last, after]
    # interior edges all flip direction; a symmetric matrix contributes 0
    for k in range(lo, hi):
        delta += w[order[k + 1], order[k]] - w[order[k], order[k + 1]]
    return delta


def l1_window_delta(order: np.ndarray, i: int, weights: np.ndarray):
    """Exact length change of swapping the middle cities of window i.

    The window covers the four consecutive positions i..i+3; only the
    three affected edges are consulted, never the whole tour.
    """
    order = np.ascontiguousarray(order, dtype=TOUR_DTYPE)
    n = order.shape[0]
    if not 0 <= i <= n - 4:
        raise ValueError(f"window start {i} out of range 0..{n - 4}")
    return _window_delta(order, i, weights)


def l1_pass(order: np.ndarray, weights: np.ndarray) -> tuple[np.ndarray, object]:
    """One left-to-right sweep of the four-city window swap.

    Each improving swap is applied immediately and the sweep continues on
    the modified tour. Returns the new tour and the accumulated (never
    positive) length change.
    """
    out = np.array(order, dtype=TOUR_DTYPE)
    if out.shape[0] < 4:
        raise ValueError("window pass needs at least 4 cities")
    delta = _window_pass(out, weights)
    return out, delta


def reversal_delta(order: np.ndarray, lo: int, hi: int, weights: np.ndarray):
    """Exact length change of reversing positions lo..hi inclusive.

    Only the two boundary edges and the flipped interior edges are
    consulted. The segment must be interior: 1 <= lo <= hi <= n-2.
    """
    order = np.ascontiguousarray(order, dtype=TOUR_DTYPE)
    n = order.shape[0]
    if not (1 <= lo <= hi <= n - 2):
        raise ValueError(f"segment ({lo}, {hi}) not interior to a {n}-city tour")
    return _segment_reversal_delta(order, lo, hi, weights)


def l2_reversal(
    order: np.ndarray,
    weights: np.ndarray,
    p_m2: float,
    rng: np.random.Generator,
) -> tuple[np.ndarray, object]:
    """Probabilistic segment reversal, kept only when it shortens the tour.

    One uniform draw decides whether the tour is picked at all (below
    ``p_m2`` picks it). A picked tour gets a random interior segment, two
    position draws over 1..n-2, reversed; the candidate replaces the tour
    only if strictly shorter. Returns the tour and the (never positive)
    length change; the input array is returned untouched when nothing is
    kept.
    """
    n = len(order)
    if n < 4:
        raise ValueError("segment reversal needs at least 4 cities")
    zero = weights.dtype.type(0)
    if rng.random() >= p_m2:
        return order, zero
    a = int(rng.integers(1, n - 1))
    b = int(rng.integers(1, n - 1))
    lo, hi = (a, b) if a <= b else (b, a)
    order = np.ascontiguousarray(order, dtype=TOUR_DTYPE)
    delta = _segment_reversal_delta(order, lo, hi, weights)
    if delta < 0:
        out = order.copy()
        out[lo : hi + 1] = out[lo : hi + 1][::-1]
        return out, delta
    return order, zero
