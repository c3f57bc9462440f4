"""Permutation crossover operators and the paired-swap mutation.

All three crossovers produce two offspring per parent pair. Cut positions
are 0-based and inclusive on both ends; ``draw_cuts`` samples them the way
the engine does (lo uniform over all positions, hi uniform over lo..n-1).
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .tour import TOUR_DTYPE, _is_permutation, validate_tour

DEFAULT_MUTATION_RATE = 0.05


@njit(cache=True)
def _pmx_fill(p1, p2, lo, hi, out):
    # out takes p2's segment; elsewhere keep p1's city, chasing the
    # segment mapping p2[j] -> p1[j] until the city leaves the segment.
    n = p1.shape[0]
    seg_pos = np.full(n, -1, np.int64)
    for j in range(lo, hi + 1):
        out[j] = p2[j]
        seg_pos[p2[j]] = j
    for k in range(n):
        if lo <= k <= hi:
            continue
        c = p1[k]
        while seg_pos[c] != -1:
            c = p1[seg_pos[c]]
        out[k] = c


@njit(cache=True)
def _ox_fill(p1, p2, lo, hi, out):
    # out takes p2's segment; remaining slots are filled starting after
    # the second cut (wrapping) with p1's cities in the cyclic order they
    # appear after that cut, skipping cities already in the segment.
    n = p1.shape[0]
    in_seg = np.zeros(n, np.bool_)
    for j in range(lo, hi + 1):
        out[j] = p2[j]
        in_seg[p2[j]] = True
    write = (hi + 1) % n
    for step in range(n):
        c = p1[(hi + 1 + step) % n]
        if in_seg[c]:
            continue
        out[write] = c
        write = (write + 1) % n


@njit(cache=True)
def _cx_pair(p1, p2, o1, o2):
    # Positions are partitioned into cycles (position -> city in p2 ->
    # that city's position in p1). Odd-numbered cycles swap the source
    # parents, so every gene stays at the position it held in a parent.
    n = p1.shape[0]
    pos_in_p1 = np.empty(n, np.int64)
    for k in range(n):
        pos_in_p1[p1[k]] = k
    seen = np.zeros(n, np.bool_)
    swap = False
    for start in range(n):
        if seen[start]:
            continue
        k = start
        while not seen[k]:
            seen[k] = True
            if swap:
                o1[k] = p2[k]
                o2[k] = p1[k]
            else:
                o1[k] = p1[k]
                o2[k] = p2[k]
            k = pos_in_p1[p2[k]]
        swap = not swap


def draw_cuts(n: int, rng: np.random.Generator) -> tuple[int, int]:
    """Sample an inclusive cut pair: lo uniform on 0..n-1, hi on lo..n-1."""
    lo = int(rng.integers(n))
    hi = int(rng.integers(lo, n))
    return lo, hi


def _checked_parents(p1, p2) -> tuple[np.ndarray, np.ndarray]:
    p1 = np.ascontiguousarray(p1, dtype=TOUR_DTYPE)
    p2 = np.ascontiguousarray(p2, dtype=TOUR_DTYPE)
    if p1.shape != p2.shape:
        raise ValueError(f"parent lengths differ: {p1.shape[0]} vs {p2.shape[0]}")
    for label, p in (("p1", p1), ("p2", p2)):
        if not _is_permutation(p, p.shape[0]):
            raise ValueError(f"invalid parent {label}: {validate_tour(p, p.shape[0])}")
    return p1, p2


def _checked_cuts(cuts, n: int) -> tuple[int, int]:
    lo, hi = int(cuts[0]), int(cuts[1])
    if not (0 <= lo <= hi < n):
        raise ValueError(f"cut pair ({lo}, {hi}) out of range for {n} cities")
    return lo, hi


def pmx(p1, p2, cuts) -> tuple[np.ndarray, np.ndarray]:
    """Partially mapped crossover.

    Each offspring takes the other parent's segment at cuts lo..hi and
    keeps its own cities elsewhere; positions that would duplicate a
    segment city are resolved through the segment's value mapping.
    """
    p1, p2 = _checked_parents(p1, p2)
    lo, hi = _checked_cuts(cuts, p1.shape[0])
    o1 = np.empty_like(p1)
    o2 = np.empty_like(p1)
    _pmx_fill(p1, p2, lo, hi, o1)
    _pmx_fill(p2, p1, lo, hi, o2)
    return o1, o2


def ox(p1, p2, cuts) -> tuple[np.ndarray, np.ndarray]:
    """Order crossover.

    Each offspring takes the other parent's segment; the open positions
    are filled, wrapping from just after the second cut, with its own
    parent's remaining cities in their cyclic order after that cut.
    """
    p1, p2 = _checked_parents(p1, p2)
    lo, hi = _checked_cuts(cuts, p1.shape[0])
    o1 = np.empty_like(p1)
    o2 = np.empty_like(p1)
    _ox_fill(p1, p2, lo, hi, o1)
    _ox_fill(p2, p1, lo, hi, o2)
    return o1, o2


def cx(p1, p2) -> tuple[np.ndarray, np.ndarray]:
    """Cycle crossover.

    Every offspring position holds the city one of the parents had there:
    positions split into cycles, copied from alternating parents.
    """
    p1, p2 = _checked_parents(p1, p2)
    o1 = np.empty_like(p1)
    o2 = np.empty_like(p1)
    _cx_pair(p1, p2, o1, o2)
    return o1, o2


def swap_marked_pairs(order: np.ndarray, marks) -> np.ndarray:
    """Swap the cities at the marked positions, pairing them in order.

    Marks are paired left to right (1st with 2nd, 3rd with 4th, ...); an
    odd trailing mark is discarded. Returns a new tour.
    """
    out = np.array(order, dtype=TOUR_DTYPE)
    marks = np.asarray(marks, dtype=np.int64)
    stop = marks.size - (marks.size % 2)
    for k in range(0, stop, 2):
        a, b = marks[k], marks[k + 1]
        out[a], out[b] = out[b], out[a]
    return out


def pairwise_swap_mutation(order: np.ndarray, p_m: float, rng: np.random.Generator) -> np.ndarray:
    """Mutate by swapping pairs of independently marked positions.

    One uniform draw per position; positions drawing below ``p_m`` are
    marked and handed to :func:`swap_marked_pairs`. The result is always
    a valid permutation.
    """
    draws = rng.random(len(order))
    marks = np.flatnonzero(draws < p_m)
    return swap_marked_pairs(order, marks)
