import numpy as np
import pytest
from conftest import ScriptedRng, perm
from hypothesis import given, settings
from hypothesis import strategies as st

from gatsp.operators import (
    cx,
    draw_cuts,
    ox,
    pairwise_swap_mutation,
    pmx,
    swap_marked_pairs,
)
from gatsp.tour import validate_tour

P1 = perm(1, 2, 3, 4, 5, 6, 7, 8, 9)
P2 = perm(4, 5, 2, 1, 8, 7, 6, 9, 3)
CUTS_4_7 = (3, 6)  # 1-based positions 4..7


def test_pmx_worked_example():
    o1, o2 = pmx(P1, P2, CUTS_4_7)
    assert np.array_equal(o1, perm(4, 2, 3, 1, 8, 7, 6, 5, 9))
    assert np.array_equal(o2, perm(1, 8, 2, 4, 5, 6, 7, 9, 3))


def test_ox_worked_example():
    o1, o2 = ox(P1, P2, CUTS_4_7)
    assert np.array_equal(o1, perm(3, 4, 5, 1, 8, 7, 6, 9, 2))
    assert np.array_equal(o2, perm(2, 1, 8, 4, 5, 6, 7, 9, 3))


def test_cx_worked_example():
    o1, o2 = cx(P1, perm(4, 1, 2, 8, 7, 6, 9, 3, 5))
    assert np.array_equal(o1, perm(1, 2, 3, 4, 7, 6, 9, 8, 5))
    assert np.array_equal(o2, perm(4, 1, 2, 8, 5, 6, 7, 3, 9))


def test_pmx_hand_traced_small_case():
    # mapping chain on n=4: segment swap 2<->1, 3<->4
    o1, o2 = pmx(perm(1, 2, 3, 4), perm(2, 1, 4, 3), (1, 2))
    assert np.array_equal(o1, perm(2, 1, 4, 3))
    assert np.array_equal(o2, perm(1, 2, 3, 4))


def test_ox_hand_traced_small_case():
    o1, o2 = ox(perm(1, 2, 3, 4), perm(2, 1, 4, 3), (1, 2))
    assert np.array_equal(o1, perm(3, 1, 4, 2))
    assert np.array_equal(o2, perm(4, 2, 3, 1))


def test_cx_hand_traced_small_case():
    # two cycles: positions {1,2} and {3,4}
    o1, o2 = cx(perm(1, 2, 3, 4), perm(2, 1, 4, 3))
    assert np.array_equal(o1, perm(1, 2, 4, 3))
    assert np.array_equal(o2, perm(2, 1, 3, 4))


@pytest.mark.parametrize("cuts", [(0, 8), (3, 6), (5, 5)])
def test_identical_parents_reproduce_themselves(cuts):
    for xop in (lambda a, b: pmx(a, b, cuts), lambda a, b: ox(a, b, cuts), cx):
        o1, o2 = xop(P1, P1)
        assert np.array_equal(o1, P1)
        assert np.array_equal(o2, P1)


def test_crossovers_reject_bad_input():
    with pytest.raises(ValueError, match="lengths differ"):
        pmx(P1, perm(1, 2, 3), (0, 1))
    with pytest.raises(ValueError, match="invalid parent"):
        ox(perm(1, 2, 2, 4), perm(1, 2, 3, 4), (0, 1))
    with pytest.raises(ValueError, match="out of range"):
        pmx(perm(1, 2, 3, 4), perm(2, 1, 4, 3), (2, 4))
    with pytest.raises(ValueError, match="out of range"):
        ox(perm(1, 2, 3, 4), perm(2, 1, 4, 3), (-1, 2))
    with pytest.raises(ValueError, match="invalid parent"):
        cx(perm(1, 2, 3, 4), perm(1, 2, 4, 4))


parents = st.integers(4, 50).flatmap(
    lambda n: st.tuples(
        st.permutations(range(n)),
        st.permutations(range(n)),
        st.integers(0, n - 1),
        st.integers(0, n - 1),
    )
)


@given(parents)
@settings(max_examples=300, deadline=None)
def test_offspring_are_always_permutations(case):
    p1, p2, a, b = case
    n = len(p1)
    p1, p2 = np.array(p1), np.array(p2)
    cuts = (min(a, b), max(a, b))
    for o in (*pmx(p1, p2, cuts), *ox(p1, p2, cuts), *cx(p1, p2)):
        assert validate_tour(o, n) is None


@given(parents)
@settings(max_examples=200, deadline=None)
def test_pmx_keeps_the_swapped_segment(case):
    p1, p2, a, b = case
    p1, p2 = np.array(p1), np.array(p2)
    lo, hi = min(a, b), max(a, b)
    o1, o2 = pmx(p1, p2, (lo, hi))
    assert np.array_equal(o1[lo : hi + 1], p2[lo : hi + 1])
    assert np.array_equal(o2[lo : hi + 1], p1[lo : hi + 1])


@given(parents)
@settings(max_examples=200, deadline=None)
def test_ox_keeps_the_swapped_segment(case):
    p1, p2, a, b = case
    p1, p2 = np.array(p1), np.array(p2)
    lo, hi = min(a, b), max(a, b)
    o1, o2 = ox(p1, p2, (lo, hi))
    assert np.array_equal(o1[lo : hi + 1], p2[lo : hi + 1])
    assert np.array_equal(o2[lo : hi + 1], p1[lo : hi + 1])


@given(parents)
@settings(max_examples=200, deadline=None)
def test_cx_genes_come_from_a_parent_at_the_same_position(case):
    p1, p2, _, _ = case
    p1, p2 = np.array(p1), np.array(p2)
    o1, o2 = cx(p1, p2)
    for k in range(len(p1)):
        assert {int(o1[k]), int(o2[k])} == {int(p1[k]), int(p2[k])}


def test_swap_marked_pairs_discards_odd_trailing_mark():
    # marks at 1-based positions 2, 5, 7: the 7 is dropped, 2 and 5 swap
    t = perm(1, 2, 3, 4, 5, 6, 7, 8)
    out = swap_marked_pairs(t, [1, 4, 6])
    assert np.array_equal(out, perm(1, 5, 3, 4, 2, 6, 7, 8))


def test_swap_marked_pairs_hand_traced_two_pairs():
    # marks at 1-based 1,3,4,8 on (a..h): pairs (1,3) and (4,8)
    t = np.arange(8)
    out = swap_marked_pairs(t, [0, 2, 3, 7])
    assert np.array_equal(out, np.array([2, 1, 0, 7, 4, 5, 6, 3]))


def test_swap_marked_pairs_leaves_input_alone():
    t = perm(1, 2, 3, 4)
    out = swap_marked_pairs(t, [0, 2])
    assert np.array_equal(t, perm(1, 2, 3, 4))
    assert not np.array_equal(out, t)


def test_mutation_no_marks_is_identity():
    t = perm(1, 2, 3, 4, 5)
    rng = ScriptedRng(uniforms=[np.full(5, 0.99)])
    assert np.array_equal(pairwise_swap_mutation(t, 0.05, rng), t)


def test_mutation_draws_one_value_per_position():
    t = perm(5, 4, 3, 2, 1)
    draws = np.array([0.9, 0.01, 0.9, 0.9, 0.02])  # marks positions 1 and 4
    out = pairwise_swap_mutation(t, 0.05, ScriptedRng(uniforms=[draws]))
    assert np.array_equal(out, perm(5, 1, 3, 2, 4))


def test_mutation_is_seeded_deterministic():
    t = np.random.default_rng(3).permutation(40)
    a = pairwise_swap_mutation(t, 0.3, np.random.default_rng(9))
    b = pairwise_swap_mutation(t, 0.3, np.random.default_rng(9))
    assert np.array_equal(a, b)


@given(st.integers(4, 50), st.integers(0, 2**32 - 1), st.floats(0, 1))
@settings(max_examples=200, deadline=None)
def test_mutation_preserves_cities_and_changes_evenly(n, seed, p_m):
    rng = np.random.default_rng(seed)
    t = rng.permutation(n)
    out = pairwise_swap_mutation(t, p_m, rng)
    assert validate_tour(out, n) is None
    assert sorted(out.tolist()) == sorted(t.tolist())
    assert int((out != t).sum()) % 2 == 0


@given(st.integers(4, 60), st.integers(0, 2**32 - 1))
@settings(max_examples=100, deadline=None)
def test_draw_cuts_in_range_and_ordered(n, seed):
    lo, hi = draw_cuts(n, np.random.default_rng(seed))
    assert 0 <= lo <= hi < n
