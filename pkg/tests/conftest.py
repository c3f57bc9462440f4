"""Shared test helpers: 1-based tour literals, independent oracles and
random instance generators. The oracles here never call the code paths
they are used to check.
"""

import itertools
import os
from pathlib import Path

import numpy as np
import pytest

from gatsp.tsplib import Instance, build_euc2d

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def perm(*cities):
    """Tour literal in the 1-based notation of files and reports."""
    return np.array([c - 1 for c in cities], dtype=np.int64)


def closed_length_slow(order, w):
    """Independent tour-length oracle: plain Python sum over the cycle."""
    n = len(order)
    return sum(w[int(order[k]), int(order[(k + 1) % n])] for k in range(n))


def brute_force_optimum(w):
    """Exhaustive oracle: best closed tour by trying every permutation
    with city 0 pinned first (rotations are equivalent). Only for small n.
    """
    n = w.shape[0]
    rows = w.tolist()
    best_len = None
    best_tour = None
    for rest in itertools.permutations(range(1, n)):
        tour = (0,) + rest
        length = rows[tour[-1]][0]
        for k in range(n - 1):
            length += rows[tour[k]][tour[k + 1]]
        if best_len is None or length < best_len:
            best_len = length
            best_tour = tour
    return best_len, np.array(best_tour, dtype=np.int64)


def random_asymmetric_matrix(n, rng, high=100):
    w = rng.integers(1, high, size=(n, n)).astype(np.int64)
    np.fill_diagonal(w, 0)
    return w


def random_symmetric_matrix(n, rng, high=100):
    w = random_asymmetric_matrix(n, rng, high)
    w = np.minimum(w, w.T)
    np.fill_diagonal(w, 0)
    return w


def random_euc2d_matrix(n, rng, span=1000):
    return build_euc2d(rng.uniform(0, span, size=(n, 2)))


def asymmetric_instance(n, rng, name="random-atsp"):
    return Instance(name=name, n=n, symmetric=False, weights=random_asymmetric_matrix(n, rng))


def euc2d_instance(n, rng, name="random-euc2d"):
    return Instance(name=name, n=n, symmetric=True, weights=random_euc2d_matrix(n, rng))


class ScriptedRng:
    """Stand-in random generator that replays queued draws.

    ``random()`` pops from ``uniforms`` (a scalar per call, or an array
    when called with a size); ``integers(lo, hi)`` pops from ``ints``.
    """

    def __init__(self, uniforms=(), ints=()):
        self.uniforms = list(uniforms)
        self.ints = list(ints)
        self.uniform_calls = 0
        self.integer_calls = 0

    def random(self, size=None):
        self.uniform_calls += 1
        value = self.uniforms.pop(0)
        if size is None:
            return value
        return np.asarray(value, dtype=float)

    def integers(self, lo, hi=None):
        self.integer_calls += 1
        return self.ints.pop(0)


def ftv170_path():
    """The asymmetric 171-city benchmark file, when present.

    Looked up from $GATSP_FTV170 or data/ftv170.atsp; this environment
    cannot download it, so tests needing the real file skip when absent.
    """
    override = os.environ.get("GATSP_FTV170")
    candidates = [Path(override)] if override else []
    candidates.append(DATA_DIR / "ftv170.atsp")
    for path in candidates:
        if path.is_file():
            return path
    return None


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Trigger all JIT compilation up front so timed tests measure the
    algorithms, not the compiler."""
    from gatsp import engine
    from gatsp.local_search import l1_window_delta, reversal_delta
    from gatsp.tsplib import Instance

    rng = np.random.default_rng(0)
    w = random_asymmetric_matrix(6, rng)
    inst = Instance(name="warmup", n=6, symmetric=False, weights=w)
    engine.run(inst, engine.GaParams(pop_size=4, generations=2, seed=0, crossover="pmx"))
    engine.run(inst, engine.GaParams(pop_size=4, generations=2, seed=0, crossover="ox"))
    engine.run(inst, engine.GaParams(pop_size=4, generations=2, seed=0, crossover="cx"))
    engine.run(
        inst,
        engine.GaParams(pop_size=4, generations=2, seed=0, p_m2=1.0, l1_enabled=False),
    )
    w_float = w.astype(np.float64)
    inst_f = Instance(name="warmup-f", n=6, symmetric=False, weights=w_float)
    engine.run(inst_f, engine.GaParams(pop_size=4, generations=2, seed=0, p_m2=1.0))
    tour = perm(1, 2, 3, 4, 5, 6)
    for weights in (w, w_float):
        l1_window_delta(tour, 0, weights)
        reversal_delta(tour, 1, 3, weights)
