"""Generational GA loop: truncate to the best half, mate the survivors,
cross over, mutate the offspring, then run the optional window pass and
segment reversal over the whole population.

Survivors re-enter the next generation untouched by crossover and
mutation, and the two improvement strategies never lengthen a tour, so
the best length per generation is monotone non-increasing.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import local_search, operators
from .tour import TOUR_DTYPE, population_lengths, validate_tour

CROSSOVERS = ("pmx", "ox", "cx")


@dataclass
class GaParams:
    """All solver tunables; the defaults are the benchmark protocol."""

    pop_size: int = 256
    p_m: float = operators.DEFAULT_MUTATION_RATE
    p_m2: float = local_search.DEFAULT_REVERSAL_RATE
    generations: int = 1000
    crossover: str = "pmx"
    l1_enabled: bool = True
    l2_enabled: bool = True
    seed: int = 1
    target_length: float | None = None

    def violations(self) -> list[str]:
        problems = []
        if self.pop_size < 4 or self.pop_size % 2:
            problems.append(f"pop_size must be even and >= 4, got {self.pop_size}")
        for name in ("p_m", "p_m2"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                problems.append(f"{name} must be in [0, 1], got {value}")
        if self.generations < 1:
            problems.append(f"generations must be >= 1, got {self.generations}")
        if self.crossover not in CROSSOVERS:
            problems.append(f"crossover must be one of {'|'.join(CROSSOVERS)}, got {self.crossover!r}")
        return problems

    def validate(self) -> "GaParams":
        problems = self.violations()
        if problems:
            raise ValueError("invalid parameters: " + "; ".join(problems))
        return self


@dataclass
class Population:
    tours: np.ndarray  # (pop_size, n) city indices
    lengths: np.ndarray  # (pop_size,) cached closed-tour lengths
    generation: int = 0


@dataclass
class GenerationStats:
    generation: int
    best_length: int | float
    mean_length: float
    best_tour: np.ndarray


@dataclass
class RunResult:
    stats_series: list[GenerationStats]
    final_best: np.ndarray
    final_best_length: int | float
    wall_time: float = 0.0


def init_population(n: int, params: GaParams, rng: np.random.Generator, weights: np.ndarray) -> Population:
    """Uniformly random permutations, one independent shuffle each."""
    if n < 4:
        raise ValueError(f"the solver needs at least 4 cities, got {n}")
    tours = np.empty((params.pop_size, n), dtype=TOUR_DTYPE)
    for r in range(params.pop_size):
        tours[r] = rng.permutation(n)
    return Population(tours=tours, lengths=population_lengths(tours, weights), generation=0)


def select_truncation(pop: Population) -> tuple[np.ndarray, np.ndarray]:
    """Keep the better half, sorted ascending by length, stable on ties."""
    keep = pop.tours.shape[0] // 2
    order = np.argsort(pop.lengths, kind="stable")[:keep]
    return pop.tours[order], pop.lengths[order]


def _pair_indices(k: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    # uniform random pairing without replacement; an odd leftover is
    # mated with the first of the shuffled survivors
    perm = rng.permutation(k)
    pairs = [(int(perm[i]), int(perm[i + 1])) for i in range(0, k - 1, 2)]
    if k % 2:
        pairs.append((int(perm[-1]), int(perm[0])))
    return pairs


def step_generation(
    pop: Population,
    weights: np.ndarray,
    params: GaParams,
    rng: np.random.Generator,
) -> tuple[Population, GenerationStats]:
    """Advance one generation and report its statistics.

    Order of events: truncation selection, random mating of survivors,
    crossover, paired-swap mutation of the offspring only, then the
    window pass and the segment reversal over survivors and offspring
    alike, finally length evaluation. The returned population has the
    same size as the input.
    """
    pop_size, n = pop.tours.shape
    survivors, _ = select_truncation(pop)
    k = survivors.shape[0]
    wanted = pop_size - k

    offspring: list[np.ndarray] = []
    for i, j in _pair_indices(k, rng):
        if params.crossover == "cx":
            o1, o2 = operators.cx(survivors[i], survivors[j])
        else:
            cuts = operators.draw_cuts(n, rng)
            xop = operators.pmx if params.crossover == "pmx" else operators.ox
            o1, o2 = xop(survivors[i], survivors[j], cuts)
        offspring.append(o1)
        offspring.append(o2)
    offspring = offspring[:wanted]

    tours = np.empty((pop_size, n), dtype=TOUR_DTYPE)
    tours[:k] = survivors
    for idx, child in enumerate(offspring):
        tours[k + idx] = operators.pairwise_swap_mutation(child, params.p_m, rng)

    if params.l1_enabled:
        for r in range(pop_size):
            tours[r], _ = local_search.l1_pass(tours[r], weights)
    if params.l2_enabled:
        for r in range(pop_size):
            tours[r], _ = local_search.l2_reversal(tours[r], weights, params.p_m2, rng)

    lengths = population_lengths(tours, weights)
    nxt = Population(tours=tours, lengths=lengths, generation=pop.generation + 1)
    best = int(np.argmin(lengths))
    stats = GenerationStats(
        generation=nxt.generation,
        best_length=lengths[best],
        mean_length=float(lengths.mean()),
        best_tour=tours[best].copy(),
    )
    return nxt, stats


def run(instance, params: GaParams) -> RunResult:
    """Full seeded run: init, then a fixed number of generations.

    Stops early only when ``params.target_length`` is set and reached.
    Identical instance, parameters and seed give an identical result
    apart from the wall time.
    """
    params.validate()
    weights = instance.weights
    started = time.perf_counter()
    rng = np.random.default_rng(params.seed)
    pop = init_population(instance.n, params, rng, weights)

    series: list[GenerationStats] = []
    incumbent = None
    for _ in range(params.generations):
        pop, stats = step_generation(pop, weights, params, rng)
        if incumbent is not None and stats.best_length > incumbent:
            raise AssertionError(
                f"best length worsened from {incumbent} to {stats.best_length} "
                f"at generation {stats.generation}"
            )
        incumbent = stats.best_length
        series.append(stats)
        if params.target_length is not None and stats.best_length <= params.target_length:
            break

    final = series[-1]
    return RunResult(
        stats_series=series,
        final_best=final.best_tour,
        final_best_length=final.best_length,
        wall_time=time.perf_counter() - started,
    )


def check_population(pop: Population, weights: np.ndarray) -> None:
    """Debug helper: every tour valid, every cached length consistent."""
    n = pop.tours.shape[1]
    for r in range(pop.tours.shape[0]):
        problem = validate_tour(pop.tours[r], n)
        if problem is not None:
            raise AssertionError(f"individual {r}: {problem}")
    fresh = population_lengths(pop.tours, weights)
    if not np.array_equal(fresh, pop.lengths):
        raise AssertionError("cached lengths diverge from recomputation")
