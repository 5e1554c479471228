"""Generational evolutionary search over both encodings, plus the seeded ensemble."""

from __future__ import annotations

import time
from typing import Callable, Sequence

import numpy as np

from .._validation import check_instance
from ..clustering import _spectral_embedding, get_clusterer
from ..model import Instance
from ..objective import Evaluator, decode_circles, get_evaluator
from .config import EAConfig, SeedMix, SolveResult
from .operators import (
    crossover_circle_external,
    crossover_circle_internal,
    crossover_integer,
    mutate_circle_hard,
    mutate_circle_smooth,
    mutate_integer,
    random_mask,
    sample_circle,
)
from .recursive import solve_ra_ie


def evolve(
    population: Sequence,
    fitness: Callable[[object], float],
    make_child: Callable[[object, object, np.random.Generator], object],
    config: EAConfig,
    rng: np.random.Generator,
    t0: float,
):
    """Truncation selection, size-2 tournaments among survivors, full refill.

    Survivors are carried over unchanged, so the best fitness in the population
    never increases. Returns ``(best, best_fitness, history, generations, evaluations)``
    where ``history[0]`` is the initial population's best.
    """
    pop = list(population)
    n = len(pop)
    fit = np.array([fitness(x) for x in pop])
    evals = n
    n_surv = config.n_survivors
    history = [float(fit.min())]
    deadline = None if config.time_budget is None else t0 + config.time_budget
    gen = 0
    while gen < config.max_generations:
        if deadline is not None and time.perf_counter() >= deadline:
            break
        order = np.argsort(fit, kind="stable")[:n_surv]
        survivors = [pop[i] for i in order]
        surv_fit = fit[order]
        children = []
        for _ in range(n - n_surv):
            # survivors are sorted, so the lower index wins a tournament
            a = int(rng.integers(n_surv, size=2).min())
            b = int(rng.integers(n_surv, size=2).min())
            children.append(make_child(survivors[a], survivors[b], rng))
        child_fit = np.array([fitness(c) for c in children])
        evals += len(children)
        pop = survivors + children
        fit = np.concatenate([surv_fit, child_fit])
        gen += 1
        history.append(float(fit.min()))
    best = int(np.argmin(fit))
    return pop[best], float(fit[best]), history, gen, evals


def _integer_child(n_workers, config):
    def make(p1, p2, rng):
        child = crossover_integer(p1, p2, random_mask(rng, p1.shape[0], config.crossover_frac))
        return mutate_integer(child, rng, n_workers, config.mutation_prob)
    return make


def _finish(ev: Evaluator, best, history, gens, evals, t0, circles=None, extra=None):
    evaluation = ev.evaluate(best)
    return SolveResult(
        best_solution=evaluation.assignment,
        best_evaluation=evaluation,
        history=history,
        wall_time=time.perf_counter() - t0,
        evaluations=evals,
        circles=circles,
        generations=gens,
        extra=extra or {},
    )


def _random_assignment(rng, instance):
    return rng.integers(instance.n_workers, size=instance.n_points).astype(np.int64)


def solve_ea_ie(instance: Instance, config: EAConfig = EAConfig(),
                evaluator: Evaluator | None = None) -> SolveResult:
    """Integer-encoded EA; half the initial population random, half k-means labels."""
    t0 = time.perf_counter()
    check_instance(instance)
    ev = evaluator or get_evaluator(instance)
    n = config.population_size
    n_random = n // 2
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(config.rng_seed).spawn(n + 1)]
    kmeans = get_clusterer("kmeans")
    pop = [_random_assignment(streams[i], instance) for i in range(n_random)]
    pop += [kmeans(instance.xy, instance.n_workers, streams[i]).labels.astype(np.int64)
            for i in range(n_random, n)]
    best, _, history, gens, evals = evolve(
        pop, ev.fitness, _integer_child(instance.n_workers, config), config, streams[n], t0)
    return _finish(ev, best, history, gens, evals, t0)


def solve_ea_ce(instance: Instance, config: EAConfig = EAConfig(), smooth_prob: float = 0.3,
                hard_prob: float | None = None, sigma: float | None = None,
                evaluator: Evaluator | None = None) -> SolveResult:
    """Circle-encoded EA.

    Offspring come from external or internal crossover with equal chance, then
    smooth mutation per gene (``smooth_prob``, noise ``sigma``, default 1 % of
    the bounding-box diagonal) and hard mutation per individual (``hard_prob``,
    default ``config.mutation_prob``).
    """
    t0 = time.perf_counter()
    check_instance(instance)
    ev = evaluator or get_evaluator(instance)
    bounds = instance.bounds
    r_max = 0.5 * instance.diagonal
    sigma = 0.01 * instance.diagonal if sigma is None else float(sigma)
    hard_prob = config.mutation_prob if hard_prob is None else float(hard_prob)
    n = config.population_size
    streams = [np.random.default_rng(s) for s in np.random.SeedSequence(config.rng_seed).spawn(n + 1)]
    pop = [np.array([sample_circle(streams[i], bounds, r_max) for _ in range(instance.n_workers)])
           for i in range(n)]

    def fitness(circles):
        return ev.fitness(decode_circles(instance, circles).assignment)

    def make(p1, p2, rng):
        if rng.random() < 0.5:
            child = crossover_circle_external(p1, p2, random_mask(rng, p1.shape[0], config.crossover_frac))
        else:
            child = crossover_circle_internal(p1, p2, random_mask(rng, p1.shape, config.crossover_frac))
        child = mutate_circle_smooth(child, rng, sigma, smooth_prob)
        return mutate_circle_hard(child, rng, bounds, hard_prob, r_max)

    best, _, history, gens, evals = evolve(pop, fitness, make, config, streams[n], t0)
    decoded = decode_circles(instance, best)
    return _finish(ev, decoded.assignment, history, gens, evals, t0, circles=best,
                   extra={"uncovered": decoded.uncovered})


def seed_population(instance: Instance, n: int, mix: SeedMix, initializer: str,
                    seed, evaluator: Evaluator) -> tuple[list[np.ndarray], list[str]]:
    """Initial population from the five sources, with one RNG stream per individual."""
    counts = mix.counts(n)
    if not isinstance(seed, np.random.SeedSequence):
        seed = np.random.SeedSequence(seed)
    streams = [np.random.default_rng(s) for s in seed.spawn(n)]
    cluster = get_clusterer(initializer)
    embedding = (_spectral_embedding(instance.xy, instance.n_workers, None)
                 if initializer == "spectral" else None)

    def clustered(rng):
        if embedding is not None:
            res = cluster(instance.xy, instance.n_workers, rng, embedding=embedding)
        else:
            res = cluster(instance.xy, instance.n_workers, rng)
        return res.labels.astype(np.int64)

    def recursive(rng):
        return solve_ra_ie(instance, rng, initializer, evaluator, embedding).best_solution.copy()

    makers = [
        ("random", lambda rng: _random_assignment(rng, instance)),
        ("kmeans", clustered),
        ("kmeans_mutated", lambda rng: mutate_integer(clustered(rng), rng, instance.n_workers, force=True)),
        ("ra", recursive),
        ("ra_mutated", lambda rng: mutate_integer(recursive(rng), rng, instance.n_workers, force=True)),
    ]
    pop, origin = [], []
    k = 0
    for (label, make), count in zip(makers, counts):
        for _ in range(count):
            pop.append(make(streams[k]))
            origin.append(label)
            k += 1
    return pop, origin


def solve_ra_ea_ie(instance: Instance, config: EAConfig = EAConfig(), mix: SeedMix = SeedMix(),
                   initializer: str = "kmeans", evaluator: Evaluator | None = None) -> SolveResult:
    """EA over integer encoding seeded with random, clustering and recursive-greedy individuals.

    ``initializer`` selects the clustering used both for the clustering-derived
    individuals and inside the greedy recursive runs.
    """
    t0 = time.perf_counter()
    check_instance(instance)
    get_clusterer(initializer)
    ev = evaluator or get_evaluator(instance)
    init_seed, loop_seed = np.random.SeedSequence(config.rng_seed).spawn(2)
    pop, origin = seed_population(instance, config.population_size, mix, initializer, init_seed, ev)
    best, _, history, gens, evals = evolve(
        pop, ev.fitness, _integer_child(instance.n_workers, config), config,
        np.random.default_rng(loop_seed), t0)
    return _finish(ev, best, history, gens, evals, t0, extra={"origins": origin})
