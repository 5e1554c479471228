from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .._validation import check_positive_int, check_probability
from ..exceptions import InvalidParameterError
from ..model import Evaluation


@dataclass(frozen=True)
class EAConfig:
    """Evolutionary-algorithm hyper-parameters.

    ``time_budget`` is wall-clock seconds; ``None`` disables it. A binding time
    budget makes a run depend on machine speed, so reproducible runs should be
    bounded by ``max_generations``.
    """

    population_size: int = 40
    max_generations: int = 200
    time_budget: float | None = 2400.0
    mutation_prob: float = 0.05
    crossover_frac: float = 0.5
    survival_frac: float = 0.5
    rng_seed: int = 0

    def __post_init__(self):
        check_positive_int(self.population_size, "population_size", minimum=2)
        check_positive_int(self.max_generations, "max_generations", minimum=0)
        check_probability(self.mutation_prob, "mutation_prob")
        check_probability(self.crossover_frac, "crossover_frac", open_interval=True)
        check_probability(self.survival_frac, "survival_frac", open_interval=True)
        if self.time_budget is not None and not self.time_budget > 0:
            raise InvalidParameterError(f"time_budget must be positive or None, got {self.time_budget}")

    @property
    def n_survivors(self) -> int:
        return max(1, min(self.population_size - 1,
                          math.ceil(self.survival_frac * self.population_size)))


@dataclass(frozen=True)
class SeedMix:
    """Share of the initial population coming from each source."""

    frac_random: float = 0.2
    frac_kmeans: float = 0.2
    frac_kmeans_mutated: float = 0.2
    frac_ra: float = 0.2
    frac_ra_mutated: float = 0.2

    def __post_init__(self):
        fr = self.as_tuple()
        if any(f < 0 for f in fr):
            raise InvalidParameterError(f"seed-mix fractions must be non-negative, got {fr}")
        if abs(sum(fr) - 1.0) > 1e-9:
            raise InvalidParameterError(f"seed-mix fractions must sum to 1, got {sum(fr)}")

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.frac_random, self.frac_kmeans, self.frac_kmeans_mutated,
                self.frac_ra, self.frac_ra_mutated)

    def counts(self, n: int) -> list[int]:
        """Split ``n`` individuals by largest remainder; ties go to the earlier source."""
        raw = [f * n for f in self.as_tuple()]
        base = [int(math.floor(r)) for r in raw]
        rest = n - sum(base)
        order = sorted(range(5), key=lambda i: (-(raw[i] - base[i]), i))
        for i in order[:rest]:
            base[i] += 1
        return base

    @classmethod
    def parse(cls, text: str) -> "SeedMix":
        parts = [float(p) for p in text.split(",")]
        if len(parts) != 5:
            raise InvalidParameterError(f"seed mix needs five comma-separated fractions, got {text!r}")
        return cls(*parts)


@dataclass
class SolveResult:
    best_solution: np.ndarray
    best_evaluation: Evaluation
    history: list[float]
    wall_time: float
    evaluations: int
    circles: np.ndarray | None = None
    generations: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def fitness(self) -> float:
        return self.best_evaluation.fitness
