"""scikit-learn style front-ends for the solvers.

Every balancer takes an :class:`~lastmile_balance.model.Instance` in ``fit`` and
exposes the usual fitted attributes::

    >>> est = RAEAIE(max_generations=50, random_state=3).fit(instance)
    >>> est.labels_            # worker index per delivery point
    >>> est.fitness_           # max - min worker total time, seconds

``get_params``/``set_params``/``clone`` work as for any sklearn estimator.
"""

from __future__ import annotations

import time

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .._validation import check_instance
from ..clustering import get_clusterer
from ..exceptions import ConfigurationError
from ..objective import get_evaluator
from .config import EAConfig, SeedMix, SolveResult
from .evolutionary import solve_ea_ce, solve_ea_ie, solve_ra_ea_ie
from .recursive import solve_ra_ce, solve_ra_ie


class BaseBalancer(ClusterMixin, BaseEstimator):
    """Shared ``fit``/``predict`` plumbing; subclasses implement ``_solve``."""

    def _solve(self, instance) -> SolveResult:
        raise NotImplementedError

    def fit(self, X, y=None):
        instance = check_instance(X)
        res = self._solve(instance)
        self.result_ = res
        self.labels_ = np.asarray(res.best_solution)
        self.evaluation_ = res.best_evaluation
        self.fitness_ = res.best_evaluation.fitness
        self.total_time_ = res.best_evaluation.total_time
        self.breakdown_ = np.array([b.as_tuple() for b in res.best_evaluation.per_worker])
        self.history_ = np.asarray(res.history, dtype=float)
        self.n_evaluations_ = res.evaluations
        self.wall_time_ = res.wall_time
        self.circles_ = res.circles
        self.instance_xy_ = instance.xy
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).labels_

    def predict(self, X):
        """Worker responsible for each query location (that of the nearest assigned point)."""
        check_is_fitted(self, "labels_")
        X = check_array(X, dtype=np.float64)
        diff = X[:, None, :] - self.instance_xy_[None, :, :]
        nearest = np.argmin(np.einsum("ijk,ijk->ij", diff, diff), axis=1)
        return self.labels_[nearest]

    def score(self, X, y=None):
        """Negated balance fitness of the fitted assignment on ``X`` (higher is better)."""
        check_is_fitted(self, "labels_")
        return -get_evaluator(check_instance(X)).evaluate(self.labels_).fitness


class _EAParams:
    def _config(self) -> EAConfig:
        return EAConfig(
            population_size=self.population_size,
            max_generations=self.max_generations,
            time_budget=self.time_budget,
            mutation_prob=self.mutation_prob,
            crossover_frac=self.crossover_frac,
            survival_frac=self.survival_frac,
            rng_seed=0 if self.random_state is None else self.random_state,
        )


class EAIE(_EAParams, BaseBalancer):
    def __init__(self, population_size=40, max_generations=200, time_budget=2400.0,
                 mutation_prob=0.05, crossover_frac=0.5, survival_frac=0.5, random_state=0):
        self.population_size = population_size
        self.max_generations = max_generations
        self.time_budget = time_budget
        self.mutation_prob = mutation_prob
        self.crossover_frac = crossover_frac
        self.survival_frac = survival_frac
        self.random_state = random_state

    def _solve(self, instance):
        return solve_ea_ie(instance, self._config())


class EACE(_EAParams, BaseBalancer):
    def __init__(self, population_size=40, max_generations=200, time_budget=2400.0,
                 mutation_prob=0.05, crossover_frac=0.5, survival_frac=0.5,
                 smooth_prob=0.3, hard_prob=None, sigma=None, random_state=0):
        self.population_size = population_size
        self.max_generations = max_generations
        self.time_budget = time_budget
        self.mutation_prob = mutation_prob
        self.crossover_frac = crossover_frac
        self.survival_frac = survival_frac
        self.smooth_prob = smooth_prob
        self.hard_prob = hard_prob
        self.sigma = sigma
        self.random_state = random_state

    def _solve(self, instance):
        return solve_ea_ce(instance, self._config(), self.smooth_prob, self.hard_prob, self.sigma)


class RAEAIE(_EAParams, BaseBalancer):
    def __init__(self, population_size=40, max_generations=200, time_budget=2400.0,
                 mutation_prob=0.05, crossover_frac=0.5, survival_frac=0.5,
                 mix=(0.2, 0.2, 0.2, 0.2, 0.2), initializer="kmeans", random_state=0):
        self.population_size = population_size
        self.max_generations = max_generations
        self.time_budget = time_budget
        self.mutation_prob = mutation_prob
        self.crossover_frac = crossover_frac
        self.survival_frac = survival_frac
        self.mix = mix
        self.initializer = initializer
        self.random_state = random_state

    def _solve(self, instance):
        mix = self.mix if isinstance(self.mix, SeedMix) else SeedMix(*self.mix)
        return solve_ra_ea_ie(instance, self._config(), mix, self.initializer)


class RAIE(BaseBalancer):
    def __init__(self, initializer="kmeans", random_state=0):
        self.initializer = initializer
        self.random_state = random_state

    def _solve(self, instance):
        return solve_ra_ie(instance, self.random_state, self.initializer)


class RACE(BaseBalancer):
    def __init__(self, max_rounds=10_000, initializer="kmeans", random_state=0):
        self.max_rounds = max_rounds
        self.initializer = initializer
        self.random_state = random_state

    def _solve(self, instance):
        return solve_ra_ce(instance, self.random_state, self.max_rounds, self.initializer)


class ClusteringBalancer(BaseBalancer):
    """Baseline: raw cluster labels used directly as the worker assignment."""

    def __init__(self, method="kmeans", random_state=0):
        self.method = method
        self.random_state = random_state

    def _solve(self, instance):
        t0 = time.perf_counter()
        res = get_clusterer(self.method)(instance.xy, instance.n_workers, self.random_state)
        evaluation = get_evaluator(instance).evaluate(res.labels)
        return SolveResult(evaluation.assignment, evaluation, [evaluation.fitness],
                           time.perf_counter() - t0, 1, extra={"centroids": res.centroids})


ALGORITHMS = {
    "ea-ie": EAIE,
    "ea-ce": EACE,
    "ra-ie": RAIE,
    "ra-ce": RACE,
    "ra-ea-ie": RAEAIE,
    "kmeans": ClusteringBalancer,
}


def make_solver(label: str, random_state=0, **params) -> BaseBalancer:
    """Instantiate the estimator registered under ``label``.

    ``"ra-ea-ie-sc"`` is shorthand for RA-EA-IE with spectral initialisation and
    ``"spectral"`` for the spectral clustering baseline. Parameters the
    estimator does not accept are ignored so one shared parameter dict can
    drive every algorithm of a benchmark.
    """
    if label == "ra-ea-ie-sc":
        label, params = "ra-ea-ie", {**params, "initializer": "spectral"}
    elif label == "spectral":
        label, params = "kmeans", {**params, "method": "spectral"}
    try:
        cls = ALGORITHMS[label]
    except KeyError:
        raise ConfigurationError(
            f"unknown algorithm {label!r}; choose from {sorted(ALGORITHMS) + ['ra-ea-ie-sc', 'spectral']}"
        ) from None
    est = cls()
    accepted = est.get_params()
    est.set_params(random_state=random_state,
                   **{k: v for k, v in params.items() if k in accepted and k != "random_state"})
    return est


ALGORITHM_LABELS = tuple(ALGORITHMS) + ("ra-ea-ie-sc", "spectral")
