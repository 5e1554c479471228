"""Repeated seeded runs, summary statistics, exhaustive oracle and per-worker reports."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from ._validation import check_instance, check_positive_int
from .exceptions import OracleTooLargeError
from .model import Evaluation, Instance
from .objective import Evaluator
from .solvers.config import EAConfig
from .solvers.estimators import make_solver


class RunRecord(NamedTuple):
    seed: int
    fitness: float
    wall_time: float
    total_time: float = float("nan")


@dataclass(frozen=True)
class RunStats:
    algorithm: str
    n_runs: int
    min_s: float
    max_s: float
    mean_s: float
    std_s: float
    per_run: tuple[RunRecord, ...]

    @classmethod
    def from_runs(cls, algorithm: str, runs: Sequence[RunRecord]) -> "RunStats":
        values = np.array([r.fitness for r in runs], dtype=float)
        lo, hi, mean, std = summarize(values)
        return cls(algorithm, len(runs), lo, hi, mean, std, tuple(runs))


def summarize(values) -> tuple[float, float, float, float]:
    """min, max, mean and population standard deviation."""
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("no values to summarise")
    mean = float(values.mean())
    std = float(np.sqrt(np.mean((values - mean) ** 2)))
    return float(values.min()), float(values.max()), mean, std


def _params(config) -> dict:
    if config is None:
        return {}
    if isinstance(config, EAConfig):
        return {
            "population_size": config.population_size,
            "max_generations": config.max_generations,
            "time_budget": config.time_budget,
            "mutation_prob": config.mutation_prob,
            "crossover_frac": config.crossover_frac,
            "survival_frac": config.survival_frac,
        }
    return dict(config)


def run_experiment(instance: Instance, algorithms: Iterable[str], n_runs: int = 30,
                   base_seed: int = 0, config=None, progress=None) -> list[RunStats]:
    """Run every algorithm ``n_runs`` times with seeds ``base_seed .. base_seed + n_runs - 1``.

    ``config`` is an :class:`EAConfig` or a dict of estimator parameters;
    keys an algorithm does not use are ignored. ``progress`` is an optional
    callback ``(algorithm, seed, fitness)``.
    """
    check_instance(instance)
    n_runs = check_positive_int(n_runs, "n_runs")
    params = _params(config)
    algorithms = list(algorithms)
    for label in algorithms:
        make_solver(label, 0, **params)  # fail fast on unknown labels
    out = []
    for label in algorithms:
        runs = []
        for seed in range(base_seed, base_seed + n_runs):
            est = make_solver(label, seed, **params).fit(instance)
            runs.append(RunRecord(seed, est.fitness_, est.wall_time_, est.total_time_))
            if progress is not None:
                progress(label, seed, est.fitness_)
        out.append(RunStats.from_runs(label, runs))
    return out


def format_stats_table(stats: Sequence[RunStats]) -> str:
    width = max([len("Algorithm")] + [len(s.algorithm) for s in stats])
    lines = [f"{'Algorithm':<{width}}  {'Min.(s)':>10}  {'Max.(s)':>10}  {'Mean(s)':>10}  {'Std.(s)':>10}"]
    for s in stats:
        lines.append(f"{s.algorithm:<{width}}  {s.min_s:>10.2f}  {s.max_s:>10.2f}  "
                     f"{s.mean_s:>10.2f}  {s.std_s:>10.2f}")
    return "\n".join(lines)


def brute_force_optimum(instance: Instance, max_assignments: int = 10 ** 6,
                        max_points_per_worker: int = 8) -> tuple[np.ndarray, Evaluation]:
    """Global optimum by enumerating every assignment, routing each worker exactly.

    Ties go to the lexicographically smallest assignment.
    """
    check_instance(instance)
    n_p, n_w = instance.n_points, instance.n_workers
    n_assign = n_w ** n_p
    if n_assign > max_assignments or n_p > max_points_per_worker:
        raise OracleTooLargeError(
            f"exhaustive search needs N_W^N_p <= {max_assignments} and at most "
            f"{max_points_per_worker} points (a worker may receive all of them); "
            f"got N_W={n_w}, N_p={n_p}, N_W^N_p={n_assign}"
        )
    ev = Evaluator(instance, exact=True)
    # working time of every subset of points, indexed by bitmask
    subset_time = np.zeros(1 << n_p)
    for mask in range(1, 1 << n_p):
        ids = np.array([i for i in range(n_p) if mask >> i & 1], dtype=np.int64)
        subset_time[mask] = ev.worker_total(ids)
    assignments = np.array(list(itertools.product(range(n_w), repeat=n_p)), dtype=np.int64)
    bits = (1 << np.arange(n_p)).astype(np.int64)
    masks = np.stack([((assignments == w) * bits).sum(axis=1) for w in range(n_w)], axis=1)
    totals = subset_time[masks]
    fitness = totals.max(axis=1) - totals.min(axis=1)
    best = assignments[int(np.argmin(fitness))]
    return best, ev.evaluate(best)


class BreakdownRow(NamedTuple):
    worker: int  # 1-based, as shown in reports
    t_ow: float
    t_int: float
    t_tra: float
    t_ext: float
    t_ret: float
    total: float


BREAKDOWN_COLUMNS = ("worker", "t_ow_s", "t_int_s", "t_tra_s", "t_ext_s", "t_ret_s", "total_s")


def breakdown_report(evaluation: Evaluation) -> list[BreakdownRow]:
    return [BreakdownRow(j + 1, *b.as_tuple()) for j, b in enumerate(evaluation.per_worker)]


def format_breakdown(rows: Sequence[BreakdownRow]) -> str:
    head = f"{'Worker':>8}" + "".join(f"{c:>11}" for c in ("t_OW", "t_Int", "t_Tra", "t_Ext", "t_Ret", "Total"))
    body = [f"{'Worker ' + str(r.worker):>8}" + "".join(f"{v:>11.2f}" for v in r[1:]) for r in rows]
    return "\n".join([head] + body)

