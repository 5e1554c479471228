"""Greedy recursive heuristics seeded by clustering.

``solve_ra_ie`` grows each worker's route one nearest point at a time, feeding
only workers whose time is below the current average. ``solve_ra_ce`` places a
circle on each cluster centre and nudges radii by +/-3 % toward the average
working time until every point is covered.
"""

from __future__ import annotations

import bisect
import time

import numpy as np

from .._validation import check_instance, check_positive_int
from ..clustering import ClusterResult, get_clusterer
from ..model import Instance
from ..objective import Evaluator, cover_labels, decode_circles, get_evaluator
from .config import SolveResult

GROW = 1.03
SHRINK = 0.97


def _cluster(instance: Instance, initializer, seed, embedding=None) -> ClusterResult:
    if isinstance(initializer, ClusterResult):
        return initializer
    fn = get_clusterer(initializer) if isinstance(initializer, str) else initializer
    if embedding is not None:
        return fn(instance.xy, instance.n_workers, seed, embedding=embedding)
    return fn(instance.xy, instance.n_workers, seed)


def ra_ie_assignment(instance: Instance, centroids: np.ndarray, evaluator: Evaluator):
    """Core greedy loop; returns ``(assignment, per-round fitness, per-round assigned count)``."""
    xy = instance.xy
    n_p, n_w = instance.n_points, instance.n_workers
    pos = np.array(centroids, dtype=float, copy=True)
    available = np.ones(n_p, dtype=bool)
    assignment = np.full(n_p, -1, dtype=np.int64)
    members: list[list[int]] = [[] for _ in range(n_w)]
    times = np.zeros(n_w)
    remaining = n_p
    history, progress = [], []
    first = True
    while remaining:
        if first:
            # every time is zero here; a strict "< mean" test would feed nobody
            eligible = np.ones(n_w, dtype=bool)
            first = False
        else:
            eligible = times < times.mean()
            if not eligible.any():
                eligible[int(np.argmin(times))] = True
        assigned = 0
        for i in np.flatnonzero(eligible):
            if not remaining:
                break
            d2 = np.einsum("ij,ij->i", xy - pos[i], xy - pos[i])
            d2[~available] = np.inf
            p = int(np.argmin(d2))
            available[p] = False
            assignment[p] = i
            remaining -= 1
            assigned += 1
            pos[i] = xy[p]
            bisect.insort(members[i], p)
            times[i] = evaluator.worker_total(np.asarray(members[i], dtype=np.int64))
        history.append(float(times.max() - times.min()))
        progress.append(assigned)
    return assignment, history, progress


def solve_ra_ie(instance: Instance, rng_seed=0, initializer="kmeans",
                evaluator: Evaluator | None = None, embedding=None) -> SolveResult:
    """Recursive assignment with integer encoding.

    ``initializer`` is ``"kmeans"``, ``"spectral"``, any registered clustering
    callable, or a precomputed :class:`ClusterResult`.
    """
    t0 = time.perf_counter()
    check_instance(instance)
    ev = evaluator or get_evaluator(instance)
    cl = _cluster(instance, initializer, rng_seed, embedding)
    assignment, history, progress = ra_ie_assignment(instance, cl.centroids, ev)
    evaluation = ev.evaluate(assignment)
    return SolveResult(
        best_solution=evaluation.assignment,
        best_evaluation=evaluation,
        history=history,
        wall_time=time.perf_counter() - t0,
        evaluations=instance.n_points + 1,
        generations=len(history),
        extra={"assigned_per_round": progress, "centroids": cl.centroids},
    )


def solve_ra_ce(instance: Instance, rng_seed=0, max_rounds: int = 10_000,
                initializer="kmeans", evaluator: Evaluator | None = None) -> SolveResult:
    """Recursive radius adjustment with circle encoding.

    Radii start uniform in ``[0.05, 0.25)`` times the bounding-box diagonal.
    Each round compares every worker to the average time of the round start
    and rescales its radius by ``GROW`` or ``SHRINK``, then recomputes that
    worker's time from the current membership (overlaps go to the later
    worker). Rounds stop once every point is covered or after ``max_rounds``;
    leftover points are assigned to the nearest centre.
    """
    t0 = time.perf_counter()
    check_instance(instance)
    check_positive_int(max_rounds, "max_rounds", minimum=0)
    ev = evaluator or get_evaluator(instance)
    k_seed, r_seed = np.random.SeedSequence(rng_seed).spawn(2)
    cl = _cluster(instance, initializer, np.random.default_rng(k_seed))
    n_w = instance.n_workers
    radii = np.random.default_rng(r_seed).uniform(0.05, 0.25, n_w) * instance.diagonal
    circles = np.column_stack([cl.centroids, radii])
    xy = instance.xy

    def member_time(labels, i):
        return ev.worker_total(np.flatnonzero(labels == i))

    labels = cover_labels(xy, circles)
    times = np.array([member_time(labels, i) for i in range(n_w)])
    history = [float(times.max() - times.min())]
    n_evals = n_w
    rounds = 0
    while (labels < 0).any() and rounds < max_rounds:
        rounds += 1
        mean = times.mean()
        for i in range(n_w):
            if times[i] < mean:
                circles[i, 2] *= GROW
            elif times[i] > mean:
                circles[i, 2] *= SHRINK
            else:
                continue
            labels = cover_labels(xy, circles)
            times[i] = member_time(labels, i)
            n_evals += 1
        history.append(float(times.max() - times.min()))

    decoded = decode_circles(instance, circles)
    evaluation = ev.evaluate(decoded.assignment)
    return SolveResult(
        best_solution=evaluation.assignment,
        best_evaluation=evaluation,
        history=history,
        wall_time=time.perf_counter() - t0,
        evaluations=n_evals + 1,
        circles=circles,
        generations=rounds,
        extra={"rounds": rounds, "uncovered": decoded.uncovered,
               "covered": not decoded.uncovered},
    )
