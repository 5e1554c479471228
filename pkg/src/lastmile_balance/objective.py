"""Working-time model and the balance fitness, for both solution encodings."""

from __future__ import annotations

import weakref
from dataclasses import dataclass

import numpy as np

from ._validation import check_assignment, check_circles, check_instance
from .model import Evaluation, Instance, TimeBreakdown
from .routing import exact_route, route_legs


@dataclass(frozen=True)
class DecodedAssignment:
    assignment: np.ndarray
    uncovered: tuple[int, ...]


def cover_labels(xy: np.ndarray, circles: np.ndarray) -> np.ndarray:
    """Worker owning each point under the closed-disk, last-covering-worker rule.

    Points inside no circle get ``-1``.
    """
    diff = xy[:, None, :] - circles[None, :, :2]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    inside = dist <= circles[None, :, 2]
    n_workers = circles.shape[0]
    last = n_workers - 1 - np.argmax(inside[:, ::-1], axis=1)
    return np.where(inside.any(axis=1), last, -1)


def decode_circles(instance: Instance, circles) -> DecodedAssignment:
    """Turn circle zones into a total assignment.

    Workers are swept in index order and a covered point ends up with the
    highest-indexed circle containing it. Uncovered points go to the worker
    with the nearest circle centre (lowest index on ties).
    """
    check_instance(instance)
    circles = check_circles(circles, instance.n_workers)
    labels = cover_labels(instance.xy, circles)
    uncovered = np.flatnonzero(labels < 0)
    if uncovered.size:
        diff = instance.xy[uncovered, None, :] - circles[None, :, :2]
        labels[uncovered] = np.argmin(np.hypot(diff[..., 0], diff[..., 1]), axis=1)
    labels.flags.writeable = False
    return DecodedAssignment(labels.astype(np.int64), tuple(int(i) for i in uncovered))


class Evaluator:
    """Per-instance evaluator with a route cache keyed by the sorted point-id set.

    ``exact=True`` swaps the heuristic router for full permutation enumeration,
    which is only feasible for a handful of points per worker.
    """

    def __init__(self, instance: Instance, exact: bool = False, max_cache: int = 500_000):
        self.instance = check_instance(instance)
        self.exact = exact
        self.max_cache = max_cache
        self.n_evaluations = 0
        self._coords = np.vstack([np.asarray(instance.depot).reshape(1, 2), instance.xy])
        self._cache: dict[bytes, tuple[float, float, float]] = {}

    def legs(self, ids: np.ndarray) -> tuple[float, float, float]:
        """Route distances (outbound, inter-point, return) for a sorted id array."""
        key = ids.tobytes()
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if self.exact:
            r = exact_route(self.instance.depot, self.instance.xy[ids])
            hit = (r.d_ow, r.d_tra, r.d_ret)
        else:
            hit = route_legs(self._coords[np.concatenate(([0], ids + 1))])
        if len(self._cache) >= self.max_cache:
            self._cache.clear()
        self._cache[key] = hit
        return hit

    def components(self, assignment: np.ndarray) -> np.ndarray:
        """``(N_W, 5)`` array of (ow, int, tra, ext, ret) seconds; no validation."""
        inst = self.instance
        n_w = inst.n_workers
        self.n_evaluations += 1
        out = np.zeros((n_w, 5))
        counts = np.bincount(assignment, minlength=n_w)
        out[:, 1] = np.bincount(assignment, weights=inst.t_in, minlength=n_w)
        out[:, 3] = np.bincount(assignment, weights=inst.t_ex, minlength=n_w)
        order = np.argsort(assignment, kind="stable")
        start = 0
        for w in range(n_w):
            c = counts[w]
            if c == 0:
                continue
            d_ow, d_tra, d_ret = self.legs(order[start:start + c])
            start += c
            out[w, 0] = d_ow / inst.speed
            out[w, 2] = d_tra / inst.speed
            out[w, 4] = d_ret / inst.speed
        return out

    def totals(self, assignment: np.ndarray) -> np.ndarray:
        c = self.components(assignment)
        # same left-to-right order as TimeBreakdown.total
        return c[:, 0] + c[:, 1] + c[:, 2] + c[:, 3] + c[:, 4]

    def fitness(self, assignment: np.ndarray) -> float:
        t = self.totals(assignment)
        return float(t.max() - t.min())

    def worker_total(self, ids: np.ndarray) -> float:
        """Total time of one worker serving the sorted point ids ``ids``."""
        if ids.size == 0:
            return 0.0
        inst = self.instance
        d_ow, d_tra, d_ret = self.legs(ids)
        return (d_ow / inst.speed + float(inst.t_in[ids].sum()) + d_tra / inst.speed
                + float(inst.t_ex[ids].sum()) + d_ret / inst.speed)

    def evaluate(self, assignment) -> Evaluation:
        assignment = check_assignment(assignment, self.instance)
        comps = self.components(assignment)
        per_worker = tuple(TimeBreakdown(*map(float, row)) for row in comps)
        frozen = assignment.copy()
        frozen.flags.writeable = False
        return Evaluation.from_breakdowns(per_worker, frozen)

    def evaluate_circles(self, circles) -> Evaluation:
        return self.evaluate(decode_circles(self.instance, circles).assignment)


_shared: "weakref.WeakKeyDictionary[Instance, Evaluator]" = weakref.WeakKeyDictionary()


def get_evaluator(instance: Instance) -> Evaluator:
    """Heuristic evaluator shared by every caller holding the same instance object."""
    ev = _shared.get(instance)
    if ev is None:
        ev = _shared[instance] = Evaluator(instance)
    return ev


def evaluate(instance: Instance, assignment, rng_seed: int = 0) -> Evaluation:
    """Per-worker breakdowns, balance fitness and total time of an assignment.

    Routing is deterministic, so ``rng_seed`` has no effect; it is kept so
    callers can thread a seed uniformly through every entry point.
    """
    return get_evaluator(check_instance(instance)).evaluate(assignment)


def evaluate_circles(instance: Instance, circles, rng_seed: int = 0) -> Evaluation:
    return evaluate(instance, decode_circles(instance, circles).assignment, rng_seed)
