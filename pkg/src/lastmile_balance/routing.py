"""Single-worker route construction: nearest neighbour from the depot, then 2-opt.

Node 0 of every tour is the depot; the remaining nodes are the worker's points in
ascending id order, so index ties resolve to the lowest point id.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .exceptions import InvalidInputError

# 2-opt accepts a move only if it shortens the tour by more than this fraction of
# the starting length; keeps decisions identical under uniform rescaling.
_REL_EPS = 1e-12


@dataclass(frozen=True)
class Route:
    order: tuple[int, ...]
    d_ow: float
    d_tra: float
    d_ret: float

    @property
    def length(self) -> float:
        return self.d_ow + self.d_tra + self.d_ret


@njit(cache=True)
def _distance_matrix(coords):
    n = coords.shape[0]
    dist = np.empty((n, n))
    for i in range(n):
        dist[i, i] = 0.0
        for j in range(i + 1, n):
            dx = coords[i, 0] - coords[j, 0]
            dy = coords[i, 1] - coords[j, 1]
            d = math.sqrt(dx * dx + dy * dy)
            dist[i, j] = d
            dist[j, i] = d
    return dist


@njit(cache=True)
def _nn_tour(dist):
    n = dist.shape[0]
    tour = np.empty(n, dtype=np.int64)
    visited = np.zeros(n, dtype=np.bool_)
    tour[0] = 0
    visited[0] = True
    cur = 0
    for k in range(1, n):
        best = -1
        best_d = np.inf
        for j in range(1, n):
            if not visited[j] and dist[cur, j] < best_d:
                best_d = dist[cur, j]
                best = j
        tour[k] = best
        visited[best] = True
        cur = best
    return tour


@njit(cache=True)
def _tour_length(dist, tour):
    n = tour.shape[0]
    total = 0.0
    for k in range(n):
        total += dist[tour[k], tour[(k + 1) % n]]
    return total


@njit(cache=True)
def _two_opt(dist, tour, rel_eps):
    # first improvement, rescanning from the start after every accepted move
    n = tour.shape[0]
    eps = rel_eps * _tour_length(dist, tour)
    improved = True
    while improved:
        improved = False
        for i in range(1, n - 1):
            a = tour[i - 1]
            b = tour[i]
            for j in range(i + 1, n):
                c = tour[j]
                d = tour[(j + 1) % n]
                delta = dist[a, c] + dist[b, d] - dist[a, b] - dist[c, d]
                if delta < -eps:
                    lo = i
                    hi = j
                    while lo < hi:
                        tmp = tour[lo]
                        tour[lo] = tour[hi]
                        tour[hi] = tmp
                        lo += 1
                        hi -= 1
                    improved = True
                    break
            if improved:
                break
    return tour


@njit(cache=True)
def _solve_closed_tour(coords):
    dist = _distance_matrix(coords)
    tour = _nn_tour(dist)
    if tour.shape[0] >= 4:
        tour = _two_opt(dist, tour, _REL_EPS)
    n = tour.shape[0]
    d_ow = dist[0, tour[1]]
    d_ret = dist[tour[n - 1], 0]
    d_tra = 0.0
    for k in range(1, n - 1):
        d_tra += dist[tour[k], tour[k + 1]]
    return tour, d_ow, d_tra, d_ret


def _stack(depot, points) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    return np.vstack([np.asarray(depot, dtype=float).reshape(1, 2), pts])


def solve_route(depot, points, rng_seed: int = 0, ids=None) -> Route:
    """Closed depot tour over ``points``, split into outbound, inter-point and return legs.

    ``ids`` labels the points in the returned order (defaults to ``0..n-1``).
    The heuristic is deterministic; ``rng_seed`` is accepted for interface
    stability and does not influence the result.
    """
    coords = _stack(depot, points)
    n = coords.shape[0] - 1
    if n < 1:
        raise InvalidInputError("solve_route needs at least one point")
    ids = np.arange(n) if ids is None else np.asarray(ids)
    if len(ids) != n:
        raise InvalidInputError("ids must match points")
    tour, d_ow, d_tra, d_ret = _solve_closed_tour(coords)
    order = tuple(int(ids[k - 1]) for k in tour[1:])
    return Route(order, float(d_ow), float(d_tra), float(d_ret))


def route_legs(coords: np.ndarray) -> tuple[float, float, float]:
    """Fast path for evaluators: ``coords`` already has the depot in row 0."""
    _, d_ow, d_tra, d_ret = _solve_closed_tour(coords)
    return d_ow, d_tra, d_ret


def nearest_neighbor_tour(coords) -> np.ndarray:
    """Greedy tour starting (and ending) at node 0."""
    coords = np.asarray(coords, dtype=float)
    return _nn_tour(_distance_matrix(coords))


def two_opt_improve(coords, tour) -> np.ndarray:
    """Apply 2-opt to a closed tour until no improving move remains.

    ``tour[0]`` stays fixed. The returned array is a new object.
    """
    coords = np.asarray(coords, dtype=float)
    tour = np.array(tour, dtype=np.int64)
    if sorted(tour.tolist()) != list(range(coords.shape[0])):
        raise InvalidInputError("tour must be a permutation of the node indices")
    if tour.shape[0] < 4:
        return tour
    return _two_opt(_distance_matrix(coords), tour, _REL_EPS)


def tour_length(coords, tour) -> float:
    coords = np.asarray(coords, dtype=float)
    return float(_tour_length(_distance_matrix(coords), np.asarray(tour, dtype=np.int64)))


def exact_route(depot, points, ids=None) -> Route:
    """Optimal route by enumerating every visiting order (test oracle, n <= 9)."""
    pts = [tuple(map(float, p)) for p in np.asarray(points, dtype=float).reshape(-1, 2)]
    n = len(pts)
    if n < 1:
        raise InvalidInputError("exact_route needs at least one point")
    if n > 9:
        raise InvalidInputError(f"exact_route enumerates n! orders; refusing n={n} > 9")
    ids = list(range(n)) if ids is None else [int(i) for i in ids]
    depot = (float(depot[0]), float(depot[1]))
    best = None
    for perm in itertools.permutations(range(n)):
        d_ow = math.dist(depot, pts[perm[0]])
        d_tra = sum(math.dist(pts[perm[k]], pts[perm[k + 1]]) for k in range(n - 1))
        d_ret = math.dist(pts[perm[-1]], depot)
        length = d_ow + d_tra + d_ret
        if best is None or length < best[0]:
            best = (length, perm, d_ow, d_tra, d_ret)
    _, perm, d_ow, d_tra, d_ret = best
    return Route(tuple(ids[k] for k in perm), d_ow, d_tra, d_ret)
