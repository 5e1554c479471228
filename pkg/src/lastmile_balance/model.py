"""Domain types: delivery points, problem instances, per-worker time breakdowns."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .exceptions import InvalidInputError, InvalidParameterError

KMH_TO_MS = 1000.0 / 3600.0

# Operational defaults for a walking postal worker.
DEFAULT_T_IN = 57.64
DEFAULT_T_EX = 132.76
DEFAULT_SPEED_KMH = 5.0
DEFAULT_SPEED = DEFAULT_SPEED_KMH * KMH_TO_MS


def euclidean_distance(a, b) -> float:
    """Planar distance in meters between two ``(x, y)`` points."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


def travel_time(distance: float, speed: float) -> float:
    """Seconds needed to cover ``distance`` meters at ``speed`` m/s."""
    if not speed > 0:
        raise InvalidParameterError(f"speed must be positive, got {speed!r}")
    if distance < 0:
        raise InvalidParameterError(f"distance must be non-negative, got {distance!r}")
    return distance / speed


@dataclass(frozen=True)
class DeliveryPoint:
    id: int
    x: float
    y: float
    t_in: float = DEFAULT_T_IN
    t_ex: float = DEFAULT_T_EX

    def __post_init__(self):
        if self.t_in < 0 or self.t_ex < 0:
            raise InvalidParameterError(
                f"point {self.id}: handling times must be non-negative"
            )


@dataclass(frozen=True, eq=False)
class Instance:
    """Immutable problem description.

    Equality compares every field; hashing is by identity so instances can key
    per-instance caches cheaply.
    """

    depot: tuple[float, float]
    points: tuple[DeliveryPoint, ...]
    n_workers: int
    speed: float = DEFAULT_SPEED
    name: str = ""
    default_t_in: float = DEFAULT_T_IN
    default_t_ex: float = DEFAULT_T_EX

    def __post_init__(self):
        object.__setattr__(self, "depot", (float(self.depot[0]), float(self.depot[1])))
        object.__setattr__(self, "points", tuple(self.points))
        if len(self.points) < 1:
            raise InvalidInputError("an instance needs at least one delivery point")
        if int(self.n_workers) != self.n_workers or self.n_workers < 1:
            raise InvalidParameterError(f"n_workers must be a positive integer, got {self.n_workers!r}")
        object.__setattr__(self, "n_workers", int(self.n_workers))
        if not self.speed > 0:
            raise InvalidParameterError(f"speed must be positive, got {self.speed!r}")
        if len(self.points) < self.n_workers:
            raise InvalidInputError(
                f"{len(self.points)} points cannot be shared among {self.n_workers} workers"
            )
        ids = [p.id for p in self.points]
        if ids != list(range(len(ids))):
            raise InvalidInputError("point ids must be 0..N_p-1 in order")

    @classmethod
    def from_arrays(
        cls,
        xy,
        depot,
        n_workers: int,
        speed: float = DEFAULT_SPEED,
        t_in=DEFAULT_T_IN,
        t_ex=DEFAULT_T_EX,
        name: str = "",
    ) -> "Instance":
        """Build an instance from an ``(N, 2)`` coordinate array.

        ``t_in``/``t_ex`` may be scalars (used as the document defaults too) or
        per-point sequences.
        """
        xy = np.asarray(xy, dtype=float)
        if xy.ndim != 2 or xy.shape[1] != 2:
            raise InvalidInputError(f"xy must have shape (N, 2), got {xy.shape}")
        n = xy.shape[0]
        t_in_arr = np.broadcast_to(np.asarray(t_in, dtype=float), (n,))
        t_ex_arr = np.broadcast_to(np.asarray(t_ex, dtype=float), (n,))
        default_in = float(t_in) if np.ndim(t_in) == 0 else DEFAULT_T_IN
        default_ex = float(t_ex) if np.ndim(t_ex) == 0 else DEFAULT_T_EX
        points = tuple(
            DeliveryPoint(i, float(xy[i, 0]), float(xy[i, 1]), float(t_in_arr[i]), float(t_ex_arr[i]))
            for i in range(n)
        )
        return cls(depot, points, n_workers, speed, name, default_in, default_ex)

    @property
    def n_points(self) -> int:
        return len(self.points)

    @cached_property
    def xy(self) -> np.ndarray:
        arr = np.array([(p.x, p.y) for p in self.points], dtype=float).reshape(-1, 2)
        arr.flags.writeable = False
        return arr

    @cached_property
    def t_in(self) -> np.ndarray:
        arr = np.array([p.t_in for p in self.points], dtype=float)
        arr.flags.writeable = False
        return arr

    @cached_property
    def t_ex(self) -> np.ndarray:
        arr = np.array([p.t_ex for p in self.points], dtype=float)
        arr.flags.writeable = False
        return arr

    @cached_property
    def bounds(self) -> tuple[float, float, float, float]:
        """``(xmin, ymin, xmax, ymax)`` of the delivery points."""
        lo = self.xy.min(axis=0)
        hi = self.xy.max(axis=0)
        return float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1])

    @property
    def diagonal(self) -> float:
        xmin, ymin, xmax, ymax = self.bounds
        return math.hypot(xmax - xmin, ymax - ymin)

    def with_n_workers(self, n_workers: int) -> "Instance":
        return Instance(self.depot, self.points, n_workers, self.speed, self.name,
                        self.default_t_in, self.default_t_ex)

    def __eq__(self, other):
        if not isinstance(other, Instance):
            return NotImplemented
        return (
            self.depot == other.depot
            and self.points == other.points
            and self.n_workers == other.n_workers
            and self.speed == other.speed
            and self.name == other.name
            and self.default_t_in == other.default_t_in
            and self.default_t_ex == other.default_t_ex
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return (f"Instance(name={self.name!r}, n_points={self.n_points}, "
                f"n_workers={self.n_workers}, speed={self.speed:.4f})")


@dataclass(frozen=True)
class TimeBreakdown:
    """One worker's working time split into its five components, in seconds."""

    t_ow: float = 0.0
    t_int: float = 0.0
    t_tra: float = 0.0
    t_ext: float = 0.0
    t_ret: float = 0.0

    @property
    def total(self) -> float:
        return self.t_ow + self.t_int + self.t_tra + self.t_ext + self.t_ret

    def as_tuple(self) -> tuple[float, float, float, float, float, float]:
        """Column order used by every report: ow, int, tra, ext, ret, total."""
        return (self.t_ow, self.t_int, self.t_tra, self.t_ext, self.t_ret, self.total)


@dataclass(frozen=True)
class Evaluation:
    per_worker: tuple[TimeBreakdown, ...]
    fitness: float
    total_time: float
    assignment: np.ndarray | None = field(default=None, compare=False, repr=False)

    @property
    def totals(self) -> np.ndarray:
        return np.array([b.total for b in self.per_worker], dtype=float)

    @classmethod
    def from_breakdowns(cls, per_worker: Sequence[TimeBreakdown], assignment=None) -> "Evaluation":
        per_worker = tuple(per_worker)
        totals = [b.total for b in per_worker]
        return cls(per_worker, fitness_from_totals(totals), float(sum(totals)), assignment)


def fitness_from_totals(totals) -> float:
    """Spread between the busiest and the least busy worker."""
    totals = np.asarray(totals, dtype=float)
    if totals.size == 0:
        raise InvalidInputError("need at least one worker total")
    return float(totals.max() - totals.min())
