"""Synthetic instances standing in for real delivery days."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import InvalidParameterError
from .model import DEFAULT_SPEED, DEFAULT_T_EX, DEFAULT_T_IN, Instance

# packages / workers of a low, average and high load day
DAY_PROFILES = {
    "low": (240, 12),
    "average": (392, 12),
    "high": (628, 13),
}


@dataclass(frozen=True)
class GeneratorSpec:
    n_points: int = 240
    n_workers: int = 12
    distribution: str = "uniform"  # or "clustered"
    n_clusters: int = 6
    spread_m: float = 250.0
    bbox: tuple[float, float, float, float] = (0.0, 0.0, 4000.0, 4000.0)
    depot_placement: str = "center"  # "center" | "corner" | "random"
    seed: int = 0
    speed: float = DEFAULT_SPEED
    t_in: float = DEFAULT_T_IN
    t_ex: float = DEFAULT_T_EX
    name: str = field(default="")

    def __post_init__(self):
        if not self.n_points >= self.n_workers >= 1:
            raise InvalidParameterError("need n_points >= n_workers >= 1")
        if self.distribution not in ("uniform", "clustered"):
            raise InvalidParameterError(f"unknown distribution {self.distribution!r}")
        if self.depot_placement not in ("center", "corner", "random"):
            raise InvalidParameterError(f"unknown depot placement {self.depot_placement!r}")
        xmin, ymin, xmax, ymax = self.bbox
        if not (xmax > xmin and ymax > ymin):
            raise InvalidParameterError(f"degenerate bbox {self.bbox}")
        if self.distribution == "clustered" and (self.n_clusters < 1 or self.spread_m < 0):
            raise InvalidParameterError("clustered mode needs n_clusters >= 1 and spread_m >= 0")

    @classmethod
    def profile(cls, day: str, **kwargs) -> "GeneratorSpec":
        n_points, n_workers = DAY_PROFILES[day]
        return cls(n_points=n_points, n_workers=n_workers, **kwargs)


def generate_points(spec: GeneratorSpec):
    """Return ``(xy, depot, centers)``; ``centers`` is None for uniform instances."""
    rng = np.random.default_rng(spec.seed)
    xmin, ymin, xmax, ymax = spec.bbox
    lo = np.array([xmin, ymin])
    hi = np.array([xmax, ymax])
    centers = None
    if spec.distribution == "uniform":
        xy = lo + rng.random((spec.n_points, 2)) * (hi - lo)
    else:
        centers = lo + rng.random((spec.n_clusters, 2)) * (hi - lo)
        which = rng.integers(spec.n_clusters, size=spec.n_points)
        xy = centers[which] + rng.normal(0.0, spec.spread_m, (spec.n_points, 2))
        xy = np.clip(xy, lo, hi)
    if spec.depot_placement == "center":
        depot = (lo + hi) / 2
    elif spec.depot_placement == "corner":
        depot = lo.copy()
    else:
        depot = lo + rng.random(2) * (hi - lo)
    return xy, (float(depot[0]), float(depot[1])), centers


def generate_instance(spec: GeneratorSpec) -> Instance:
    xy, depot, _ = generate_points(spec)
    name = spec.name or f"synthetic-{spec.distribution}-{spec.n_points}x{spec.n_workers}-s{spec.seed}"
    return Instance.from_arrays(xy, depot, spec.n_workers, spec.speed, spec.t_in, spec.t_ex, name)
