"""Variation operators for the integer and circle encodings.

Crossovers take an explicit boolean mask so they are fully deterministic; the
``random_*_mask`` helpers draw masks with a per-gene probability.
"""

from __future__ import annotations

import math

import numpy as np

from .._validation import check_same_length
from ..exceptions import InvalidInputError, InvalidParameterError


def random_mask(rng: np.random.Generator, shape, frac: float) -> np.ndarray:
    return rng.random(shape) < frac


def crossover_integer(p1, p2, mask) -> np.ndarray:
    """Gene ``i`` from ``p1`` where ``mask[i]`` else from ``p2``."""
    p1 = np.asarray(p1)
    p2 = np.asarray(p2)
    mask = np.asarray(mask, dtype=bool)
    check_same_length(p1, p2)
    check_same_length(p1, mask, "parent and mask")
    return np.where(mask, p1, p2)


def mutate_integer(sol, rng: np.random.Generator, n_workers: int, prob: float = 0.05,
                   force: bool = False) -> np.ndarray:
    """With probability ``prob`` reset one random gene to a uniform worker index.

    The new value may equal the old one. ``force=True`` always mutates and
    guarantees a different value whenever there is more than one worker.
    """
    out = np.array(sol, dtype=np.int64, copy=True)
    if not force and rng.random() >= prob:
        return out
    i = int(rng.integers(out.shape[0]))
    if force and n_workers > 1:
        v = int(rng.integers(n_workers - 1))
        out[i] = v if v < out[i] else v + 1
    else:
        out[i] = int(rng.integers(n_workers))
    return out


def _as_circles(c) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if c.ndim != 2 or c.shape[1] != 3:
        raise InvalidInputError(f"circle solutions have shape (N_W, 3), got {c.shape}")
    return c


def crossover_circle_external(p1, p2, mask) -> np.ndarray:
    """Whole ``(cx, cy, r)`` triplets taken from ``p1`` where ``mask`` is set."""
    p1, p2 = _as_circles(p1), _as_circles(p2)
    check_same_length(p1, p2)
    mask = np.asarray(mask, dtype=bool)
    check_same_length(p1, mask, "parents and mask")
    return np.where(mask[:, None], p1, p2)


def crossover_circle_internal(p1, p2, mask) -> np.ndarray:
    """Each of the ``3 * N_W`` scalars chosen independently; ``mask`` is (N_W, 3) or flat."""
    p1, p2 = _as_circles(p1), _as_circles(p2)
    check_same_length(p1, p2)
    mask = np.asarray(mask, dtype=bool)
    if mask.size != p1.size:
        raise InvalidInputError(f"mask needs {p1.size} entries, got {mask.size}")
    return np.where(mask.reshape(p1.shape), p1, p2)


def mutate_circle_smooth(sol, rng: np.random.Generator, sigma: float, prob: float = 0.3) -> np.ndarray:
    """Add ``N(0, sigma)`` noise to each scalar with probability ``prob``; clamp radii at 0."""
    if sigma < 0:
        raise InvalidParameterError(f"sigma must be non-negative, got {sigma}")
    out = np.array(_as_circles(sol), copy=True)
    hit = rng.random(out.shape) < prob
    noise = rng.normal(0.0, 1.0, out.shape) * sigma
    out = out + np.where(hit, noise, 0.0)
    out[:, 2] = np.maximum(out[:, 2], 0.0)
    return out


def sample_circle(rng: np.random.Generator, bounds, r_max: float) -> np.ndarray:
    """Centre uniform in ``bounds = (xmin, ymin, xmax, ymax)``, radius uniform in (0, r_max]."""
    xmin, ymin, xmax, ymax = bounds
    u = rng.random(3)
    return np.array([xmin + u[0] * (xmax - xmin),
                     ymin + u[1] * (ymax - ymin),
                     r_max * (1.0 - u[2])])


def mutate_circle_hard(sol, rng: np.random.Generator, bounds, prob: float = 0.05,
                       r_max: float | None = None) -> np.ndarray:
    """With probability ``prob`` resample one uniformly chosen circle."""
    out = np.array(_as_circles(sol), copy=True)
    if rng.random() >= prob:
        return out
    if r_max is None:
        xmin, ymin, xmax, ymax = bounds
        r_max = 0.5 * math.hypot(xmax - xmin, ymax - ymin)
    i = int(rng.integers(out.shape[0]))
    out[i] = sample_circle(rng, bounds, r_max)
    return out
