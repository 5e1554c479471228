"""Input checks shared by the functional API and the estimators."""

from __future__ import annotations

import numbers

import numpy as np

from .exceptions import InvalidInputError, InvalidParameterError
from .model import Instance


def check_instance(instance) -> Instance:
    if not isinstance(instance, Instance):
        raise InvalidInputError(
            f"expected an Instance, got {type(instance).__name__}; "
            "use Instance.from_arrays or load_instance"
        )
    return instance


def check_assignment(assignment, instance: Instance) -> np.ndarray:
    """Return ``assignment`` as a read-only int64 vector valid for ``instance``."""
    arr = np.asarray(assignment)
    if arr.ndim != 1 or arr.shape[0] != instance.n_points:
        raise InvalidInputError(
            f"assignment must have length {instance.n_points}, got shape {arr.shape}"
        )
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise InvalidInputError("assignment entries must be integers")
    arr = arr.astype(np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= instance.n_workers):
        raise InvalidInputError(f"worker indices must lie in [0, {instance.n_workers})")
    return arr


def check_circles(circles, n_workers: int) -> np.ndarray:
    arr = np.asarray(circles, dtype=float)
    if arr.shape != (n_workers, 3):
        raise InvalidInputError(f"circle solution must have shape ({n_workers}, 3), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("circle solution contains non-finite values")
    if np.any(arr[:, 2] < 0):
        raise InvalidInputError("circle radii must be non-negative")
    return arr


def check_same_length(a, b, what="parents"):
    if len(a) != len(b):
        raise InvalidInputError(f"{what} differ in length: {len(a)} vs {len(b)}")


def check_probability(value, name, *, open_interval=False):
    if not isinstance(value, numbers.Real):
        raise InvalidParameterError(f"{name} must be a number, got {value!r}")
    if open_interval:
        if not 0 < value < 1:
            raise InvalidParameterError(f"{name} must lie in (0, 1), got {value}")
    elif not 0 <= value <= 1:
        raise InvalidParameterError(f"{name} must lie in [0, 1], got {value}")
    return float(value)


def check_positive_int(value, name, minimum=1):
    if not isinstance(value, numbers.Integral) or value < minimum:
        raise InvalidParameterError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def as_generator(seed) -> np.random.Generator:
    """Accept a seed, a SeedSequence or a Generator."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)
