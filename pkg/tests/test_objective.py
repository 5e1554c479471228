import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lastmile_balance import (
    DEFAULT_SPEED,
    Evaluator,
    Instance,
    InvalidInputError,
    decode_circles,
    evaluate,
    evaluate_circles,
    fitness_from_totals,
)
from lastmile_balance.objective import cover_labels

from conftest import random_instance, tiny_instance

# per-worker totals of the best low-load-day run, as published
TABLE6_BEST = [8400.77, 8574.54, 8495.65, 8652.36, 8561.57, 8439.33,
               8447.97, 8651.17, 8392.53, 8515.79, 8526.45, 8447.71]

# 5 points / 2 workers, instance seed 11; circles drawn from default_rng(11) as
# (cx, cy, r) = (u*1000, u*1000, u*500). Fitness recomputed by a plain-Python
# membership sweep and permutation TSP.
CIRCLES11 = [(128.57020276919962, 499.277862440115, 300.74917881167875),
             (28.689008371944546, 147.92608457745592, 464.10551148018476)]
CIRCLES11_LABELS = [1, 1, 0, 1, 0]
CIRCLES11_FITNESS = 112.80280676357575


def test_table6_fitness():
    assert fitness_from_totals(TABLE6_BEST) == pytest.approx(259.83, abs=0.02)
    assert abs(fitness_from_totals(TABLE6_BEST) - 259.84) <= 0.02


def test_single_point_breakdown():
    inst = Instance.from_arrays([[100.0, 0.0]], (0.0, 0.0), 1)
    ev = evaluate(inst, [0])
    b = ev.per_worker[0]
    assert b.as_tuple() == pytest.approx((72.0, 57.64, 0.0, 132.76, 72.0, 334.4))
    assert ev.fitness == 0.0
    assert ev.total_time == pytest.approx(334.4)


def test_single_worker_fitness_zero(small_instance):
    inst = small_instance.with_n_workers(1)
    assert evaluate(inst, np.zeros(inst.n_points, dtype=int)).fitness == 0.0


def test_empty_worker_is_all_zero():
    inst = Instance.from_arrays([[100.0, 0.0], [0.0, 100.0], [50.0, 50.0]], (0.0, 0.0), 3)
    ev = evaluate(inst, [0, 0, 0])
    assert ev.per_worker[1].as_tuple() == (0.0,) * 6
    assert ev.per_worker[2].total == 0.0
    assert ev.fitness == pytest.approx(ev.per_worker[0].total)


def test_breakdown_components(small_instance):
    inst = small_instance
    a = np.arange(inst.n_points) % inst.n_workers
    ev = evaluate(inst, a)
    for j, b in enumerate(ev.per_worker):
        ids = np.flatnonzero(a == j)
        assert b.t_int == pytest.approx(inst.t_in[ids].sum())
        assert b.t_ext == pytest.approx(inst.t_ex[ids].sum())
        assert b.total == pytest.approx(sum(b.as_tuple()[:5]), rel=1e-9)
    assert ev.total_time == pytest.approx(ev.totals.sum(), rel=1e-9)
    assert ev.fitness == pytest.approx(ev.totals.max() - ev.totals.min(), rel=1e-9)


def test_exact_and_heuristic_agree_on_tiny():
    inst = tiny_instance(42)
    a = np.array([0, 0, 1, 1, 0, 1])
    assert Evaluator(inst, exact=True).fitness(a) == pytest.approx(Evaluator(inst).fitness(a), rel=1e-9)


def test_assignment_validation(small_instance):
    with pytest.raises(InvalidInputError):
        evaluate(small_instance, [0, 1])
    with pytest.raises(InvalidInputError):
        evaluate(small_instance, np.full(small_instance.n_points, 3))
    with pytest.raises(InvalidInputError):
        evaluate(small_instance, np.full(small_instance.n_points, -1))


def test_evaluation_assignment_is_frozen(small_instance):
    a = np.zeros(small_instance.n_points, dtype=int)
    ev = evaluate(small_instance, a)
    a[0] = 2
    assert ev.assignment[0] == 0
    assert not ev.assignment.flags.writeable


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.permutations([0, 1, 2]))
def test_permutation_equivariance(seed, perm):
    inst = random_instance(seed % 50, n_points=20)
    a = np.random.default_rng(seed).integers(3, size=20)
    ev = evaluate(inst, a)
    relabeled = np.asarray(perm)[a]
    ev2 = evaluate(inst, relabeled)
    assert ev2.fitness == pytest.approx(ev.fitness, rel=1e-12)
    assert ev2.total_time == pytest.approx(ev.total_time, rel=1e-12)
    for j in range(3):
        assert ev2.per_worker[perm[j]] == ev.per_worker[j]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_fitness_non_negative(seed):
    inst = random_instance(seed % 20, n_points=15, n_workers=4)
    a = np.random.default_rng(seed).integers(4, size=15)
    ev = evaluate(inst, a)
    assert ev.fitness >= 0
    assert (ev.fitness == 0) == bool(np.all(ev.totals == ev.totals[0]))


def test_zero_time_duplicate_point_changes_nothing():
    rng = np.random.default_rng(6)
    xy = rng.random((8, 2)) * 1000
    base = Instance.from_arrays(xy, (500, 500), 2)
    a = np.array([0, 1] * 4)
    t_in = np.append(base.t_in, 0.0)
    t_ex = np.append(base.t_ex, 0.0)
    dup = Instance.from_arrays(np.vstack([xy, xy[2]]), (500, 500), 2, t_in=t_in, t_ex=t_ex)
    before = evaluate(base, a).per_worker[0]
    after = evaluate(dup, np.append(a, 0)).per_worker[0]
    assert after.total - before.total == pytest.approx(0.0, abs=1e-9)
    assert after.t_ow + after.t_tra + after.t_ret == pytest.approx(before.t_ow + before.t_tra + before.t_ret)


def test_decode_overlap_goes_to_last_worker():
    inst = Instance.from_arrays([[1.0, 0.0]], (0.0, 0.0), 1).with_n_workers(1)
    labels = cover_labels(inst.xy, np.array([[0, 0, 5], [3, 0, 5]], dtype=float))
    assert labels.tolist() == [1]


def test_decode_boundary_counts_as_inside():
    xy = np.array([[5.0, 0.0]])
    assert cover_labels(xy, np.array([[0.0, 0.0, 5.0]])).tolist() == [0]


def test_decode_fallback_to_nearest_centre():
    inst = Instance.from_arrays([[60.0, 0.0], [0.0, 0.5]], (0.0, 0.0), 2)
    d = decode_circles(inst, [[0, 0, 1], [100, 0, 1]])
    assert d.assignment.tolist() == [1, 0]
    assert d.uncovered == (0,)


def test_decode_fallback_ties_lowest_index():
    inst = Instance.from_arrays([[50.0, 0.0], [0.0, 0.0]], (0.0, 0.0), 2)
    assert decode_circles(inst, [[0, 0, 1], [100, 0, 1]]).assignment.tolist() == [0, 0]


def test_decode_is_total_with_zero_radii(small_instance):
    inst = small_instance
    circles = np.column_stack([np.random.default_rng(99).random((3, 2)) * 2000, np.zeros(3)])
    d = decode_circles(inst, circles)
    assert len(d.uncovered) == inst.n_points
    assert set(d.assignment.tolist()) <= {0, 1, 2}
    assert np.isfinite(evaluate_circles(inst, circles).fitness)


def test_circles_matching_an_assignment(small_instance):
    inst = Instance.from_arrays([[0, 0], [1, 0], [100, 0], [101, 0]], (50, 50), 2)
    ev = evaluate_circles(inst, [[0.5, 0, 1], [100.5, 0, 1]])
    assert ev == evaluate(inst, [0, 0, 1, 1])


def test_circles_manual_oracle():
    inst = tiny_instance(11, n_points=5)
    d = decode_circles(inst, CIRCLES11)
    assert d.assignment.tolist() == CIRCLES11_LABELS
    assert evaluate_circles(inst, CIRCLES11).fitness == pytest.approx(CIRCLES11_FITNESS, rel=1e-9)


def test_brute_force_travel_matches_speed():
    # out-and-back at 5 km/h: 200 m takes 144 s
    inst = Instance.from_arrays([[100.0, 0.0]], (0.0, 0.0), 1, t_in=0.0, t_ex=0.0)
    assert evaluate(inst, [0]).total_time == pytest.approx(200 / DEFAULT_SPEED)


def test_totals_match_enumeration():
    inst = tiny_instance(3, n_points=5)
    ev = Evaluator(inst, exact=True)
    for a in itertools.islice(itertools.product(range(2), repeat=5), 0, 32, 5):
        a = np.array(a)
        assert ev.totals(a) == pytest.approx(ev.evaluate(a).totals, rel=1e-12)
