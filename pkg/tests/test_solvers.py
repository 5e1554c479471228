import numpy as np
import pytest
from sklearn.base import clone

from lastmile_balance import (
    EACE,
    EAIE,
    RACE,
    RAEAIE,
    RAIE,
    ClusteringBalancer,
    EAConfig,
    Instance,
    SeedMix,
    brute_force_optimum,
    evaluate,
    make_solver,
    solve_ea_ce,
    solve_ea_ie,
    solve_ra_ce,
    solve_ra_ea_ie,
    solve_ra_ie,
)
from lastmile_balance.exceptions import ConfigurationError, InvalidParameterError
from lastmile_balance.objective import get_evaluator
from lastmile_balance.solvers import seed_population
from lastmile_balance.solvers.recursive import ra_ie_assignment

from conftest import random_instance, tiny_instance

# optimum of tiny_instance(42) (6 points / 2 workers) from a plain-Python
# enumeration of all 64 assignments with permutation TSP
OPT42 = 6.776670930996261

FAST = EAConfig(population_size=20, max_generations=30, time_budget=None)


def symmetric_cross():
    xy = [[100.0, 0.0], [-100.0, 0.0], [0.0, 100.0], [0.0, -100.0]]
    return Instance.from_arrays(xy, (0.0, 0.0), 2)


def test_oracle_constant():
    best, ev = brute_force_optimum(tiny_instance(42))
    assert ev.fitness == pytest.approx(OPT42, rel=1e-9)
    assert best.tolist() == [0, 0, 1, 1, 0, 1]


@pytest.mark.parametrize("solver", [
    lambda i: solve_ea_ie(i, FAST),
    lambda i: solve_ea_ce(i, FAST),
    lambda i: solve_ra_ie(i, 0),
    lambda i: solve_ra_ce(i, 0),
    lambda i: solve_ra_ea_ie(i, FAST),
])
def test_single_worker_gives_zero(solver):
    inst = random_instance(1, n_points=12).with_n_workers(1)
    res = solver(inst)
    assert res.fitness == 0.0
    assert np.all(res.best_solution == 0)


def test_ea_ie_symmetric_optimum():
    res = solve_ea_ie(symmetric_cross(), EAConfig(max_generations=100, time_budget=None))
    assert res.fitness == pytest.approx(0.0, abs=1e-9)


@pytest.mark.xfail(strict=True, reason="solver seed 42 settles in a 26.1 s local optimum; seeds 1-9 reach the optimum")
def test_ea_ie_tiny_within_ten_percent():
    res = solve_ea_ie(tiny_instance(42), EAConfig(rng_seed=42, time_budget=None))
    assert res.fitness <= 1.1 * OPT42 + 1e-9


def test_ea_ie_tiny_most_seeds_optimal():
    inst = tiny_instance(42)
    hits = sum(solve_ea_ie(inst, EAConfig(rng_seed=s, time_budget=None)).fitness <= 1.1 * OPT42 + 1e-9
               for s in range(10))
    assert hits >= 8


def test_ra_ea_ie_tiny_exact():
    res = solve_ra_ea_ie(tiny_instance(42), EAConfig(rng_seed=42, time_budget=None))
    assert res.fitness == pytest.approx(OPT42, rel=1e-9)


@pytest.mark.xfail(strict=True, reason="greedy leaves a 4/2 split at 686 s on every seed; the optimum is a near-perfect 6.8 s")
def test_ra_ie_tiny_within_factor_two():
    assert solve_ra_ie(tiny_instance(42), 42).fitness <= 2 * OPT42 + 1e-9


def test_heuristics_never_beat_oracle():
    for seed in range(3):
        inst = tiny_instance(seed)
        opt = brute_force_optimum(inst)[1].fitness
        for res in (solve_ea_ie(inst, FAST), solve_ea_ce(inst, FAST), solve_ra_ie(inst, seed),
                    solve_ra_ce(inst, seed), solve_ra_ea_ie(inst, FAST)):
            assert res.fitness >= opt - 1e-9 * max(1.0, opt)


@pytest.mark.parametrize("run", [
    lambda i, s: solve_ea_ie(i, EAConfig(population_size=20, max_generations=30, time_budget=None, rng_seed=s)),
    lambda i, s: solve_ea_ce(i, EAConfig(population_size=20, max_generations=30, time_budget=None, rng_seed=s)),
    lambda i, s: solve_ra_ea_ie(i, EAConfig(population_size=20, max_generations=30, time_budget=None, rng_seed=s)),
])
def test_elitist_history_and_determinism(run):
    inst = random_instance(2, n_points=40, n_workers=4)
    a, b = run(inst, 5), run(inst, 5)
    np.testing.assert_array_equal(a.best_solution, b.best_solution)
    assert a.history == b.history
    assert np.all(np.diff(a.history) <= 0)
    assert len(a.history) == 31 and a.generations == 30
    assert a.history[-1] == pytest.approx(a.fitness)
    assert evaluate(inst, a.best_solution).fitness == a.best_evaluation.fitness


def test_time_budget_stops_early():
    inst = random_instance(3, n_points=60, n_workers=4)
    res = solve_ea_ie(inst, EAConfig(max_generations=10**6, time_budget=0.3))
    assert res.generations < 10**6
    assert res.wall_time < 5


def test_ea_ce_returns_circles():
    inst = random_instance(4, n_points=30)
    res = solve_ea_ce(inst, FAST)
    assert res.circles.shape == (3, 3)
    assert np.all(res.circles[:, 2] >= 0)
    from lastmile_balance import decode_circles
    np.testing.assert_array_equal(decode_circles(inst, res.circles).assignment, res.best_solution)


def test_ra_ie_one_point_each():
    inst = symmetric_cross().with_n_workers(4)
    res = solve_ra_ie(inst, 0)
    assert sorted(res.best_solution.tolist()) == [0, 1, 2, 3]
    assert res.fitness == pytest.approx(0.0, abs=1e-9)


def test_ra_ie_progress_every_round():
    for seed in range(5):
        inst = random_instance(seed, n_points=80, n_workers=6)
        res = solve_ra_ie(inst, seed)
        rounds = res.extra["assigned_per_round"]
        assert all(r >= 1 for r in rounds)
        assert sum(rounds) == inst.n_points
        assert rounds[0] == inst.n_workers


def test_ra_ie_only_feeds_workers_below_mean():
    inst = random_instance(7, n_points=50, n_workers=5)
    ev = get_evaluator(inst)
    centroids = inst.xy[:5]
    assignment, history, progress = ra_ie_assignment(inst, centroids, ev)
    assert (assignment >= 0).all()
    assert len(history) == len(progress)


def test_ra_ie_scale_equivariance():
    rng = np.random.default_rng(11)
    xy = rng.random((40, 2)) * 1000
    a = Instance.from_arrays(xy, (500, 500), 4, t_in=0.0, t_ex=0.0)
    b = Instance.from_arrays(xy * 2, (1000, 1000), 4, t_in=0.0, t_ex=0.0)
    ra, rb = solve_ra_ie(a, 3), solve_ra_ie(b, 3)
    np.testing.assert_array_equal(ra.best_solution, rb.best_solution)
    np.testing.assert_allclose(rb.best_evaluation.totals, 2 * ra.best_evaluation.totals, rtol=1e-12)
    assert rb.fitness == pytest.approx(2 * ra.fitness, rel=1e-12)


def test_ra_ce_covered_at_start():
    inst = random_instance(5, n_points=4, n_workers=4)  # centroids sit on the points
    res = solve_ra_ce(inst, 0)
    assert res.extra["rounds"] == 0 and res.extra["covered"]
    assert sorted(res.best_solution.tolist()) == [0, 1, 2, 3]


def test_ra_ce_single_worker_terminates():
    inst = random_instance(6, n_points=25).with_n_workers(1)
    res = solve_ra_ce(inst, 0)
    assert res.fitness == 0.0


def test_ra_ce_deterministic_radii():
    inst = random_instance(8, n_points=50, n_workers=5)
    a, b = solve_ra_ce(inst, 9), solve_ra_ce(inst, 9)
    np.testing.assert_array_equal(a.circles, b.circles)
    assert a.extra["rounds"] <= 10_000


def test_ra_ce_round_cap():
    inst = random_instance(8, n_points=50, n_workers=5)
    res = solve_ra_ce(inst, 9, max_rounds=1)
    assert res.extra["rounds"] <= 1
    assert (res.best_solution >= 0).all()


def test_seed_population_mix():
    inst = random_instance(9, n_points=30)
    ev = get_evaluator(inst)
    pop, origin = seed_population(inst, 10, SeedMix(), "kmeans", 0, ev)
    assert origin == ["random"] * 2 + ["kmeans"] * 2 + ["kmeans_mutated"] * 2 + ["ra"] * 2 + ["ra_mutated"] * 2
    pop2, _ = seed_population(inst, 10, SeedMix(), "kmeans", 0, ev)
    for x, y in zip(pop, pop2):
        np.testing.assert_array_equal(x, y)
    only_random, origin = seed_population(inst, 6, SeedMix(1, 0, 0, 0, 0), "kmeans", 0, ev)
    assert set(origin) == {"random"}


def test_ra_ea_ie_spectral_initializer():
    inst = random_instance(10, n_points=40, n_workers=4)
    a = solve_ra_ea_ie(inst, FAST, initializer="spectral")
    b = solve_ra_ea_ie(inst, FAST, initializer="spectral")
    np.testing.assert_array_equal(a.best_solution, b.best_solution)
    with pytest.raises(InvalidParameterError):
        solve_ra_ea_ie(inst, FAST, initializer="gmm")


class TestEstimators:
    def test_fit_attributes(self, small_instance):
        est = RAEAIE(max_generations=10, population_size=10, random_state=1).fit(small_instance)
        assert est.labels_.shape == (small_instance.n_points,)
        assert est.breakdown_.shape == (3, 6)
        assert est.fitness_ == pytest.approx(est.history_[-1])
        assert est.score(small_instance) == pytest.approx(-est.fitness_)
        assert np.array_equal(est.predict(small_instance.xy), est.labels_)

    def test_params_and_clone(self):
        est = EAIE(population_size=12, random_state=4)
        assert clone(est).get_params() == est.get_params()
        est.set_params(mutation_prob=0.1)
        assert est.mutation_prob == 0.1

    def test_every_estimator_is_deterministic(self, small_instance):
        for cls in (EAIE, EACE, RAEAIE):
            a = cls(max_generations=5, population_size=8, random_state=2).fit(small_instance)
            b = cls(max_generations=5, population_size=8, random_state=2).fit(small_instance)
            assert np.array_equal(a.labels_, b.labels_)
        for cls in (RAIE, RACE, ClusteringBalancer):
            a, b = cls(random_state=2).fit(small_instance), cls(random_state=2).fit(small_instance)
            assert np.array_equal(a.labels_, b.labels_)

    def test_fit_rejects_non_instance(self):
        with pytest.raises(Exception):
            RAIE().fit(np.zeros((3, 2)))

    def test_make_solver(self):
        est = make_solver("ra-ea-ie-sc", 3, max_generations=7, unknown=1)
        assert isinstance(est, RAEAIE)
        assert est.initializer == "spectral" and est.max_generations == 7 and est.random_state == 3
        assert make_solver("spectral").method == "spectral"
        assert isinstance(make_solver("ra-ie", 0, max_generations=5), RAIE)
        with pytest.raises(ConfigurationError):
            make_solver("ra-ea-ce")
