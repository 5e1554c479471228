"""Command-line entry point: ``lastmile-balance {generate,solve,bench,oracle}``."""

from __future__ import annotations

import argparse
import sys

from . import fileio
from .bench import brute_force_optimum, format_stats_table, run_experiment
from .exceptions import BalanceError
from .generate import DAY_PROFILES, GeneratorSpec, generate_instance
from .solvers.config import EAConfig, SeedMix
from .solvers.estimators import ALGORITHM_LABELS, make_solver

_EA = EAConfig()
SOLVE_ALGOS = ("ea-ie", "ea-ce", "ra-ie", "ra-ce", "ra-ea-ie")


def _add_ea_flags(p):
    p.add_argument("--generations", type=int, default=_EA.max_generations)
    p.add_argument("--pop", type=int, default=_EA.population_size)
    p.add_argument("--time-budget-s", type=float, default=_EA.time_budget)
    p.add_argument("--mutation-p", type=float, default=_EA.mutation_prob)
    p.add_argument("--crossover-frac", type=float, default=_EA.crossover_frac)
    p.add_argument("--survival-frac", type=float, default=_EA.survival_frac)
    p.add_argument("--mix", default="0.2,0.2,0.2,0.2,0.2",
                   help="RA-EA-IE seeding fractions: random,kmeans,kmeans-mutated,ra-ie,ra-ie-mutated")
    p.add_argument("--init", choices=("kmeans", "spectral"), default="kmeans")


def _params(args) -> dict:
    return {
        "population_size": args.pop,
        "max_generations": args.generations,
        "time_budget": args.time_budget_s,
        "mutation_prob": args.mutation_p,
        "crossover_frac": args.crossover_frac,
        "survival_frac": args.survival_frac,
        "mix": SeedMix.parse(args.mix).as_tuple(),
        "initializer": args.init,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lastmile-balance",
                                     description="Balance delivery workload across workers.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic instance")
    g.add_argument("--spec", help="JSON generator spec; flags below override its fields")
    g.add_argument("--profile", choices=sorted(DAY_PROFILES), help="day profile for point/worker counts")
    g.add_argument("--n-points", type=int)
    g.add_argument("--n-workers", type=int)
    g.add_argument("--distribution", choices=("uniform", "clustered"))
    g.add_argument("--n-clusters", type=int)
    g.add_argument("--spread-m", type=float)
    g.add_argument("--bbox", type=float, nargs=4, metavar=("XMIN", "YMIN", "XMAX", "YMAX"))
    g.add_argument("--depot", dest="depot_placement", choices=("center", "corner", "random"))
    g.add_argument("--seed", type=int)
    g.add_argument("--name")
    g.add_argument("--out", required=True)

    s = sub.add_parser("solve", help="run one algorithm on an instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--algo", required=True, choices=SOLVE_ALGOS)
    s.add_argument("--seed", type=int, default=0)
    _add_ea_flags(s)
    s.add_argument("--out", required=True)
    s.add_argument("--geojson")
    s.add_argument("--breakdown")

    b = sub.add_parser("bench", help="repeated seeded runs with summary statistics")
    b.add_argument("--instance", required=True)
    b.add_argument("--algos", default="ea-ie,ea-ce,ra-ie,ra-ce,ra-ea-ie",
                   help=f"comma-separated, from {', '.join(ALGORITHM_LABELS)}")
    b.add_argument("--runs", type=int, default=30)
    b.add_argument("--seed", type=int, default=0)
    _add_ea_flags(b)
    b.add_argument("--out", required=True)
    b.add_argument("--per-run", help="optional CSV with one row per run")

    o = sub.add_parser("oracle", help="exhaustive optimum of a tiny instance")
    o.add_argument("--instance", required=True)
    o.add_argument("--out", required=True)
    return parser


def _cmd_generate(args):
    base = fileio.generator_spec_to_dict(fileio.load_generator_spec(args.spec) if args.spec else GeneratorSpec())
    if args.profile:
        base["n_points"], base["n_workers"] = DAY_PROFILES[args.profile]
    for key in ("n_points", "n_workers", "distribution", "n_clusters", "spread_m",
                "depot_placement", "seed", "name"):
        value = getattr(args, key)
        if value is not None:
            base[key] = value
    if args.bbox is not None:
        base["bbox"] = list(args.bbox)
    base["bbox"] = tuple(base["bbox"])
    instance = generate_instance(GeneratorSpec(**base))
    fileio.save_instance(instance, args.out)
    print(f"wrote {instance.n_points} points / {instance.n_workers} workers to {args.out}")


def _cmd_solve(args):
    instance = fileio.load_instance(args.instance)
    params = _params(args)
    est = make_solver(args.algo, args.seed, **params).fit(instance)
    used = {k: v for k, v in params.items() if k in est.get_params()}
    if "mix" in used:
        used["mix"] = list(used["mix"])
    doc = fileio.result_to_dict(args.algo, args.seed, used, est.result_, instance)
    fileio.save_result(doc, args.out)
    if args.geojson:
        fileio.export_assignment_geojson(instance, est.labels_, args.geojson)
    if args.breakdown:
        fileio.write_breakdown_csv(est.evaluation_, args.breakdown)
    print(f"{args.algo} seed {args.seed}: fitness {est.fitness_:.2f} s, "
          f"total {est.total_time_:.2f} s ({est.wall_time_:.1f} s wall)")


def _cmd_bench(args):
    instance = fileio.load_instance(args.instance)
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    stats = run_experiment(instance, algos, args.runs, args.seed, _params(args))
    fileio.write_stats_csv(stats, args.out, args.per_run)
    print(format_stats_table(stats))


def _cmd_oracle(args):
    instance = fileio.load_instance(args.instance)
    best, evaluation = brute_force_optimum(instance)
    doc = {
        "instance": instance.name,
        "fitness_s": evaluation.fitness,
        "total_time_s": evaluation.total_time,
        "assignment": [int(a) for a in best],
        "per_worker": fileio.breakdown_dicts(evaluation),
    }
    fileio.save_result(doc, args.out)
    print(f"optimum fitness {evaluation.fitness:.4f} s")


COMMANDS = {"generate": _cmd_generate, "solve": _cmd_solve, "bench": _cmd_bench, "oracle": _cmd_oracle}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except (BalanceError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
