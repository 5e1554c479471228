from .config import EAConfig, SeedMix, SolveResult
from .estimators import (
    ALGORITHM_LABELS,
    ALGORITHMS,
    BaseBalancer,
    ClusteringBalancer,
    EACE,
    EAIE,
    RACE,
    RAEAIE,
    RAIE,
    make_solver,
)
from .evolutionary import evolve, seed_population, solve_ea_ce, solve_ea_ie, solve_ra_ea_ie
from .operators import (
    crossover_circle_external,
    crossover_circle_internal,
    crossover_integer,
    mutate_circle_hard,
    mutate_circle_smooth,
    mutate_integer,
)
from .recursive import solve_ra_ce, solve_ra_ie

__all__ = [
    "ALGORITHM_LABELS", "ALGORITHMS", "BaseBalancer", "ClusteringBalancer", "EACE", "EAIE",
    "EAConfig", "RACE", "RAEAIE", "RAIE", "SeedMix", "SolveResult", "crossover_circle_external",
    "crossover_circle_internal", "crossover_integer", "evolve", "make_solver",
    "mutate_circle_hard", "mutate_circle_smooth", "mutate_integer", "seed_population",
    "solve_ea_ce", "solve_ea_ie", "solve_ra_ce", "solve_ra_ea_ie", "solve_ra_ie",
]
