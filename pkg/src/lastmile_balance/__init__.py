"""Effort-based workload balancing for last-mile parcel delivery.

Assign delivery points to workers so that their total working times
(handling plus walking a short closed tour from the depot) are as equal as
possible. Solvers follow the scikit-learn estimator API; see
:mod:`lastmile_balance.solvers`.
"""

from .bench import (
    BreakdownRow,
    RunRecord,
    RunStats,
    breakdown_report,
    brute_force_optimum,
    format_breakdown,
    format_stats_table,
    run_experiment,
    summarize,
)
from .clustering import ClusterResult, KMeans, SpectralClustering, kmeans, spectral_cluster
from .exceptions import (
    BalanceError,
    ConfigurationError,
    InstanceFormatError,
    InvalidInputError,
    InvalidParameterError,
    OracleTooLargeError,
)
from .fileio import (
    export_assignment_geojson,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    read_assignment_geojson,
    save_instance,
)
from .generate import DAY_PROFILES, GeneratorSpec, generate_instance
from .model import (
    DEFAULT_SPEED,
    DEFAULT_T_EX,
    DEFAULT_T_IN,
    DeliveryPoint,
    Evaluation,
    Instance,
    TimeBreakdown,
    fitness_from_totals,
)
from .objective import DecodedAssignment, Evaluator, decode_circles, evaluate, evaluate_circles
from .routing import Route, exact_route, solve_route, two_opt_improve
from .solvers import (
    EACE,
    EAIE,
    RACE,
    RAEAIE,
    RAIE,
    ClusteringBalancer,
    EAConfig,
    SeedMix,
    SolveResult,
    make_solver,
    solve_ea_ce,
    solve_ea_ie,
    solve_ra_ce,
    solve_ra_ea_ie,
    solve_ra_ie,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
