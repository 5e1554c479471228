import numpy as np
import pytest

from lastmile_balance import GeneratorSpec, Instance, generate_instance

# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[str, str] = {}


def tiny_instance(seed: int, n_points: int = 6, n_workers: int = 2) -> Instance:
    """Uniform points in a 1 km square, depot in the middle."""
    return generate_instance(GeneratorSpec(n_points=n_points, n_workers=n_workers,
                                           bbox=(0.0, 0.0, 1000.0, 1000.0), seed=seed))


def random_instance(seed, n_points=30, n_workers=3, t_in=57.64, t_ex=132.76, size=2000.0):
    rng = np.random.default_rng(seed)
    xy = rng.random((n_points, 2)) * size
    return Instance.from_arrays(xy, (size / 2, size / 2), n_workers, t_in=t_in, t_ex=t_ex)


@pytest.fixture
def small_instance():
    return random_instance(0)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
