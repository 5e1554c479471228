import numpy as np
import pytest

from lastmile_balance import DAY_PROFILES, GeneratorSpec, generate_instance
from lastmile_balance.exceptions import InvalidParameterError
from lastmile_balance.generate import generate_points


def test_uniform_day_profile():
    spec = GeneratorSpec.profile("low", seed=1)
    inst = generate_instance(spec)
    assert (inst.n_points, inst.n_workers) == (240, 12)
    xmin, ymin, xmax, ymax = spec.bbox
    assert np.all((inst.xy >= [xmin, ymin]) & (inst.xy <= [xmax, ymax]))
    assert inst.depot == (2000.0, 2000.0)
    assert inst.name == "synthetic-uniform-240x12-s1"


def test_profiles():
    assert DAY_PROFILES == {"low": (240, 12), "average": (392, 12), "high": (628, 13)}


def test_clustered_points_near_their_centres():
    spec = GeneratorSpec(n_points=60, n_workers=3, distribution="clustered", n_clusters=3,
                         spread_m=50.0, seed=2)
    xy, _, centres = generate_points(spec)
    assert xy.shape == (60, 2) and centres.shape == (3, 2)
    nearest = np.min(np.linalg.norm(xy[:, None] - centres[None], axis=2), axis=1)
    assert np.all(nearest <= 5 * 50.0)  # 5 sigma in each coordinate is effectively certain


def test_deterministic():
    spec = GeneratorSpec(n_points=30, n_workers=3, distribution="clustered", seed=4)
    assert generate_instance(spec) == generate_instance(spec)
    assert generate_instance(spec) != generate_instance(GeneratorSpec(n_points=30, n_workers=3,
                                                                      distribution="clustered", seed=5))


def test_depot_placement():
    corner = generate_instance(GeneratorSpec(n_points=5, n_workers=1, depot_placement="corner"))
    assert corner.depot == (0.0, 0.0)
    rand = generate_instance(GeneratorSpec(n_points=5, n_workers=1, depot_placement="random", seed=3))
    assert 0 <= rand.depot[0] <= 4000 and 0 <= rand.depot[1] <= 4000


@pytest.mark.parametrize("bad", [
    {"n_points": 2, "n_workers": 3},
    {"n_workers": 0},
    {"distribution": "ring"},
    {"depot_placement": "north"},
    {"bbox": (0, 0, 0, 10)},
    {"distribution": "clustered", "n_clusters": 0},
])
def test_spec_validation(bad):
    with pytest.raises(InvalidParameterError):
        GeneratorSpec(**bad)
