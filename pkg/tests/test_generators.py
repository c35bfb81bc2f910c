import math

import numpy as np
import pytest

from prigraph.data.generators import SHAPES, GeneratorSpec, generate, skeleton
from prigraph.errors import ConfigError


def test_linear_without_noise_is_collinear():
    data = generate(GeneratorSpec('linear', noise_sd=0.0, seed=1))
    values = np.linalg.eigvalsh(np.cov(data.points.T))
    assert values[0] == pytest.approx(0.0, abs=1e-15)
    assert values[1] > 0.1


def test_star_points_lie_on_rays():
    spec = GeneratorSpec('star', noise_sd=0.0, branches=3, seed=2)
    data = generate(spec)
    angles = np.arctan2(data.points[:, 1], data.points[:, 0])
    rays = math.pi / 2 + 2 * math.pi * np.arange(3) / 3
    offsets = np.abs(np.angle(np.exp(1j * (angles[:, None] - rays[None, :]))))
    assert np.all(offsets.min(axis=1) < 1e-9)
    assert np.all(np.linalg.norm(data.points, axis=1) <= 1.0 + 1e-12)
    assert sorted(set(data.labels.tolist())) == [0, 1, 2]
    np.testing.assert_allclose(offsets[np.arange(len(angles)), data.labels], 0.0, atol=1e-9)


def test_arc_projects_onto_a_line():
    data = generate(GeneratorSpec('arc', noise_sd=0.0, seed=3))
    np.testing.assert_allclose(np.linalg.norm(data.points, axis=1), 1.0)
    assert np.all(data.points[:, 1] >= 0.5 - 1e-12)


def test_treelike_skeleton():
    segments = skeleton(GeneratorSpec('treelike'))
    degree = {}
    for a, b in segments:
        for p in (tuple(a), tuple(b)):
            degree[p] = degree.get(p, 0) + 1
    assert sorted(d for d in degree.values() if d >= 3) == [3, 3, 4]


@pytest.mark.parametrize('shape', SHAPES)
def test_seeds_reproduce(shape):
    first = generate(GeneratorSpec(shape, n_points=50, seed=7))
    second = generate(GeneratorSpec(shape, n_points=50, seed=7))
    other = generate(GeneratorSpec(shape, n_points=50, seed=8))
    assert np.array_equal(first.points, second.points)
    assert not np.array_equal(first.points, other.points)
    assert first.points.shape == (50, 2)
    assert first.preprocessing['generator']['algorithm'] == 'PCG64'


@pytest.mark.parametrize('kwargs', [
    {'shape': 'spiral'},
    {'shape': 'linear', 'n_points': 5},
    {'shape': 'linear', 'noise_sd': -0.1},
    {'shape': 'star', 'branches': 0},
])
def test_bad_specs(kwargs):
    with pytest.raises(ConfigError):
        GeneratorSpec(**kwargs)


def test_arc_has_no_skeleton():
    with pytest.raises(ConfigError):
        skeleton(GeneratorSpec('arc'))
