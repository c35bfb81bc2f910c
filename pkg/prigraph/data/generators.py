# Copyright (C) 2024 The prigraph developers
#
# This file is part of prigraph.
#
# prigraph is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# prigraph is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with prigraph.  If not, see <http://www.gnu.org/licenses/>.

"""Synthetic 2-D test distributions.

Every shape is drawn on a skeleton of unit scale (branch length 1, arc
radius 1), sampled uniformly by arc length, and blurred by isotropic
Gaussian noise of standard deviation noise_sd. Randomness comes only from a
numpy Generator on the PCG64 bit generator seeded with spec.seed, so a spec
always gives the same points.
"""

import math
from dataclasses import dataclass

import numpy as np

from prigraph import constants
from prigraph.data.dataset import DataSet
from prigraph.errors import ConfigError

SHAPES = ('linear', 'arc', 'star', 'treelike')

# one 4-star (at B), two 3-stars (at C1 and C3) joined by a trunk
_B = (0.0, 1.0)
_C1, _C2, _C3 = (-0.8, 1.6), (0.0, 1.9), (0.8, 1.6)
TREELIKE = (
    ((0.0, 0.0), _B),
    (_B, _C1), (_B, _C2), (_B, _C3),
    (_C1, (-1.5, 1.7)), (_C1, (-1.0, 2.4)),
    (_C3, (1.5, 1.7)), (_C3, (1.0, 2.4)),
)


@dataclass(frozen=True)
class GeneratorSpec:
    shape: str
    n_points: int = 300
    noise_sd: float = 0.05
    branches: int = 3
    seed: int = 0

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ConfigError("unknown shape {!r}, expected one of {}".format(
                self.shape, ', '.join(SHAPES)))
        if self.n_points < 10:
            raise ConfigError("n_points must be at least 10")
        if not self.noise_sd >= 0:
            raise ConfigError("noise_sd must be non-negative")
        if self.shape == 'star' and self.branches < 1:
            raise ConfigError("a star needs at least one branch")


def skeleton(spec):
    """The segments the points of spec are drawn from (arc excepted)."""
    if spec.shape == 'linear':
        direction = np.array([math.cos(math.pi / 6), math.sin(math.pi / 6)])
        return [(-direction, direction)]
    if spec.shape == 'star':
        origin = np.zeros(2)
        angles = math.pi / 2 + 2 * math.pi * np.arange(spec.branches) / spec.branches
        return [(origin, np.array([math.cos(a), math.sin(a)])) for a in angles]
    if spec.shape == 'treelike':
        return [(np.array(a), np.array(b)) for a, b in TREELIKE]
    raise ConfigError("{} has no segment skeleton".format(spec.shape))


def generate(spec):
    """Draw the point cloud described by spec.

    Returns a DataSet whose labels give the skeleton segment (branch) each
    point was drawn from.
    """
    rng = np.random.Generator(getattr(np.random, constants.GENERATORALGORITHM)(spec.seed))
    n = spec.n_points

    if spec.shape == 'arc':
        # 120 degrees of the unit circle: x is monotone along the arc, so the
        # cloud projects orthogonally onto a line
        angles = rng.uniform(math.pi / 6, 5 * math.pi / 6, size=n)
        points = np.column_stack([np.cos(angles), np.sin(angles)])
        labels = np.zeros(n, dtype=np.int64)
    else:
        segments = skeleton(spec)
        starts = np.array([s for s, _ in segments])
        ends = np.array([e for _, e in segments])
        lengths = np.linalg.norm(ends - starts, axis=1)
        labels = rng.choice(len(segments), size=n, p=lengths / lengths.sum())
        t = rng.random(n)[:, None]
        points = starts[labels] + t * (ends[labels] - starts[labels])

    points = points + rng.normal(scale=spec.noise_sd, size=points.shape)
    record = {'generator': {'shape': spec.shape, 'n_points': n,
                            'noise_sd': spec.noise_sd, 'branches': spec.branches,
                            'seed': spec.seed,
                            'algorithm': constants.GENERATORALGORITHM}}
    return DataSet(points, ('x', 'y'), record, labels)
