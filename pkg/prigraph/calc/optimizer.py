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

"""EM optimization of the embedding of an elastic graph.

For a fixed partition K_1..K_k of the data by nearest node, the energy
MSD + U_E + U_R is a quadratic function of the node positions Y and its
minimum solves

    sum_s a_js y_s = (1 / |X|) * sum of the points in K_j,
    a = diag(|K_j| / |X|) + e + s,

where e and s are the matrices of the stretching and bending penalties
(U_E = tr(Y^T e Y), U_R = tr(Y^T s Y)). An EM step partitions and solves;
fit() repeats the step until the nodes stop moving, once per stage of the
softening schedule.
"""

import logging
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from prigraph import constants
from prigraph.calc.energy import nearest_nodes, total_energy, checked_points
from prigraph.data.dataset import DataSet, diameter
from prigraph.errors import ConfigError, NumericalError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SystemMatrices:
    e: np.ndarray
    s: np.ndarray
    a: np.ndarray


@dataclass(frozen=True)
class Partition:
    assignment: np.ndarray # nearest node of every point
    counts: np.ndarray # |K_i| per node


class FitRecord(NamedTuple):
    stage: int
    iteration: int # 0 is the state before the first EM step of the stage
    energy: float # total energy under the stage's moduli


@dataclass(frozen=True)
class FitConfig:
    """Elasticity and convergence settings.

    Parameters
    ----------
    lambda_default  : stretching modulus of new edges
    mu_default      : bending modulus of new stars
    softening_steps : (lambda multiplier, mu multiplier) pairs, fitted in
                      order; mu multipliers must not increase
    max_iterations  : EM iterations per stage
    convergence_tol : stop when no node moves more than this fraction of the
                      data diameter
    ridge           : diagonal regularizer (times trace(a)/k) used when the
                      system is singular
    zero_lambda     : set every stretching modulus to 0 after the fit
    """
    lambda_default: float = constants.DEFAULTLAMBDA
    mu_default: float = constants.DEFAULTMU
    softening_steps: tuple = constants.SOFTENING
    max_iterations: int = constants.MAXITERATIONS
    convergence_tol: float = constants.CONVERGENCETOL
    ridge: float = constants.RIDGE
    zero_lambda: bool = False

    def __post_init__(self):
        steps = tuple((float(l), float(m)) for l, m in self.softening_steps)
        object.__setattr__(self, 'softening_steps', steps)
        if self.lambda_default < 0 or self.mu_default < 0:
            raise ConfigError("elastic moduli must be non-negative")
        if not steps:
            raise ConfigError("softening schedule needs at least one stage")
        if any(l < 0 or m < 0 for l, m in steps):
            raise ConfigError("softening multipliers must be non-negative")
        if any(m2 > m1 for (_, m1), (_, m2) in zip(steps, steps[1:])):
            raise ConfigError("softening mu multipliers must not increase")
        if self.max_iterations < 1:
            raise ConfigError("max_iterations must be at least 1")
        if not (self.convergence_tol > 0 and self.ridge > 0):
            raise ConfigError("convergence_tol and ridge must be positive")

    def single_stage(self, max_iterations):
        """The same moduli with no softening and an iteration cap."""
        return replace(self, softening_steps=((1.0, 1.0),),
                       max_iterations=max_iterations)


def build_star_matrix(graph, mu_scale=1.0):
    k = graph.n_nodes
    s = np.zeros((k, k))
    for star in graph.stars:
        mu = star.mu * mu_scale
        order = star.order
        leaves = np.array(star.leaves)
        s[star.center, star.center] += mu
        s[np.ix_(leaves, leaves)] += mu / order**2
        s[star.center, leaves] -= mu / order
        s[leaves, star.center] -= mu / order
    return s


def build_edge_matrix(graph, lam_scale=1.0):
    k = graph.n_nodes
    e = np.zeros((k, k))
    first, second = graph.edges[:, 0], graph.edges[:, 1]
    lam = graph.lambdas * lam_scale
    np.add.at(e, (first, first), lam)
    np.add.at(e, (second, second), lam)
    np.add.at(e, (first, second), -lam)
    np.add.at(e, (second, first), -lam)
    return e


def partition(data, graph):
    points = checked_points(data, graph)
    assignment, _ = nearest_nodes(points, graph.nodes)
    return Partition(assignment, np.bincount(assignment, minlength=graph.n_nodes))


def system_matrices(graph, part, n_points, lam_scale=1.0, mu_scale=1.0):
    e = build_edge_matrix(graph, lam_scale)
    s = build_star_matrix(graph, mu_scale)
    a = np.diag(part.counts / n_points) + e + s
    return SystemMatrices(e, s, a)


def _factorize(a, strict=True):
    """Cholesky factor of a, or None if a is singular. With strict, a tiny
    smallest pivot also counts as singular."""
    try:
        factor = cho_factor(a, lower=True)
    except LinAlgError:
        return None
    if strict:
        pivots = np.abs(np.diag(factor[0]))
        if pivots.min()**2 < constants.PIVOTRATIO * pivots.max()**2:
            return None
    return factor


def solve_positions(a, rhs, previous, ridge=constants.RIDGE):
    """Solve a Y = rhs for all m right-hand sides with one factorization.

    A singular a (for example a node with no points and no elastic links)
    gets ridge * trace(a) / k added to its diagonal, anchored at the previous
    positions, so that such a node keeps its place.
    """
    factor = _factorize(a)
    if factor is None:
        k = len(a)
        r = ridge * np.trace(a) / k
        logger.debug("singular EM system, adding ridge %g", r)
        factor = _factorize(a + r * np.eye(k), strict=False)
        if factor is None or r <= 0:
            raise NumericalError("singular EM system after ridge regularization")
        rhs = rhs + r * previous
    nodes = cho_solve(factor, rhs)
    if not np.all(np.isfinite(nodes)):
        raise NumericalError("EM solve produced non-finite node positions")
    return nodes


def em_step(data, graph, lam_scale=1.0, mu_scale=1.0, ridge=constants.RIDGE):
    """One partition-and-solve iteration; returns the moved graph."""
    points = checked_points(data, graph)
    part = partition(points, graph)
    matrices = system_matrices(graph, part, len(points), lam_scale, mu_scale)

    # right-hand side: per-node sums of the assigned points over |X|
    rhs = np.zeros_like(graph.nodes)
    np.add.at(rhs, part.assignment, points)
    rhs /= len(points)

    return graph.with_nodes(solve_positions(matrices.a, rhs, graph.nodes, ridge))


def scaled_moduli(graph, lam_scale, mu_scale):
    graph = graph.copy()
    graph.lambdas = graph.lambdas * lam_scale
    graph.stars = [s._replace(mu=s.mu * mu_scale) for s in graph.stars]
    return graph


def fit(data, graph, config=None, history=None):
    """Iterate em_step to convergence for every softening stage.

    Parameters
    ----------
    data    : DataSet or (n, m) array
    graph   : the ElasticGraph to place
    config  : FitConfig, defaults if None
    history : optional list; receives a FitRecord per iteration

    Returns
    -------
    the graph at its new positions, with its own (unscaled) moduli
    """
    config = config or FitConfig()
    points = checked_points(data, graph)
    if isinstance(data, DataSet):
        scale = data.diameter
    else:
        scale = diameter(points)
    tolerance = config.convergence_tol * scale

    current = graph
    for stage, (lamScale, muScale) in enumerate(config.softening_steps):
        if history is not None:
            energy = total_energy(points, scaled_moduli(current, lamScale, muScale))
            history.append(FitRecord(stage, 0, energy.total))
        for iteration in range(1, config.max_iterations + 1):
            moved = em_step(points, current, lamScale, muScale, config.ridge)
            shift = np.max(np.linalg.norm(moved.nodes - current.nodes, axis=1))
            current = moved
            if history is not None:
                energy = total_energy(points, scaled_moduli(current, lamScale, muScale))
                history.append(FitRecord(stage, iteration, energy.total))
            if shift < tolerance:
                break
        logger.debug("stage %d (lambda x%g, mu x%g): %d iteration(s), last shift %g",
                     stage, lamScale, muScale, iteration, shift)

    if config.zero_lambda:
        current = current.with_moduli(lam=0.0)
    return current
