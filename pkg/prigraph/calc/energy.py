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

"""Energy functionals and accuracy measures of an embedded elastic graph.

Sums over points, edges and stars use math.fsum so that the result does
not depend on the summation order.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from prigraph import constants
from prigraph.data.dataset import DataSet, as_points, diameter
from prigraph.errors import DataError


@dataclass(frozen=True)
class EnergyBreakdown:
    stretching: float # U_E
    bending: float # U_R
    msd: float # nearest-node mean squared distance
    total: float # msd + U_E + U_R


@dataclass(frozen=True)
class AccuracyReport:
    fve_node: float
    fve_polyline: float
    total_variance: float


def checked_points(data, graph):
    points = as_points(data)
    if points.shape[0] == 0:
        raise DataError("empty dataset")
    if points.shape[1] != graph.dim:
        raise DataError("data dimension {} does not match graph dimension {}".format(
            points.shape[1], graph.dim))
    return points


def edge_lengths_squared(graph):
    diff = graph.nodes[graph.edges[:, 0]] - graph.nodes[graph.edges[:, 1]]
    return np.sum(diff**2, axis=1)


def star_deviations(graph):
    """(S, m) array: each star's centre minus the mean of its leaves."""
    if not graph.stars:
        return np.zeros((0, graph.dim))
    return np.array([graph.nodes[s.center] - graph.nodes[list(s.leaves)].mean(axis=0)
                     for s in graph.stars])


def stretching_energy(graph):
    """U_E = sum_i lambda_i |phi(E_i(0)) - phi(E_i(1))|^2"""
    return math.fsum(graph.lambdas * edge_lengths_squared(graph))


def bending_energy(graph, mu=None):
    """U_R = sum_j mu_j |phi(S_j(0)) - mean of phi over the leaves of S_j|^2

    If mu is given it replaces every star's own modulus.
    """
    if not graph.stars:
        return 0.0
    if mu is None:
        moduli = np.array([s.mu for s in graph.stars])
    else:
        moduli = np.full(len(graph.stars), float(mu))
    return math.fsum(moduli * np.sum(star_deviations(graph)**2, axis=1))


def is_pluriharmonic(graph, tol=1e-12, data=None):
    """True if every star centre lies at the mean of its leaves, within tol
    times the diameter of data.

    Without data the diameter of the embedded vertex set stands in; when
    that is 0 (all vertices coincide) tol is an absolute tolerance.
    """
    if not graph.stars:
        return True
    if data is not None:
        scale = data.diameter if isinstance(data, DataSet) else diameter(as_points(data))
    else:
        scale = diameter(graph.nodes)
    if scale == 0:
        scale = 1.0
    offsets = np.sqrt(np.sum(star_deviations(graph)**2, axis=1))
    return bool(np.all(offsets <= tol * scale))


def nearest_nodes(points, nodes):
    """Index of the closest node of every point (lowest index on ties) and
    the squared distance to it."""
    squared = cdist(points, nodes, 'sqeuclidean')
    index = np.argmin(squared, axis=1)
    return index, squared[np.arange(len(points)), index]


def distances_to_nodes(data, graph):
    return nearest_nodes(checked_points(data, graph), graph.nodes)[1]


def distances_to_polyline(data, graph):
    """Squared distance of each point to the union of the vertices and the
    edge segments of the graph."""
    points = checked_points(data, graph)
    best = nearest_nodes(points, graph.nodes)[1]
    for a, b in graph.edges:
        start = graph.nodes[a]
        direction = graph.nodes[b] - start
        length2 = direction @ direction
        if length2 == 0:
            continue
        # parameter of the perpendicular foot, clamped to the segment
        t = np.clip((points - start) @ direction / length2, 0.0, 1.0)
        contact = start + t[:, None] * direction
        best = np.minimum(best, np.sum((points - contact)**2, axis=1))
    return best


def msd_nearest_node(data, graph):
    return math.fsum(distances_to_nodes(data, graph)) / len(as_points(data))


def msd_polyline(data, graph):
    return math.fsum(distances_to_polyline(data, graph)) / len(as_points(data))


def total_energy(data, graph):
    """U(X, G) = MSD(X, G) + U_E + U_R with the nearest-node MSD."""
    msd = msd_nearest_node(data, graph)
    stretching = stretching_energy(graph)
    bending = bending_energy(graph)
    return EnergyBreakdown(stretching, bending, msd, msd + stretching + bending)


def total_variance(data):
    points = as_points(data)
    if isinstance(data, DataSet):
        variance = data.variance
    else:
        variance = float(np.mean(np.sum((points - points.mean(axis=0))**2, axis=1)))
    if len(points) < 2 or variance <= 0:
        raise DataError("fraction of variance explained needs at least 2 points "
                        "with nonzero variance")
    return variance


def fve(data, graph):
    """Fraction of variance explained, 1 - MSE / variance, with the MSE
    measured to the nearest node and to the graph as a polyline."""
    variance = total_variance(data)
    return AccuracyReport(1.0 - msd_nearest_node(data, graph) / variance,
                          1.0 - msd_polyline(data, graph) / variance,
                          variance)


def geometrical_complexity(graph):
    """GC = N_nodes^2 * U_R with every bending modulus set to 1."""
    return graph.n_nodes**2 * bending_energy(graph, mu=constants.COMPLEXITYMU)
