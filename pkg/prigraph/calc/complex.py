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

"""Elastic cubic complexes: Cartesian products of elastic graphs.

The product of factors G_1..G_r has vertex set V_1 x ... x V_r, numbered
in row-major order of the index tuples. For every factor G_i and every
choice of the other coordinates there is one copy of G_i; the product's
edges and stars are the union over all copies, each with the modulus of
the factor edge or star it copies. Its energy is therefore the sum of the
energies of the copies.
"""

import itertools
import math
from dataclasses import dataclass

import numpy as np

from prigraph import constants
from prigraph.calc.energy import bending_energy, stretching_energy
from prigraph.calc.graph import ElasticGraph, Star, validate
from prigraph.errors import GraphError, NumericalError


@dataclass
class CubicComplex:
    factors: list
    product: ElasticGraph

    @property
    def shape(self):
        return tuple(f.n_nodes for f in self.factors)

    @property
    def dimension(self):
        """Intrinsic dimension r, the number of factors."""
        return len(self.factors)

    def vertex(self, index):
        """Product vertex of an index tuple (v_1, ..., v_r)."""
        return int(np.ravel_multi_index(tuple(index), self.shape))

    def copies(self, factor):
        """Yield, for every copy of the given factor, the product vertices of
        that copy in the factor's vertex order."""
        shape = self.shape
        others = [range(s) for j, s in enumerate(shape) if j != factor]
        for rest in itertools.product(*others):
            yield [_lift(rest, factor, v, shape) for v in range(shape[factor])]


def _lift(rest, factor, vertex, shape):
    index = list(rest)
    index.insert(factor, vertex)
    return int(np.ravel_multi_index(tuple(index), shape))


def sum_embedding(factors):
    """Place (v_1, ..., v_r) at the sum of the centred factor positions,
    shifted to the mean of the factor means. Segments on orthogonal
    directions give a regular grid."""
    dims = {f.dim for f in factors}
    if len(dims) != 1:
        raise GraphError("factors are embedded in different dimensions {}".format(
            sorted(dims)))
    means = [f.nodes.mean(axis=0) for f in factors]
    offset = np.mean(means, axis=0)
    positions = [offset + sum(f.nodes[v] - m for f, m, v in zip(factors, means, index))
                 for index in itertools.product(*(range(f.n_nodes) for f in factors))]
    return np.array(positions)


def cartesian_product(factors, initializer=sum_embedding):
    """Build the cubic complex G_1 x ... x G_r.

    Parameters
    ----------
    factors     : list of valid ElasticGraph
    initializer : function of the factor list returning the (prod |V_i|, m)
                  product embedding

    Returns
    -------
    CubicComplex
    """
    if not factors:
        raise GraphError("a cubic complex needs at least one factor")
    for factor in factors:
        validate(factor)

    shape = tuple(f.n_nodes for f in factors)
    edges, lambdas, stars = [], [], []
    for i, factor in enumerate(factors):
        others = [range(s) for j, s in enumerate(shape) if j != i]
        for rest in itertools.product(*others):
            for (a, b), lam in zip(factor.edges, factor.lambdas):
                edges.append((_lift(rest, i, a, shape), _lift(rest, i, b, shape)))
                lambdas.append(lam)
            for star in factor.stars:
                stars.append(Star(_lift(rest, i, star.center, shape),
                                  tuple(_lift(rest, i, l, shape) for l in star.leaves),
                                  star.mu))

    # interior lattice vertices carry one star per factor, not one star over
    # all their neighbours, so the product is not primitive in general
    primitive = len(factors) == 1 and factors[0].primitive
    product = ElasticGraph(initializer(factors), edges, lambdas, stars, primitive)
    return CubicComplex(list(factors), product)


def regrow_factor(complexObj, index, factor, initializer=sum_embedding):
    """Replace one factor (for example after a grammar step on it) and
    rebuild the product."""
    factors = list(complexObj.factors)
    factors[index] = factor
    return cartesian_product(factors, initializer)


def product_energy_check(complexObj):
    """U_E + U_R of the product, checked against the sum over factor copies.

    Raises NumericalError if the two differ by more than 1e-12 relative.
    """
    product = complexObj.product
    direct = stretching_energy(product) + bending_energy(product)

    terms = []
    for i, factor in enumerate(complexObj.factors):
        for vertices in complexObj.copies(i):
            copy = ElasticGraph(product.nodes[vertices], factor.edges,
                                factor.lambdas, factor.stars, factor.primitive)
            terms.append(stretching_energy(copy) + bending_energy(copy))
    copySum = math.fsum(terms)

    if abs(direct - copySum) > constants.PRODUCTTOL * max(abs(direct), abs(copySum)):
        raise NumericalError("product energy {!r} differs from the copy sum {!r}".format(
            direct, copySum))
    return direct
