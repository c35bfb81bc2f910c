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

"""Elastic graph data model.

An elastic graph is a simple undirected graph whose edges carry stretching
moduli (lambda) and whose selected k-stars carry bending moduli (mu),
together with an embedding of its vertices in R^m. Vertices are dense
integer indices 0..k-1; row i of `nodes` is the position of vertex i.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import NamedTuple

import networkx as nx
import numpy as np

from prigraph.errors import GraphError

logger = logging.getLogger(__name__)


class Star(NamedTuple):
    """A k-star: central vertex, ordered leaves and its bending modulus."""
    center: int
    leaves: tuple
    mu: float

    @property
    def order(self):
        return len(self.leaves)


@dataclass
class ElasticGraph:
    """Vertices, weighted edges, weighted stars and the embedding map.

    Parameters
    ----------
    nodes     : (k, m) array of vertex coordinates
    edges     : (E, 2) integer array of endpoint pairs
    lambdas   : (E,) array of stretching moduli, one per edge
    stars     : list of Star
    primitive : whether the star list is the full neighbourhood of every
                vertex of degree >= 2
    """
    nodes: np.ndarray
    edges: np.ndarray = None
    lambdas: np.ndarray = None
    stars: list = field(default_factory=list)
    primitive: bool = True

    def __post_init__(self):
        self.nodes = np.array(self.nodes, dtype=np.float64, ndmin=2)
        if self.edges is None:
            self.edges = np.zeros((0, 2), dtype=np.int64)
        self.edges = np.array(self.edges, dtype=np.int64).reshape(-1, 2)
        if self.lambdas is None:
            self.lambdas = np.zeros(len(self.edges))
        self.lambdas = np.array(self.lambdas, dtype=np.float64).reshape(-1)
        self.stars = [Star(int(s[0]), tuple(int(l) for l in s[1]), float(s[2]))
                      for s in self.stars]

    @property
    def n_nodes(self):
        return self.nodes.shape[0]

    @property
    def dim(self):
        return self.nodes.shape[1]

    @property
    def n_edges(self):
        return self.edges.shape[0]

    def copy(self):
        return ElasticGraph(self.nodes.copy(), self.edges.copy(),
                            self.lambdas.copy(), list(self.stars),
                            self.primitive)

    def with_nodes(self, nodes):
        """Return a copy of this graph placed at the new positions."""
        nodes = np.array(nodes, dtype=np.float64, ndmin=2)
        if nodes.shape != self.nodes.shape:
            raise GraphError("new positions have shape {}, expected {}".format(
                nodes.shape, self.nodes.shape))
        graph = self.copy()
        graph.nodes = nodes
        return graph

    def with_moduli(self, lam=None, mu=None):
        """Return a copy with every edge modulus set to lam and every star
        modulus set to mu (None leaves that family untouched)."""
        graph = self.copy()
        if lam is not None:
            graph.lambdas = np.full(self.n_edges, float(lam))
        if mu is not None:
            graph.stars = [s._replace(mu=float(mu)) for s in self.stars]
        return graph

    def topology(self):
        """The abstract graph as a networkx Graph on vertices 0..k-1, with
        the stretching modulus as edge attribute 'lam'."""
        topology = nx.Graph()
        topology.add_nodes_from(range(self.n_nodes))
        topology.add_edges_from((int(a), int(b), {'lam': float(lam)})
                                for (a, b), lam in zip(self.edges, self.lambdas))
        return topology

    def degrees(self):
        topology = self.topology()
        return np.array([topology.degree(v) for v in range(self.n_nodes)],
                        dtype=np.int64)

    def adjacency(self):
        """List of sorted neighbour lists, one per vertex."""
        topology = self.topology()
        return [sorted(topology.neighbors(v)) for v in range(self.n_nodes)]

    def neighbors(self, vertex):
        return sorted(self.topology().neighbors(vertex))

    def edge_index(self, v, w):
        """Row of the edge {v, w} in `edges`, or None."""
        hits = np.flatnonzero(((self.edges[:, 0] == v) & (self.edges[:, 1] == w)) |
                              ((self.edges[:, 0] == w) & (self.edges[:, 1] == v)))
        return int(hits[0]) if len(hits) else None

    def is_tree(self):
        """True if the graph is connected and acyclic."""
        return self.n_nodes > 0 and nx.is_tree(self.topology())

    def to_dict(self):
        return {
            'dimension': self.dim,
            'nodes': self.nodes.tolist(),
            'edges': [[int(a), int(b), float(lam)]
                      for (a, b), lam in zip(self.edges, self.lambdas)],
            'stars': [{'center': s.center, 'leaves': list(s.leaves), 'mu': s.mu}
                      for s in self.stars],
            'primitive': self.primitive,
        }

    @classmethod
    def from_dict(cls, doc):
        try:
            dim = int(doc['dimension'])
            nodes = np.array(doc['nodes'], dtype=np.float64).reshape(-1, dim)
            edges = [(e[0], e[1]) for e in doc.get('edges', [])]
            lambdas = [e[2] for e in doc.get('edges', [])]
            stars = [(s['center'], s['leaves'], s['mu'])
                     for s in doc.get('stars', [])]
            primitive = bool(doc.get('primitive', True))
        except (KeyError, TypeError, ValueError, IndexError) as err:
            raise GraphError("malformed graph document: {}".format(err))
        return cls(nodes, edges, lambdas, stars, primitive)


@dataclass(frozen=True)
class Barcode:
    """Structural complexity barcode N_k|...|N_4|N_3||N_nodes.

    star_counts holds (N_3, N_4, ..., N_kmax) in increasing order of k, with
    no trailing zero at the kmax end.
    """
    star_counts: tuple
    node_count: int

    def __post_init__(self):
        counts = [int(c) for c in self.star_counts]
        while counts and counts[-1] == 0:
            counts.pop()
        object.__setattr__(self, 'star_counts', tuple(counts))

    @property
    def stars_label(self):
        """The star-count part only, as shown above the plot lines."""
        if not self.star_counts:
            return '0'
        return '|'.join(str(c) for c in reversed(self.star_counts))

    @property
    def n_branching(self):
        return sum(self.star_counts)

    def __str__(self):
        return '{}||{}'.format(self.stars_label, self.node_count)

    @classmethod
    def parse(cls, text):
        try:
            stars, nodes = text.strip().split('||')
            counts = [int(c) for c in stars.split('|')]
            return cls(tuple(reversed(counts)), int(nodes))
        except ValueError:
            raise GraphError("not a barcode: {!r}".format(text))


def validate(graph):
    """Check every ElasticGraph invariant, raising GraphError on the first
    violation found."""

    k = graph.n_nodes
    if graph.nodes.ndim != 2 or k < 1 or graph.dim < 1:
        raise GraphError("graph needs at least one vertex in R^m, m >= 1")
    if not np.all(np.isfinite(graph.nodes)):
        raise GraphError("non-finite vertex coordinates")

    # edges
    if len(graph.lambdas) != graph.n_edges:
        raise GraphError("{} edges but {} stretching moduli".format(
            graph.n_edges, len(graph.lambdas)))
    seen = set()
    for i, (a, b) in enumerate(graph.edges):
        if not (0 <= a < k and 0 <= b < k):
            raise GraphError("edge {} ({}, {}) references a missing vertex".format(
                i, a, b))
        if a == b:
            raise GraphError("edge {} is a loop at vertex {}".format(i, a))
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphError("duplicate edge ({}, {})".format(*key))
        seen.add(key)
    if np.any(graph.lambdas < 0):
        raise GraphError("negative stretching modulus")

    # stars
    adjacent = graph.adjacency()
    for star in graph.stars:
        if not 0 <= star.center < k:
            raise GraphError("star centre {} is not a vertex".format(star.center))
        if len(star.leaves) < 2:
            raise GraphError("star at {} has fewer than 2 leaves".format(
                star.center))
        if len(set(star.leaves)) != len(star.leaves) or star.center in star.leaves:
            raise GraphError("star at {} has repeated leaves".format(star.center))
        for leaf in star.leaves:
            if leaf not in adjacent[star.center]:
                raise GraphError("star leaf {} is not a neighbour of {}".format(
                    leaf, star.center))
        if star.mu < 0:
            raise GraphError("negative bending modulus at star {}".format(
                star.center))

    if graph.primitive:
        centers = [s.center for s in graph.stars]
        for v, neighbours in enumerate(adjacent):
            if len(neighbours) < 2:
                continue
            own = [s for s in graph.stars if s.center == v]
            if len(own) != 1 or sorted(own[0].leaves) != neighbours:
                raise GraphError(
                    "primitive graph: vertex {} needs one star over all of "
                    "its {} neighbours".format(v, len(neighbours)))
        if len(centers) != len(set(centers)):
            raise GraphError("primitive graph has two stars at one centre")


def derive_primitive_stars(graph, mu):
    """Return a copy of graph whose stars are exactly one k-star, with
    modulus mu, at every vertex of degree k >= 2."""
    stars = [Star(v, tuple(neighbours), float(mu))
             for v, neighbours in enumerate(graph.adjacency())
             if len(neighbours) >= 2]
    result = graph.copy()
    result.stars = stars
    result.primitive = True
    return result


def barcode(graph):
    """Count k-stars for k >= 3 by order. Ribs and edges are not shown."""
    orders = [s.order for s in graph.stars if s.order >= 3]
    counts = np.bincount(orders, minlength=3)[3:] if orders else ()
    return Barcode(tuple(int(c) for c in counts), graph.n_nodes)


def write_graph(graph, path):
    with open(path, 'w') as graphFile:
        json.dump(graph.to_dict(), graphFile, indent=4)


def read_graph(path):
    try:
        with open(path, 'r') as graphFile:
            doc = json.load(graphFile)
    except (OSError, ValueError) as err:
        raise GraphError("cannot read graph file {}: {}".format(path, err))
    graph = ElasticGraph.from_dict(doc)
    validate(graph)
    return graph
