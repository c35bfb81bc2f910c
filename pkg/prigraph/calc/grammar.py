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

"""Graph grammars for primitive elastic graphs.

A grammar is a set of operation kinds. Applying a kind at one site
(a vertex or an edge) gives a new primitive graph with the new node, if
any, placed so that the star it forms is pluriharmonic:

- add_node at v: new node z and edge (v, z); phi(z) = (k+1) phi(v) - sum of
  the k old neighbours of v, so that v is again the mean of its leaves
- add_terminal_node: add_node restricted to vertices of degree <= 1
- bisect_edge (v, w): z at the midpoint replaces the edge by (v, z), (z, w)
- remove_leaf v: v and its only edge are removed
- remove_edge (v, w): w is deleted and its other neighbours are attached
  to v, merging the two stars into one centred at v
- add_disconnected_node at v: a node with no edges placed at the point of
  v's partition cell farthest from v (needs the data)

Vertex indices are renumbered compactly after a deletion.
"""

import math
from dataclasses import dataclass

import numpy as np

from prigraph import constants
from prigraph.calc.energy import nearest_nodes
from prigraph.calc.graph import ElasticGraph, barcode, derive_primitive_stars
from prigraph.data.dataset import as_points
from prigraph.errors import ConfigError, GraphError

ADDNODE = 'add_node'
ADDTERMINALNODE = 'add_terminal_node'
BISECTEDGE = 'bisect_edge'
REMOVELEAF = 'remove_leaf'
REMOVEEDGE = 'remove_edge'
ADDDISCONNECTEDNODE = 'add_disconnected_node'

VERTEXRULES = (ADDNODE, ADDTERMINALNODE, REMOVELEAF, ADDDISCONNECTEDNODE)
EDGERULES = (BISECTEDGE, REMOVEEDGE)
GROWRULES = (ADDNODE, ADDTERMINALNODE, BISECTEDGE, ADDDISCONNECTEDNODE)

GRAMMARS = {
    'tree': (ADDNODE, BISECTEDGE),
    'curve': (ADDTERMINALNODE,),
    'shrink': (REMOVELEAF, REMOVEEDGE),
    'points': (ADDDISCONNECTEDNODE,),
}


@dataclass(frozen=True)
class GrammarOperation:
    """A rule kind and the vertex or (v, w) edge it is applied at."""
    kind: str
    site: object

    def __post_init__(self):
        if self.kind in VERTEXRULES:
            if not isinstance(self.site, (int, np.integer)):
                raise GraphError("{} applies to a vertex, got {!r}".format(
                    self.kind, self.site))
            object.__setattr__(self, 'site', int(self.site))
        elif self.kind in EDGERULES:
            if len(self.site) != 2:
                raise GraphError("{} applies to an edge, got {!r}".format(
                    self.kind, self.site))
            object.__setattr__(self, 'site', (int(self.site[0]), int(self.site[1])))
        else:
            raise GraphError("unknown grammar operation {!r}".format(self.kind))

    def __str__(self):
        if self.kind in EDGERULES:
            return '{}({},{})'.format(self.kind, *self.site)
        return '{}({})'.format(self.kind, self.site)


@dataclass
class CandidateTransformation:
    operation: GrammarOperation
    result: ElasticGraph
    permissible: bool
    complexity: float # SC(result)


@dataclass(frozen=True)
class StructuralPolicy:
    """Permissibility of a graph by structural complexity.

    node_count_bound: SC(G) = |V|, permissible if SC <= sc_max.
    branch_bound: SC(G) = |S_3| if |S_3| <= b_max and there is no k-star with
    k >= 4, otherwise infinity; permissible if finite (and |V| <= sc_max
    when sc_max is set).
    """
    kind: str = 'node_count_bound'
    sc_max: int = constants.MAXNODES
    b_max: int = constants.MAXBRANCHES

    def __post_init__(self):
        if self.kind not in ('node_count_bound', 'branch_bound'):
            raise ConfigError("unknown structural policy {!r}".format(self.kind))
        if (self.sc_max is not None and self.sc_max < 0) or self.b_max < 0:
            raise ConfigError("structural bounds must be non-negative")

    def complexity(self, graph):
        if self.kind == 'node_count_bound':
            return graph.n_nodes
        counts = barcode(graph).star_counts
        threes = counts[0] if counts else 0
        if threes <= self.b_max and sum(counts[1:]) == 0:
            return threes
        return math.inf

    def permits(self, graph):
        complexity = self.complexity(graph)
        withinNodes = self.sc_max is None or graph.n_nodes <= self.sc_max
        if self.kind == 'node_count_bound':
            return withinNodes
        return withinNodes and complexity != math.inf


def _rebuild(nodes, edges, lambdas, mu):
    result = ElasticGraph(nodes, edges, lambdas, [], True)
    return derive_primitive_stars(result, mu)


def _delete_vertex(nodes, edges, lambdas, vertex):
    """Drop vertex and its edges, renumbering the vertices above it."""
    keep = (edges[:, 0] != vertex) & (edges[:, 1] != vertex)
    edges = edges[keep]
    edges = edges - (edges > vertex)
    return np.delete(nodes, vertex, axis=0), edges, lambdas[keep]


def _check_vertex(graph, vertex):
    if not graph.topology().has_node(vertex):
        raise GraphError("no vertex {}".format(vertex))


def _check_edge(graph, edge):
    if not graph.topology().has_edge(*edge):
        raise GraphError("no edge ({}, {})".format(*edge))
    return graph.edge_index(*edge)


def apply_add_node(graph, vertex, lam=constants.DEFAULTLAMBDA,
                   mu=constants.DEFAULTMU):
    """Attach a new node z to vertex so that the star at vertex is
    pluriharmonic."""
    if graph.n_nodes < 2:
        raise GraphError("add_node needs a graph of at least 2 vertices")
    _check_vertex(graph, vertex)
    neighbours = graph.neighbors(vertex)
    k = len(neighbours)
    position = (k + 1) * graph.nodes[vertex] - graph.nodes[neighbours].sum(axis=0)

    z = graph.n_nodes
    nodes = np.vstack([graph.nodes, position])
    edges = np.vstack([graph.edges, [vertex, z]])
    lambdas = np.append(graph.lambdas, lam)
    return _rebuild(nodes, edges, lambdas, mu)


def apply_add_terminal_node(graph, vertex, lam=constants.DEFAULTLAMBDA,
                            mu=constants.DEFAULTMU):
    _check_vertex(graph, vertex)
    if graph.topology().degree(vertex) > 1:
        raise GraphError("vertex {} is not terminal".format(vertex))
    return apply_add_node(graph, vertex, lam, mu)


def apply_bisect_edge(graph, edge, lam=constants.DEFAULTLAMBDA,
                      mu=constants.DEFAULTMU):
    """Replace edge (v, w) by (v, z), (z, w) with z at the midpoint."""
    index = _check_edge(graph, edge)
    v, w = edge
    z = graph.n_nodes
    lamOld = graph.lambdas[index]

    nodes = np.vstack([graph.nodes, 0.5 * (graph.nodes[v] + graph.nodes[w])])
    edges = np.vstack([np.delete(graph.edges, index, axis=0), [[v, z], [z, w]]])
    lambdas = np.append(np.delete(graph.lambdas, index), [lamOld, lamOld])
    return _rebuild(nodes, edges, lambdas, mu)


def apply_remove_leaf(graph, vertex, lam=constants.DEFAULTLAMBDA,
                      mu=constants.DEFAULTMU):
    _check_vertex(graph, vertex)
    if graph.topology().degree(vertex) != 1:
        raise GraphError("vertex {} is not a leaf".format(vertex))
    nodes, edges, lambdas = _delete_vertex(graph.nodes, graph.edges,
                                           graph.lambdas, vertex)
    return _rebuild(nodes, edges, lambdas, mu)


def apply_remove_edge(graph, edge, lam=constants.DEFAULTLAMBDA,
                      mu=constants.DEFAULTMU):
    """Delete edge (v, w) and vertex w; w's other neighbours join v."""
    index = _check_edge(graph, edge)
    v, w = edge
    topology = graph.topology()
    if topology.degree(v) < 2 or topology.degree(w) < 2:
        raise GraphError("remove_edge needs two star centres, use remove_leaf "
                         "for a terminal vertex")

    edges = np.delete(graph.edges, index, axis=0)
    lambdas = np.delete(graph.lambdas, index)
    # reattach w's remaining edges to v, dropping any that would duplicate
    existing = set(topology.neighbors(v))
    keep = np.ones(len(edges), dtype=bool)
    for i, (a, b) in enumerate(edges):
        if w in (a, b):
            other = b if a == w else a
            if other in existing:
                keep[i] = False
            edges[i] = (v, other)
    nodes, edges, lambdas = _delete_vertex(graph.nodes, edges[keep],
                                           lambdas[keep], w)
    return _rebuild(nodes, edges, lambdas, mu)


def apply_add_disconnected_node(graph, vertex, data, lam=constants.DEFAULTLAMBDA,
                                mu=constants.DEFAULTMU):
    """Add an isolated node at the point of vertex's cell farthest from it."""
    _check_vertex(graph, vertex)
    points = as_points(data)
    assignment, squared = nearest_nodes(points, graph.nodes)
    cell = np.flatnonzero(assignment == vertex)
    if len(cell) == 0 or squared[cell].max() == 0:
        raise GraphError("cell of vertex {} cannot be split".format(vertex))
    farthest = cell[np.argmax(squared[cell])]

    nodes = np.vstack([graph.nodes, points[farthest]])
    return _rebuild(nodes, graph.edges.copy(), graph.lambdas.copy(), mu)


APPLY = {
    ADDNODE: apply_add_node,
    ADDTERMINALNODE: apply_add_terminal_node,
    BISECTEDGE: apply_bisect_edge,
    REMOVELEAF: apply_remove_leaf,
    REMOVEEDGE: apply_remove_edge,
}


def apply(graph, operation, data=None, lam=constants.DEFAULTLAMBDA,
          mu=constants.DEFAULTMU):
    """Apply a GrammarOperation to graph."""
    if operation.kind == ADDDISCONNECTEDNODE:
        if data is None:
            raise GraphError("add_disconnected_node needs the data")
        return apply_add_disconnected_node(graph, operation.site, data, lam, mu)
    return APPLY[operation.kind](graph, operation.site, lam, mu)


def grammar_kinds(grammar):
    """Operation kinds of a preset name or an iterable of kinds."""
    if isinstance(grammar, str):
        if grammar not in GRAMMARS:
            raise ConfigError("unknown grammar {!r}, expected one of {}".format(
                grammar, ', '.join(GRAMMARS)))
        return GRAMMARS[grammar]
    return tuple(grammar)


def sites(graph, kind):
    if kind in VERTEXRULES:
        return list(range(graph.n_nodes))
    pairs = [(int(a), int(b)) for a, b in graph.edges]
    if kind == REMOVEEDGE:
        # either endpoint may survive
        return [p for a, b in pairs for p in ((a, b), (b, a))]
    return pairs


def enumerate_candidates(graph, grammar, policy=None, data=None,
                         lam=constants.DEFAULTLAMBDA, mu=constants.DEFAULTMU):
    """Apply every rule of grammar at every site, in rule order then site
    order. Sites where a rule's precondition fails are skipped.

    Returns
    -------
    list of CandidateTransformation, permissible ones marked by policy
    """
    policy = policy or StructuralPolicy()
    candidates = []
    for kind in grammar_kinds(grammar):
        if kind == ADDDISCONNECTEDNODE and data is None:
            raise GraphError("add_disconnected_node needs the data")
        for site in sites(graph, kind):
            operation = GrammarOperation(kind, site)
            try:
                result = apply(graph, operation, data, lam, mu)
            except GraphError:
                # precondition not met at this site
                continue
            candidates.append(CandidateTransformation(
                operation, result, policy.permits(result),
                policy.complexity(result)))
    return candidates
