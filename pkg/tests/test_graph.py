import json

import networkx as nx
import numpy as np
import pytest

from prigraph.calc.graph import (Barcode, ElasticGraph, Star, barcode,
                                 derive_primitive_stars, read_graph, validate,
                                 write_graph)
from prigraph.errors import GraphError


def test_barcode_rendering():
    assert str(Barcode((6, 2), 15)) == '2|6||15'
    assert str(Barcode((), 10)) == '0||10'
    assert str(Barcode((0, 0), 4)) == '0||4'
    assert str(Barcode((0, 1), 5)) == '1|0||5'


def test_barcode_parse():
    assert Barcode.parse('2|6||15') == Barcode((6, 2), 15)
    assert Barcode.parse('0||3') == Barcode((), 3)
    assert Barcode.parse('1||4').n_branching == 1
    with pytest.raises(GraphError):
        Barcode.parse('four nodes')


def test_barcode_of_graphs(three_star, make_path):
    assert str(barcode(three_star)) == '1||4'
    assert str(barcode(make_path(3))) == '0||3'
    assert str(barcode(make_path(2))) == '0||2'
    assert barcode(three_star).stars_label == '1'


def test_derived_stars(make_path):
    path = make_path(4, mu=0.5)
    assert [s.center for s in path.stars] == [1, 2]
    assert path.stars[0] == Star(1, (0, 2), 0.5)
    validate(path)


def test_validate_accepts_edgeless_graph():
    validate(ElasticGraph([(0.0, 0.0), (1.0, 1.0)]))


@pytest.mark.parametrize('edges, lambdas', [
    ([(0, 5)], [1.0]),
    ([(1, 1)], [1.0]),
    ([(0, 1), (1, 0)], [1.0, 1.0]),
    ([(0, 1)], [1.0, 2.0]),
    ([(0, 1)], [-1.0]),
])
def test_validate_rejects_bad_edges(edges, lambdas):
    graph = ElasticGraph(np.zeros((3, 2)), edges, lambdas, primitive=False)
    with pytest.raises(GraphError):
        validate(graph)


def test_validate_rejects_bad_stars(make_path):
    path = make_path(3)
    for star in [Star(1, (0,), 1.0), Star(1, (0, 0), 1.0), Star(0, (1, 2), 1.0),
                 Star(1, (0, 2), -1.0)]:
        broken = path.copy()
        broken.stars = [star]
        broken.primitive = False
        with pytest.raises(GraphError):
            validate(broken)


def test_validate_primitive_needs_full_stars(make_path):
    path = make_path(3)
    path.stars = []
    with pytest.raises(GraphError):
        validate(path)
    path.primitive = False
    validate(path)


def test_tree_check(make_path, three_star):
    assert make_path(5).is_tree()
    assert three_star.is_tree()
    cycle = ElasticGraph(np.zeros((3, 2)), [(0, 1), (1, 2), (2, 0)], [1, 1, 1])
    assert not cycle.is_tree()
    assert not ElasticGraph(np.zeros((3, 2)), [(0, 1)], [1]).is_tree()


def test_topology(three_star):
    topology = three_star.topology()
    assert sorted(topology.nodes) == [0, 1, 2, 3]
    assert topology.number_of_edges() == 3
    assert nx.is_tree(topology)
    assert topology.edges[0, 3]['lam'] == 1.0
    assert dict(topology.degree) == {0: 3, 1: 1, 2: 1, 3: 1}


def test_derive_primitive_stars_is_idempotent(rng, make_random_tree):
    for k in (2, 5, 12):
        once = derive_primitive_stars(make_random_tree(rng, k), 0.7)
        twice = derive_primitive_stars(once, 0.7)
        assert twice.stars == once.stars
        assert twice.primitive
        np.testing.assert_array_equal(twice.edges, once.edges)
        validate(twice)


def test_neighbours_and_edges(three_star):
    assert three_star.neighbors(0) == [1, 2, 3]
    assert list(three_star.degrees()) == [3, 1, 1, 1]
    assert three_star.edge_index(2, 0) == 1
    assert three_star.edge_index(1, 2) is None


def test_with_moduli(three_star):
    stiff = three_star.with_moduli(lam=5.0, mu=3.0)
    assert np.all(stiff.lambdas == 5.0)
    assert [s.mu for s in stiff.stars] == [3.0]
    assert [s.mu for s in three_star.stars] == [2.0]


def test_with_nodes_checks_shape(three_star):
    with pytest.raises(GraphError):
        three_star.with_nodes(np.zeros((3, 2)))


def test_graph_file(tmp_path, three_star):
    target = tmp_path / 'star.json'
    write_graph(three_star, target)
    loaded = read_graph(target)
    np.testing.assert_array_equal(loaded.nodes, three_star.nodes)
    np.testing.assert_array_equal(loaded.edges, three_star.edges)
    assert loaded.stars == three_star.stars
    assert loaded.primitive


def test_read_graph_errors(tmp_path):
    bad = tmp_path / 'bad.json'
    bad.write_text('{"nodes": [[0, 0]]}')
    with pytest.raises(GraphError):
        read_graph(bad)
    with pytest.raises(GraphError):
        read_graph(tmp_path / 'missing.json')


def test_read_graph_validates(tmp_path, make_path):
    doc = make_path(3).to_dict()
    doc['stars'] = []
    bad = tmp_path / 'unstarred.json'
    bad.write_text(json.dumps(doc))
    with pytest.raises(GraphError):
        read_graph(bad)


def test_primitive_stars_follow_structure():
    graph = ElasticGraph(np.zeros((5, 2)), [(0, 1), (0, 2), (0, 3), (3, 4)],
                         [1, 1, 1, 1])
    stars = derive_primitive_stars(graph, 0.3).stars
    assert stars == [Star(0, (1, 2, 3), 0.3), Star(3, (0, 4), 0.3)]
