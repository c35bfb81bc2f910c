import os

import numpy as np
import pytest

from prigraph.calc.graph import ElasticGraph, derive_primitive_stars


def pytest_collection_modifyitems(config, items):
    if os.environ.get('PRIGRAPH_NETWORK_TESTS') == '1':
        return
    skip = pytest.mark.skip(reason='set PRIGRAPH_NETWORK_TESTS=1 to run')
    for item in items:
        if 'network' in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240607))


@pytest.fixture
def make_path():
    """Factory for an n-node path along direction with unit spacing."""
    def make(n, lam=1.0, mu=1.0, direction=(1.0, 0.0), spacing=1.0):
        direction = np.asarray(direction, dtype=np.float64)
        nodes = np.outer(np.arange(n) * spacing, direction)
        edges = [(i, i + 1) for i in range(n - 1)]
        return derive_primitive_stars(
            ElasticGraph(nodes, edges, [lam] * len(edges)), mu)
    return make


@pytest.fixture
def make_random_tree():
    """Factory for a random tree with k nodes embedded in R^m."""
    def make(rng, k, m=2, scale=1.0):
        edges = [(int(rng.integers(i)), i) for i in range(1, k)]
        graph = ElasticGraph(rng.normal(scale=scale, size=(k, m)), edges,
                             rng.uniform(0.01, 1.0, size=len(edges)))
        graph = derive_primitive_stars(graph, 1.0)
        graph.stars = [s._replace(mu=float(rng.uniform(0.01, 1.0)))
                       for s in graph.stars]
        return graph
    return make


@pytest.fixture
def three_star():
    """Centre 0 at the origin, leaves 1, 2, 3."""
    nodes = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (-1.0, -1.0)]
    return derive_primitive_stars(
        ElasticGraph(nodes, [(0, 1), (0, 2), (0, 3)], [1.0, 1.0, 1.0]), 2.0)


IRIS = ''.join('{:.1f},{:.1f},{:.1f},{:.1f},Iris-{}\n'.format(
    5.0 + 0.1 * (i % 7), 3.0 + 0.1 * (i % 5), 1.4 + 0.2 * (i % 11), 0.2 + 0.1 * (i % 3),
    ('setosa', 'versicolor', 'virginica')[i % 3]) for i in range(150))

FIRES = 'X,Y,month,day,FFMC,DMC,DC,ISI,temp,RH,wind,rain,area\n' + ''.join(
    '{},{},mar,fri,86.{},26.{},94.{},5.{},8.{},51,6.{},0,{}\n'.format(
        i % 9 + 1, i % 8 + 1, i % 10, i % 7, i % 5, i % 4, i % 6, i % 3, float(i % 13))
    for i in range(20))


@pytest.fixture
def uci_payloads():
    """Small stand-ins for the UCI files, by file name."""
    return {'iris.data': IRIS, 'forestfires.csv': FIRES}


@pytest.fixture
def fake_download(monkeypatch, uci_payloads):
    """Serve uci_payloads instead of the network; returns the requested URLs."""
    from prigraph.data import uci

    calls = []

    def download(url, target):
        calls.append(url)
        os.makedirs(os.path.dirname(target), exist_ok=True)
        with open(target, 'w') as f:
            f.write(uci_payloads[os.path.basename(target)])

    monkeypatch.setattr(uci, 'download', download)
    return calls
