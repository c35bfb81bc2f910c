import logging

import numpy as np
import pytest

from prigraph.data.dataset import (DataSet, diameter, load_csv, principal_axes,
                                   standardize, unstandardize, write_csv)
from prigraph.errors import DataError


def test_load_numeric_csv(tmp_path):
    source = tmp_path / 'numbers.csv'
    source.write_text('a,b,c\n' + '\n'.join('{0},{1},{2}'.format(i, i * i, -i)
                                             for i in range(5)) + '\n')
    data = load_csv(source)
    assert data.points.shape == (5, 3)
    assert data.column_names == ('a', 'b', 'c')
    assert data.preprocessing['dropped_rows'] == 0


def test_non_numeric_columns_are_dropped(tmp_path, caplog):
    source = tmp_path / 'mixed.csv'
    source.write_text('x,kind,y\n1,a,2\n3,b,4\n5,c,6\n')
    with caplog.at_level(logging.INFO, logger='prigraph'):
        data = load_csv(source)
    assert data.column_names == ('x', 'y')
    assert 'kind' in caplog.text


def test_selected_columns(tmp_path):
    source = tmp_path / 'mixed.csv'
    source.write_text('x,kind,y\n1,a,2\n3,b,4\n5,c,?\n')
    data = load_csv(source, columns=['y'])
    assert data.points.tolist() == [[2.0], [4.0]]
    assert data.preprocessing['dropped_rows'] == 1
    with pytest.raises(DataError):
        load_csv(source, columns=['z'])


def test_header_less_file(tmp_path):
    source = tmp_path / 'plain.data'
    source.write_text('1,2,x\n3,4,y\n')
    data = load_csv(source, names=['p', 'q', 'label'])
    assert data.column_names == ('p', 'q')


@pytest.mark.parametrize('text', ['name\nfoo\nbar\n', 'x\n1\n', ''])
def test_unusable_files(tmp_path, text):
    source = tmp_path / 'bad.csv'
    source.write_text(text)
    with pytest.raises(DataError):
        load_csv(source)


def test_missing_file(tmp_path):
    with pytest.raises(DataError):
        load_csv(tmp_path / 'nothing.csv')


def test_csv_round_trip(tmp_path, rng):
    data = DataSet(rng.normal(size=(20, 3)) * 1e3, ('u', 'v', 'w'))
    target = tmp_path / 'out.csv'
    write_csv(data, target)
    loaded = load_csv(target)
    assert np.array_equal(loaded.points, data.points)
    assert loaded.column_names == data.column_names


def test_standardize(rng):
    data = DataSet(rng.normal(loc=5.0, scale=3.0, size=(50, 2)))
    scaled = standardize(data)
    np.testing.assert_allclose(scaled.points.mean(axis=0), 0.0, atol=1e-12)
    np.testing.assert_allclose(scaled.points.std(axis=0), 1.0, rtol=1e-12)
    np.testing.assert_allclose(unstandardize(scaled).points, data.points, rtol=1e-10)


def test_standardize_is_idempotent(rng):
    data = DataSet(rng.normal(loc=-2.0, scale=0.5, size=(40, 3)))
    once = standardize(data)
    twice = standardize(once)
    np.testing.assert_allclose(twice.points, once.points, atol=1e-12)
    np.testing.assert_allclose(unstandardize(twice).points, data.points, rtol=1e-10)
    for key in ('center', 'scale'):
        np.testing.assert_allclose(twice.preprocessing['standardize'][key],
                                   once.preprocessing['standardize'][key], rtol=1e-12)


def test_standardize_drops_constant_columns(caplog):
    data = DataSet([(1.0, 7.0), (2.0, 7.0), (3.0, 7.0)], ('a', 'b'))
    with caplog.at_level(logging.WARNING, logger='prigraph'):
        scaled = standardize(data)
    assert scaled.column_names == ('a',)
    assert 'b' in caplog.text
    with pytest.raises(DataError):
        standardize(DataSet([(1.0,), (1.0,)]))
    with pytest.raises(DataError):
        unstandardize(data)


def test_dataset_properties():
    data = DataSet([(0.0, 0.0), (3.0, 4.0), (0.0, 4.0)])
    assert data.n == 3 and data.dim == 2
    assert data.column_names == ('x1', 'x2')
    assert data.diameter == pytest.approx(5.0)
    assert diameter(data.points, chunk=1) == pytest.approx(5.0)
    with pytest.raises(DataError):
        DataSet([(0.0, 0.0)], ('a',))


def test_principal_axes_signs(rng):
    points = rng.normal(size=(200, 2)) * (4.0, 1.0)
    center, axes = principal_axes(-points, 2)
    assert axes[0][np.argmax(np.abs(axes[0]))] > 0
    assert abs(axes[0][0]) > 0.99
    np.testing.assert_allclose(axes @ axes.T, np.eye(2), atol=1e-12)
