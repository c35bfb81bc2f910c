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

"""Datasets: ingestion from CSV, standardization and CSV output."""

import logging
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist

from prigraph import constants
from prigraph.errors import DataError

logger = logging.getLogger(__name__)


@dataclass
class DataSet:
    """n points in R^m.

    Parameters
    ----------
    points        : (n, m) float array
    column_names  : one label per coordinate
    preprocessing : record of the transforms applied so far
    labels        : optional ground-truth label per point (synthetic data)
    """
    points: np.ndarray
    column_names: tuple = None
    preprocessing: dict = field(default_factory=dict)
    labels: np.ndarray = None

    def __post_init__(self):
        self.points = np.array(self.points, dtype=np.float64, ndmin=2)
        if self.column_names is None:
            self.column_names = tuple('x{}'.format(i + 1)
                                      for i in range(self.points.shape[1]))
        self.column_names = tuple(str(c) for c in self.column_names)
        if len(self.column_names) != self.points.shape[1]:
            raise DataError("{} column names for {} columns".format(
                len(self.column_names), self.points.shape[1]))

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    @cached_property
    def mean(self):
        return self.points.mean(axis=0)

    @cached_property
    def variance(self):
        """Mean squared distance of the points to their mean (divide by n)."""
        return float(np.mean(np.sum((self.points - self.mean)**2, axis=1)))

    @cached_property
    def diameter(self):
        """Largest distance between two points."""
        return diameter(self.points)


def diameter(points, chunk=1024):
    """Largest pairwise distance, computed in row blocks to bound memory."""
    points = np.asarray(points, dtype=np.float64)
    if len(points) < 2:
        return 0.0
    largest = 0.0
    for start in range(0, len(points), chunk):
        block = cdist(points[start:start + chunk], points, 'sqeuclidean')
        largest = max(largest, float(block.max()))
    return float(np.sqrt(largest))


def as_points(data):
    """The coordinate matrix of a DataSet or array-like."""
    if isinstance(data, DataSet):
        return data.points
    return np.array(data, dtype=np.float64, ndmin=2)


def load_csv(path, columns=None, names=None):
    """Read a comma separated file into a DataSet.

    Parameters
    ----------
    path    : file name
    columns : optional list of column names to keep; these are coerced to
              numbers. Without it every numeric column is kept and the
              others are dropped.
    names   : column names for files without a header row

    Returns
    -------
    the DataSet; rows with missing values are dropped and counted.
    """
    try:
        frame = pd.read_csv(path, header=None if names else 'infer',
                            names=names, float_precision='round_trip')
    except (OSError, UnicodeDecodeError, pd.errors.ParserError,
            pd.errors.EmptyDataError) as err:
        raise DataError("cannot read {}: {}".format(path, err))
    frame.columns = [str(c).strip() for c in frame.columns]

    if columns:
        missing = [c for c in columns if c not in frame.columns]
        if missing:
            raise DataError("{}: no column(s) {}".format(path, ', '.join(missing)))
        frame = frame[list(columns)].apply(pd.to_numeric, errors='coerce')
    else:
        numeric = frame.select_dtypes(include='number')
        dropped = [c for c in frame.columns if c not in numeric.columns]
        if dropped:
            logger.info("%s: dropping non-numeric column(s) %s",
                        path, ', '.join(dropped))
        frame = numeric

    if frame.shape[1] == 0:
        raise DataError("{}: no numeric columns".format(path))

    complete = frame.dropna()
    droppedRows = len(frame) - len(complete)
    if droppedRows:
        logger.info("%s: dropped %d row(s) with missing values", path, droppedRows)
    if len(complete) < 2:
        raise DataError("{}: fewer than 2 complete rows".format(path))

    return DataSet(complete.to_numpy(dtype=np.float64), tuple(complete.columns),
                   {'source': str(path), 'dropped_rows': droppedRows})


def write_csv(data, path):
    frame = pd.DataFrame(data.points, columns=list(data.column_names))
    frame.to_csv(path, index=False, float_format=constants.FLOATFORMAT)


def standardize(data):
    """Center every column to mean 0 and scale it to unit standard deviation.

    Zero-variance columns are dropped with a warning. The constants are
    stored in data.preprocessing['standardize'] so that unstandardize()
    maps back to the values before the first standardization.
    """
    points = data.points
    center = points.mean(axis=0)
    scale = points.std(axis=0)
    keep = scale > 0
    if not np.all(keep):
        dropped = [c for c, k in zip(data.column_names, keep) if not k]
        logger.warning("dropping zero-variance column(s) %s", ', '.join(dropped))
    if not np.any(keep):
        raise DataError("every column has zero variance")

    names = tuple(c for c, k in zip(data.column_names, keep) if k)
    center, scale = center[keep], scale[keep]
    standardized = (points[:, keep] - center) / scale

    # compose with an earlier standardization so the record always refers to
    # the raw values
    previous = data.preprocessing.get('standardize')
    if previous:
        index = [previous['columns'].index(c) for c in names]
        prevCenter = np.array(previous['center'])[index]
        prevScale = np.array(previous['scale'])[index]
        center = prevCenter + prevScale * center
        scale = prevScale * scale

    preprocessing = dict(data.preprocessing)
    preprocessing['standardize'] = {'columns': list(names),
                                    'center': center.tolist(),
                                    'scale': scale.tolist()}
    return DataSet(standardized, names, preprocessing, data.labels)


def unstandardize(data):
    """Invert standardize() using the recorded constants."""
    record = data.preprocessing.get('standardize')
    if not record:
        raise DataError("dataset carries no standardization record")
    points = data.points * np.array(record['scale']) + np.array(record['center'])
    preprocessing = {k: v for k, v in data.preprocessing.items()
                     if k != 'standardize'}
    return DataSet(points, tuple(record['columns']), preprocessing, data.labels)


def principal_axes(points, count=1):
    """Mean and the first count principal directions (rows) of points, each
    direction signed so that its largest component is positive."""
    points = as_points(points)
    center = points.mean(axis=0)
    _, _, vt = np.linalg.svd(points - center, full_matrices=False)
    axes = vt[:count].copy()
    for axis in axes:
        if axis[np.argmax(np.abs(axis))] < 0:
            axis *= -1
    return center, axes
