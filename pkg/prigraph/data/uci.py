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

"""Cached retrieval of the UCI Machine Learning Repository datasets.

Cache layout is <cache_dir>/<name>/<original file name> with a
<file>.sha256 sidecar. Every file is checked against the known digest of
the canonical UCI file (UciSource.sha256) when one is set, else against the
sidecar written when it was first stored; a mismatch is refused and a fresh
download that fails the check is deleted. Downloads go to a
temporary file in the same directory and are moved into place with
os.replace, so concurrent fetches never see a partial file.

Column handling per dataset:
- iris: the species column is dropped (150 x 4)
- wine: the class column is dropped (178 x 13)
- forestfires: month and day are dropped, area is replaced by log(1 + area)
  (517 x 11)
- abalone: the sex column is dropped (4177 x 8)
"""

import hashlib
import logging
import os
import tempfile
from typing import NamedTuple

import numpy as np
import requests

from prigraph import constants
from prigraph.data.dataset import load_csv, standardize
from prigraph.errors import DataError

logger = logging.getLogger(__name__)


class UciSource(NamedTuple):
    path: str # relative to constants.UCIBASE
    names: tuple # column names for header-less files, else None
    columns: tuple # columns kept
    log1p: tuple = () # columns replaced by log(1 + x)
    shape: tuple = None
    sha256: str = None # digest of the canonical file, None if not pinned


UCIDATASETS = {
    'iris': UciSource(
        'iris/iris.data',
        ('sepal_length', 'sepal_width', 'petal_length', 'petal_width',
         'species'),
        ('sepal_length', 'sepal_width', 'petal_length', 'petal_width'),
        shape=(150, 4)),
    'wine': UciSource(
        'wine/wine.data',
        ('class', 'alcohol', 'malic_acid', 'ash', 'alcalinity', 'magnesium',
         'total_phenols', 'flavanoids', 'nonflavanoid_phenols',
         'proanthocyanins', 'color_intensity', 'hue', 'od280_od315',
         'proline'),
        ('alcohol', 'malic_acid', 'ash', 'alcalinity', 'magnesium',
         'total_phenols', 'flavanoids', 'nonflavanoid_phenols',
         'proanthocyanins', 'color_intensity', 'hue', 'od280_od315',
         'proline'),
        shape=(178, 13)),
    'forestfires': UciSource(
        'forest-fires/forestfires.csv',
        None,
        ('X', 'Y', 'FFMC', 'DMC', 'DC', 'ISI', 'temp', 'RH', 'wind', 'rain',
         'area'),
        log1p=('area',),
        shape=(517, 11)),
    'abalone': UciSource(
        'abalone/abalone.data',
        ('sex', 'length', 'diameter', 'height', 'whole_weight',
         'shucked_weight', 'viscera_weight', 'shell_weight', 'rings'),
        ('length', 'diameter', 'height', 'whole_weight', 'shucked_weight',
         'viscera_weight', 'shell_weight', 'rings'),
        shape=(4177, 8)),
}


def cache_dir(path=None):
    """The cache root: path, else $PRIGRAPH_CACHE, else ~/.cache/prigraph."""
    return path or os.environ.get(constants.CACHEENV) or constants.DEFAULTCACHE


def sha256(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as f:
        for block in iter(lambda: f.read(1 << 16), b''):
            digest.update(block)
    return digest.hexdigest()


def download(url, target):
    """Fetch url into target atomically."""
    directory = os.path.dirname(target)
    os.makedirs(directory, exist_ok=True)
    logger.info("downloading %s", url)
    try:
        response = requests.get(url, timeout=constants.DOWNLOADTIMEOUT)
        response.raise_for_status()
    except requests.RequestException as err:
        raise DataError("cannot download {}: {}".format(url, err))
    payload = response.content
    handle, tmpName = tempfile.mkstemp(dir=directory, suffix='.part')
    with os.fdopen(handle, 'wb') as f:
        f.write(payload)
    os.replace(tmpName, target)


def cached_file(name, cache=None):
    """Path of the verified cached copy of dataset name, downloading it
    first if needed."""
    if name not in UCIDATASETS:
        raise DataError("unknown UCI dataset {!r}, expected one of {}".format(
            name, ', '.join(UCIDATASETS)))
    source = UCIDATASETS[name]
    target = os.path.join(cache_dir(cache), name, os.path.basename(source.path))
    sidecar = target + '.sha256'

    fresh = not os.path.exists(target)
    if fresh:
        download(constants.UCIBASE + source.path, target)
    else:
        logger.debug("cache hit %s", target)

    digest = sha256(target)
    expected = source.sha256
    if expected is None and os.path.exists(sidecar):
        with open(sidecar) as f:
            expected = f.read().split()[0]
    if expected is not None and digest != expected:
        if fresh:
            os.remove(target)
        raise DataError("checksum mismatch for {}: {} != {}".format(
            target, digest, expected))
    if not os.path.exists(sidecar):
        handle, tmpName = tempfile.mkstemp(dir=os.path.dirname(target))
        with os.fdopen(handle, 'w') as f:
            f.write('{}  {}\n'.format(digest, os.path.basename(target)))
        os.replace(tmpName, sidecar)
    return target


def fetch_uci(name, cache=None, standardized=True):
    """Load one of iris, wine, forestfires or abalone as a DataSet.

    Parameters
    ----------
    name         : dataset name
    cache        : cache root (see cache_dir)
    standardized : z-score the columns after the per-dataset handling
    """
    path = cached_file(name, cache)
    source = UCIDATASETS[name]
    data = load_csv(path, columns=source.columns, names=source.names)

    if source.log1p:
        for column in source.log1p:
            index = data.column_names.index(column)
            data.points[:, index] = np.log1p(data.points[:, index])
        data.preprocessing['log1p'] = list(source.log1p)

    if source.shape and data.points.shape != source.shape:
        logger.warning("%s has shape %s, expected %s", name,
                       data.points.shape, source.shape)
    data.preprocessing['uci'] = name
    return standardize(data) if standardized else data
