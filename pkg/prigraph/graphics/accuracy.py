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

"""The accuracy-complexity plot.

Geometrical complexity is drawn against the polyline FVE in step order.
Vertical lines mark the steps where the star counts of the barcode change,
labelled with the star part of the barcode only.
"""

import json
from dataclasses import dataclass, field

import matplotlib
matplotlib.use('Agg')

import matplotlib.pyplot as plt
import numpy as np

from prigraph import constants
from prigraph.data.dataset import as_points, principal_axes
from prigraph.errors import DataError


@dataclass
class PlotSpec:
    x: np.ndarray # fve_polyline per step
    y: np.ndarray # GC per step
    steps: np.ndarray
    annotations: list = field(default_factory=list) # (step, x, label)
    markers: list = field(default_factory=list) # highlighted steps


def local_minima(values):
    """Interior local minima of a sequence.

    Runs of equal consecutive values are one plateau; a plateau is a minimum
    if both neighbouring plateaus are strictly larger. The index of the
    first element of each minimal plateau is returned.
    """
    values = list(values)
    plateaus = [] # (first index, value)
    for i, value in enumerate(values):
        if not plateaus or value != plateaus[-1][1]:
            plateaus.append((i, value))
    return [plateaus[j][0] for j in range(1, len(plateaus) - 1)
            if plateaus[j - 1][1] > plateaus[j][1] < plateaus[j + 1][1]]


def plot_spec(table, markers=None):
    """PlotSpec of a trace table (as returned by read_trace).

    markers defaults to the local minima of GC.
    """
    if len(table) == 0:
        raise DataError("cannot plot an empty trace")
    steps = table['step'].to_numpy()
    x = table['fve_polyline'].to_numpy(dtype=np.float64)
    y = table['GC'].to_numpy(dtype=np.float64)
    labels = [code.split('||')[0] for code in table['barcode']]

    annotations = [(int(steps[i]), float(x[i]), labels[i])
                   for i in range(1, len(labels)) if labels[i] != labels[i - 1]]
    if markers is None:
        markers = [int(steps[i]) for i in local_minima(y)]
    unknown = set(markers) - set(steps.tolist())
    if unknown:
        raise DataError("marked steps {} are not in the trace".format(sorted(unknown)))
    return PlotSpec(x, y, steps, annotations, list(markers))


def minima_summary(table):
    """JSON-ready list of the GC local minima of a trace table."""
    return [{'step': int(table['step'].iloc[i]),
             'n_nodes': int(table['n_nodes'].iloc[i]),
             'barcode': str(table['barcode'].iloc[i]),
             'fve_polyline': float(table['fve_polyline'].iloc[i]),
             'GC': float(table['GC'].iloc[i])}
            for i in local_minima(table['GC'].to_numpy(dtype=np.float64))]


def write_minima(table, path):
    with open(path, 'w') as minimaFile:
        json.dump(minima_summary(table), minimaFile, indent=4)


def _draw_curve(ax, spec, log_scale):
    ax.plot(spec.x, spec.y, '-o', color=constants.CURVECOLOR, markersize=3,
            linewidth=1)
    for step, x, label in spec.annotations:
        ax.axvline(x, color=constants.BARCODELINECOLOR, linewidth=0.8,
                   linestyle='--')
        # x in data units, y in axes units: labels sit above the plot frame
        ax.text(x, 1.01, label, transform=ax.get_xaxis_transform(),
                rotation=90, ha='center', va='bottom', fontsize=7)
    if spec.markers:
        index = np.searchsorted(spec.steps, spec.markers)
        ax.plot(spec.x[index], spec.y[index], 'o', markersize=8,
                markerfacecolor='none', color=constants.MINIMUMCOLOR)
    if log_scale:
        positive = spec.y[spec.y > 0]
        ax.set_yscale('symlog', linthresh=positive.min() if len(positive) else 1.0)
    ax.set_xlabel('FVE')
    ax.set_ylabel('geometrical complexity')


def _draw_projection(ax, data, graph):
    """Data and graph on the first two principal components of the data."""
    points = as_points(data)
    center, axes = principal_axes(points, 2)

    def project(coords):
        flat = (coords - center) @ axes.T
        if flat.shape[1] < 2:
            flat = np.column_stack([flat, np.zeros(len(flat))])
        return flat

    cloud = project(points)
    nodes = project(graph.nodes)
    ax.scatter(cloud[:, 0], cloud[:, 1], s=4, color=constants.DATACOLOR,
               alpha=0.5, linewidths=0)
    for a, b in graph.edges:
        ax.plot(nodes[[a, b], 0], nodes[[a, b], 1], '-',
                color=constants.GRAPHCOLOR, linewidth=1.2)
    ax.plot(nodes[:, 0], nodes[:, 1], 'o', color=constants.GRAPHCOLOR,
            markersize=3)
    ax.set_xlabel('PC1')
    ax.set_ylabel('PC2')
    ax.set_aspect('equal', adjustable='datalim')


def render_svg(spec, path, log_scale=False, data=None, graph=None, title=None):
    """Write the accuracy-complexity plot of spec to path as SVG. With data
    and graph, a second panel shows both projected on the data's first two
    principal components."""
    plt.rcParams['svg.hashsalt'] = 'prigraph'
    panels = 2 if data is not None and graph is not None else 1
    fig, axes = plt.subplots(1, panels, squeeze=False,
                             figsize=constants.PANELFIGSIZE if panels == 2
                             else constants.FIGSIZE)
    _draw_curve(axes[0, 0], spec, log_scale)
    if panels == 2:
        _draw_projection(axes[0, 1], data, graph)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, format='svg', metadata={'Date': None})
    plt.close(fig)
