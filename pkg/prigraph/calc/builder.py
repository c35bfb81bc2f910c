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

"""Principal graph construction by grammar-driven growth.

Starting from a segment on the first principal line, the builder cycles
through the grammar sequence (by default tree, tree, shrink). Each
application enumerates every candidate transformation, fits each
permissible candidate with a capped EM run, keeps the one of least
energy, fits it fully and appends a ComplexityRecord to the trace.
"""

import itertools
import json
import logging
from dataclasses import asdict, dataclass, field

import numpy as np
import pandas as pd

import prigraph
from prigraph import constants
from prigraph.calc.energy import fve, geometrical_complexity, total_energy
from prigraph.calc.grammar import (GROWRULES, GrammarOperation,
                                   StructuralPolicy, enumerate_candidates,
                                   grammar_kinds)
from prigraph.calc.graph import Barcode, ElasticGraph, barcode, derive_primitive_stars
from prigraph.calc.optimizer import FitConfig, fit
from prigraph.data.dataset import DataSet, as_points, principal_axes
from prigraph.errors import ConfigError, DataError, GraphError

logger = logging.getLogger(__name__)

TRACECOLUMNS = ('step', 'op_kind', 'n_nodes', 'barcode', 'fve_node',
                'fve_polyline', 'U_E', 'U_R', 'GC', 'total_energy',
                'historical_cc')


@dataclass(frozen=True)
class BuilderConfig:
    """Settings of one growth run.

    Parameters
    ----------
    grammar_sequence          : grammar preset names, applied cyclically
    structural_policy         : StructuralPolicy deciding permissibility
    cc_max                    : maximum number of grammar applications
    fit_config                : FitConfig of the full fits
    candidate_fit_iterations  : EM cap while scoring candidates
    allow_energy_increase_on_shrink : take the best shrink candidate even if
                                it raises the energy
    fve_stop                  : stop once the polyline FVE reaches this
                                value (None never stops on accuracy)
    """
    grammar_sequence: tuple = constants.GRAMMARSEQUENCE
    structural_policy: StructuralPolicy = field(default_factory=StructuralPolicy)
    cc_max: int = constants.MAXOPERATIONS
    fit_config: FitConfig = field(default_factory=FitConfig)
    candidate_fit_iterations: int = constants.CANDIDATEITERATIONS
    allow_energy_increase_on_shrink: bool = True
    fve_stop: float = constants.FVESTOP

    def __post_init__(self):
        object.__setattr__(self, 'grammar_sequence', tuple(self.grammar_sequence))
        if not self.grammar_sequence:
            raise ConfigError("empty grammar sequence")
        for grammar in self.grammar_sequence:
            grammar_kinds(grammar)
        if self.cc_max < 1:
            raise ConfigError("cc_max must be at least 1")
        if self.candidate_fit_iterations < 1:
            raise ConfigError("candidate_fit_iterations must be at least 1")


@dataclass(frozen=True)
class ComplexityRecord:
    step: int
    node_count: int
    fve_node: float
    fve_polyline: float
    u_e: float
    u_r: float
    gc: float
    barcode: Barcode
    operation: GrammarOperation # None for the initial graph
    energy: float
    historical_cc: int

    @property
    def op_kind(self):
        return self.operation.kind if self.operation else 'init'


@dataclass
class Trace:
    """The records of a run and the graph after every step."""
    records: list
    graphs: list
    metadata: dict = field(default_factory=dict)

    @property
    def historical_cc(self):
        return self.records[-1].historical_cc

    @property
    def denovo_cc(self):
        return self.records[-1].node_count - 1

    @property
    def final_graph(self):
        return self.graphs[-1]


def initialize(data, lam=constants.DEFAULTLAMBDA, mu=constants.DEFAULTMU):
    """Two nodes on the first principal line at the extreme projections of
    the data, so that every point projects inside the segment."""
    points = as_points(data)
    center = points.mean(axis=0)
    centered = points - center
    if len(points) < 2 or not np.any(centered):
        raise DataError("initialization needs at least 2 points with nonzero variance")

    # first right singular vector = dominant eigenvector of the covariance
    direction = principal_axes(points)[1][0]
    projections = centered @ direction
    nodes = center + np.outer([projections.min(), projections.max()], direction)
    return derive_primitive_stars(ElasticGraph(nodes, [[0, 1]], [lam]), mu)


def initialize_single(data):
    """One node at the data mean, the start of the 'points' grammar."""
    points = as_points(data)
    if len(points) < 1:
        raise DataError("empty dataset")
    return ElasticGraph(points.mean(axis=0, keepdims=True))


def make_record(step, data, graph, operation, historical):
    accuracy = fve(data, graph)
    energy = total_energy(data, graph)
    return ComplexityRecord(step, graph.n_nodes, accuracy.fve_node,
                            accuracy.fve_polyline, energy.stretching,
                            energy.bending, geometrical_complexity(graph),
                            barcode(graph), operation, energy.total, historical)


def _is_growth(grammar):
    return all(kind in GROWRULES for kind in grammar_kinds(grammar))


def grow(data, config=None):
    """Build a principal graph and return its Trace.

    The grammar sequence is applied cyclically. The run stops when no
    candidate is permissible, when cc_max applications have been made, or
    when the polyline FVE reaches config.fve_stop.
    """
    config = config or BuilderConfig()
    if not isinstance(data, DataSet):
        data = DataSet(data)
    fitConfig = config.fit_config
    candidateConfig = fitConfig.single_stage(config.candidate_fit_iterations)
    lam, mu = fitConfig.lambda_default, fitConfig.mu_default

    if all(grammar == 'points' for grammar in config.grammar_sequence):
        graph = initialize_single(data)
    else:
        graph = initialize(data, lam, mu)
    graph = fit(data, graph, fitConfig)

    records = [make_record(0, data, graph, None, 0)]
    graphs = [graph]
    historical = 0
    idle = 0 # consecutive grammars that were not applied
    stopReason = 'cc_max'

    for grammar in itertools.cycle(config.grammar_sequence):
        if historical >= config.cc_max:
            break
        if config.fve_stop is not None and records[-1].fve_polyline >= config.fve_stop:
            stopReason = 'fve_stop'
            break
        if idle >= len(config.grammar_sequence):
            stopReason = 'no_applicable_operation'
            break

        candidates = [c for c in enumerate_candidates(
                          graph, grammar, config.structural_policy, data, lam, mu)
                      if c.permissible]
        if not candidates:
            if _is_growth(grammar):
                stopReason = 'no_permissible_candidate'
                break
            idle += 1
            continue

        # argmin of the energy after a capped fit; ties go to the earliest
        best = None
        for candidate in candidates:
            fitted = fit(data, candidate.result, candidateConfig)
            energy = total_energy(data, fitted).total
            if best is None or energy < best[0]:
                best = (energy, candidate.operation, fitted)
        energy, operation, fitted = best

        if not _is_growth(grammar) and not config.allow_energy_increase_on_shrink:
            if energy > records[-1].energy:
                logger.debug("skipping %s: energy would rise to %g", operation, energy)
                idle += 1
                continue

        graph = fit(data, fitted, fitConfig)
        historical += 1
        idle = 0
        record = make_record(len(records), data, graph, operation, historical)
        records.append(record)
        graphs.append(graph)
        logger.info("step %d: %s, %d nodes, barcode %s, FVE %.4f, GC %.4g",
                    record.step, operation, record.node_count, record.barcode,
                    record.fve_polyline, record.gc)

    trace = Trace(records, graphs)
    trace.metadata = {
        'version': prigraph.__version__,
        'n_points': data.n,
        'dimension': data.dim,
        'grammar_sequence': list(config.grammar_sequence),
        'structural_policy': asdict(config.structural_policy),
        'cc_max': config.cc_max,
        'candidate_fit_iterations': config.candidate_fit_iterations,
        'allow_energy_increase_on_shrink': config.allow_energy_increase_on_shrink,
        'fve_stop': config.fve_stop,
        'fit_config': asdict(fitConfig),
        'historical_cc': trace.historical_cc,
        'denovo_cc': trace.denovo_cc,
        'stop_reason': stopReason,
    }
    return trace


def trace_to_records(trace):
    """Flat table of a trace, one row per step, columns TRACECOLUMNS."""
    rows = [(r.step, r.op_kind, r.node_count, str(r.barcode), r.fve_node,
             r.fve_polyline, r.u_e, r.u_r, r.gc, r.energy, r.historical_cc)
            for r in trace.records]
    return pd.DataFrame(rows, columns=list(TRACECOLUMNS))


def write_trace(trace, path):
    """Write the trace CSV and its metadata sidecar <path>.meta.json."""
    trace_to_records(trace).to_csv(path, index=False,
                                   float_format=constants.FLOATFORMAT)
    with open(str(path) + '.meta.json', 'w') as metaFile:
        json.dump(trace.metadata, metaFile, indent=4, sort_keys=True)


def read_trace(path):
    try:
        table = pd.read_csv(path, dtype={'barcode': str, 'op_kind': str},
                            keep_default_na=False, float_precision='round_trip')
    except (OSError, UnicodeDecodeError, pd.errors.ParserError,
            pd.errors.EmptyDataError) as err:
        raise DataError("cannot read trace {}: {}".format(path, err))
    missing = [c for c in TRACECOLUMNS if c not in table.columns]
    if missing:
        raise DataError("{} is not a trace: missing {}".format(path, ', '.join(missing)))
    if table.empty:
        raise DataError("{} is an empty trace".format(path))
    numeric = [c for c in TRACECOLUMNS if c not in ('op_kind', 'barcode')]
    try:
        table[numeric] = table[numeric].apply(pd.to_numeric, errors='raise')
        for text in table['barcode']:
            Barcode.parse(text)
    except (ValueError, TypeError, GraphError) as err:
        raise DataError("{} is a malformed trace: {}".format(path, err))
    return table
