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

"""The subcommands. Each takes the parsed arguments and returns an exit
code; failures raise PrigraphError subclasses carrying their own."""

import json
import logging
import os

from prigraph.calc.builder import BuilderConfig, grow, read_trace, write_trace
from prigraph.calc.complex import cartesian_product, product_energy_check
from prigraph.calc.grammar import StructuralPolicy
from prigraph.calc.graph import read_graph, write_graph
from prigraph.calc.optimizer import FitConfig
from prigraph.data.dataset import load_csv, standardize, write_csv
from prigraph.data.generators import GeneratorSpec, generate
from prigraph.data.uci import fetch_uci
from prigraph.errors import ConfigError, DataError, UsageError
from prigraph.graphics.accuracy import plot_spec, render_svg, write_minima

logger = logging.getLogger(__name__)

POLICIES = {'nodes': 'node_count_bound', 'branches': 'branch_bound'}


def _require(args, *names):
    for name in names:
        if getattr(args, name) in (None, [], ''):
            raise UsageError("{} needs --{}".format(args.command,
                                                    name.replace('_', '-')))


def _columns(text):
    if not text:
        return None
    return [c.strip() for c in text.split(',') if c.strip()]


def _writing(path):
    """Directory check before long computations, so a bad output path
    fails early."""
    if path:
        folder = os.path.dirname(os.path.abspath(path))
        if not os.path.isdir(folder):
            raise DataError("output directory {} does not exist".format(folder))


def parse_softening(text):
    """'100,10,1' or '1:100,1:10,1:1' -> ((1, 100), (1, 10), (1, 1))"""
    steps = []
    for item in text.split(','):
        parts = item.strip().split(':')
        try:
            values = [float(p) for p in parts]
        except ValueError:
            raise ConfigError("bad softening step {!r}".format(item))
        if len(values) == 1:
            steps.append((1.0, values[0]))
        elif len(values) == 2:
            steps.append(tuple(values))
        else:
            raise ConfigError("bad softening step {!r}".format(item))
    return tuple(steps)


def builder_config(args):
    """BuilderConfig from the fit flags."""
    fitConfig = FitConfig(lambda_default=args.lam, mu_default=args.mu,
                          softening_steps=parse_softening(args.softening),
                          max_iterations=args.max_iter,
                          convergence_tol=args.tol, ridge=args.ridge,
                          zero_lambda=args.zero_lambda)
    policy = StructuralPolicy(POLICIES[args.policy], sc_max=args.sc_max,
                              b_max=args.b_max)
    return BuilderConfig(grammar_sequence=_columns(args.grammar) or (),
                         structural_policy=policy, cc_max=args.max_ops,
                         fit_config=fitConfig,
                         candidate_fit_iterations=args.candidate_iter,
                         allow_energy_increase_on_shrink=not args.no_shrink_increase,
                         fve_stop=None if args.no_fve_stop else args.fve_stop)


def cmd_generate(args):
    _require(args, 'shape', 'out')
    spec = GeneratorSpec(args.shape, n_points=args.points, noise_sd=args.noise,
                         branches=args.branches, seed=args.seed)
    data = generate(spec)
    try:
        write_csv(data, args.out)
    except OSError as err:
        raise DataError("cannot write {}: {}".format(args.out, err))
    logger.info("wrote %d %s points to %s", data.n, args.shape, args.out)
    return 0


def _load(args):
    data = load_csv(args.data, columns=_columns(args.columns))
    if args.standardize:
        data = standardize(data)
    return data


def cmd_fit(args):
    _require(args, 'data')
    config = builder_config(args)
    for path in (args.out, args.trace):
        _writing(path)
    data = _load(args)
    logger.info("fitting %d points in %d dimensions", data.n, data.dim)

    trace = grow(data, config)
    trace.metadata['data'] = args.data
    trace.metadata['preprocessing'] = data.preprocessing

    try:
        if args.trace:
            write_trace(trace, args.trace)
            logger.info("wrote trace to %s", args.trace)
        if args.out:
            write_graph(trace.final_graph, args.out)
            logger.info("wrote graph to %s", args.out)
        if args.graphs_dir:
            os.makedirs(args.graphs_dir, exist_ok=True)
            for record, graph in zip(trace.records, trace.graphs):
                write_graph(graph, os.path.join(
                    args.graphs_dir, 'step_{:04d}.json'.format(record.step)))
    except OSError as err:
        raise DataError("cannot write results: {}".format(err))

    last = trace.records[-1]
    logger.info("final %s: FVE %.4f (polyline %.4f), historical CC %d, "
                "de novo CC %d, stopped on %s", last.barcode, last.fve_node,
                last.fve_polyline, trace.historical_cc, trace.denovo_cc,
                trace.metadata.get('stop_reason'))
    return 0


def cmd_report(args):
    _require(args, 'trace', 'out')
    table = read_trace(args.trace)
    spec = plot_spec(table, markers=args.mark or None)

    data = graph = None
    if args.data or args.graph:
        _require(args, 'data', 'graph')
        data = _load(args)
        graph = read_graph(args.graph)

    minima = args.minima or os.path.splitext(args.out)[0] + '_minima.json'
    try:
        render_svg(spec, args.out, log_scale=args.log, data=data, graph=graph,
                   title=args.title)
        write_minima(table, minima)
    except OSError as err:
        raise DataError("cannot write report: {}".format(err))
    logger.info("wrote %s and %s", args.out, minima)
    return 0


def cmd_product(args):
    _require(args, 'factors', 'out')
    factors = [read_graph(path) for path in args.factors]
    complexObj = cartesian_product(factors)
    energy = product_energy_check(complexObj)
    try:
        write_graph(complexObj.product, args.out)
    except OSError as err:
        raise DataError("cannot write {}: {}".format(args.out, err))
    logger.info("product %s: %d nodes, %d edges, %d stars, U_E + U_R = %.6g",
                'x'.join(map(str, complexObj.shape)), complexObj.product.n_nodes,
                complexObj.product.n_edges, len(complexObj.product.stars), energy)
    return 0


def cmd_fetch(args):
    _require(args, 'name')
    data = fetch_uci(args.name, args.cache_dir, standardized=not args.raw)
    if args.out:
        try:
            write_csv(data, args.out)
        except OSError as err:
            raise DataError("cannot write {}: {}".format(args.out, err))
        logger.info("wrote %s to %s", args.name, args.out)
    print(json.dumps({'name': args.name, 'shape': list(data.points.shape),
                      'columns': list(data.column_names)}))
    return 0


COMMANDS = {
    'generate': cmd_generate,
    'fit': cmd_fit,
    'report': cmd_report,
    'product': cmd_product,
    'fetch': cmd_fetch,
}
