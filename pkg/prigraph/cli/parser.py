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

"""Command-line layout: the subcommands and their flags."""

import argparse
import sys

import prigraph
from prigraph import constants
from prigraph.calc.grammar import GRAMMARS
from prigraph.data.generators import SHAPES
from prigraph.data.uci import UCIDATASETS
from prigraph.cli.config import apply_config, read_config
from prigraph.errors import UsageError


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser whose usage errors raise UsageError (exit code 1)."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser():
    """Create the prigraph parser. The subcommand parsers are kept in
    parser.subcommands so that config-file defaults can be applied to them."""

    parser = ArgumentParser(
        prog='prigraph',
        description='Elastic principal trees and accuracy-complexity plots.')
    parser.add_argument('--version', action='version',
                        version='%(prog)s ' + prigraph.__version__)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true',
                           help='log debugging messages')
    verbosity.add_argument('-q', '--quiet', action='store_true',
                           help='log warnings and errors only')

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND')
    subparsers.required = True
    parser.subcommands = {
        'generate': _create_generate(subparsers),
        'fit': _create_fit(subparsers),
        'report': _create_report(subparsers),
        'product': _create_product(subparsers),
        'fetch': _create_fetch(subparsers),
    }
    return parser


def _add_config(subparser):
    subparser.add_argument('--config', metavar='FILE',
                           help='key = value file mirroring the long flags; '
                                'flags on the command line win')


def _create_generate(subparsers):
    p = subparsers.add_parser('generate', help='write a synthetic 2-D dataset')
    _add_config(p)
    p.add_argument('--shape', choices=SHAPES)
    p.add_argument('--points', type=int, default=300)
    p.add_argument('--noise', type=float, default=0.05,
                   help='noise standard deviation relative to the shape scale')
    p.add_argument('--branches', type=int, default=3, help='branches of a star')
    p.add_argument('--seed', type=int, default=0)
    p.add_argument('--out', help='CSV file to write')
    return p


def _create_fit(subparsers):
    p = subparsers.add_parser('fit', help='grow a principal graph and its trace')
    _add_config(p)
    p.add_argument('--data', help='CSV dataset (header row)')
    p.add_argument('--columns', help='comma separated columns to use')
    p.add_argument('--standardize', action='store_true',
                   help='z-score the columns first')
    p.add_argument('--grammar', default=','.join(constants.GRAMMARSEQUENCE),
                   help='comma separated grammar sequence, applied cyclically; '
                        'presets: ' + ', '.join(GRAMMARS))
    p.add_argument('--max-ops', type=int, default=constants.MAXOPERATIONS,
                   help='maximum number of grammar applications (CC_max)')
    p.add_argument('--lambda', dest='lam', type=float,
                   default=constants.DEFAULTLAMBDA, help='stretching modulus')
    p.add_argument('--mu', type=float, default=constants.DEFAULTMU,
                   help='bending modulus')
    p.add_argument('--softening',
                   default=','.join('{:g}'.format(m) for _, m in constants.SOFTENING),
                   help='comma separated mu multipliers, or lambda:mu pairs')
    p.add_argument('--max-iter', type=int, default=constants.MAXITERATIONS,
                   help='EM iterations per softening stage')
    p.add_argument('--tol', type=float, default=constants.CONVERGENCETOL,
                   help='convergence threshold relative to the data diameter')
    p.add_argument('--ridge', type=float, default=constants.RIDGE)
    p.add_argument('--zero-lambda', action='store_true',
                   help='set stretching moduli to zero after each fit')
    p.add_argument('--candidate-iter', type=int,
                   default=constants.CANDIDATEITERATIONS,
                   help='EM iteration cap while scoring candidates')
    p.add_argument('--policy', choices=('nodes', 'branches'), default='nodes',
                   help='structural complexity policy')
    p.add_argument('--sc-max', type=int, default=constants.MAXNODES,
                   help='maximum number of nodes')
    p.add_argument('--b-max', type=int, default=constants.MAXBRANCHES,
                   help='allowed number of 3-stars under the branches policy')
    p.add_argument('--fve-stop', type=float, default=constants.FVESTOP,
                   help='stop once the polyline FVE reaches this value')
    p.add_argument('--no-fve-stop', action='store_true',
                   help='never stop on accuracy')
    p.add_argument('--no-shrink-increase', action='store_true',
                   help='skip shrink steps that would raise the energy')
    p.add_argument('--out', help='final graph JSON')
    p.add_argument('--trace', help='trace CSV (metadata goes to TRACE.meta.json)')
    p.add_argument('--graphs-dir', help='directory for the graph of every step')
    return p


def _create_report(subparsers):
    p = subparsers.add_parser('report', help='plot a trace as SVG')
    _add_config(p)
    p.add_argument('--trace', help='trace CSV written by fit')
    p.add_argument('--out', help='SVG file to write')
    p.add_argument('--minima', help='local minima JSON (default OUT_minima.json)')
    p.add_argument('--log', action='store_true', help='log-scaled GC axis')
    p.add_argument('--mark', type=int, nargs='*',
                   help='steps to highlight (default: GC local minima)')
    p.add_argument('--data', help='dataset CSV for the projection panel')
    p.add_argument('--graph', help='graph JSON for the projection panel')
    p.add_argument('--columns', help='comma separated columns of --data')
    p.add_argument('--standardize', action='store_true',
                   help='z-score --data as fit did')
    p.add_argument('--title')
    return p


def _create_product(subparsers):
    p = subparsers.add_parser('product', help='Cartesian product of graphs')
    _add_config(p)
    p.add_argument('--factors', nargs='+',
                   help='factor graph JSON files')
    p.add_argument('--out', help='product graph JSON')
    return p


def _create_fetch(subparsers):
    p = subparsers.add_parser('fetch', help='download a UCI dataset')
    _add_config(p)
    p.add_argument('--name', choices=sorted(UCIDATASETS))
    p.add_argument('--cache-dir', help='cache root (default $' +
                   constants.CACHEENV + ' or ~/.cache/prigraph)')
    p.add_argument('--raw', action='store_true', help='skip standardization')
    p.add_argument('--out', help='CSV file to write')
    return p


def parse_arguments(parser, argv=None):
    """Parse argv, layering the subcommand's --config file under the flags."""
    args = parser.parse_args(argv)
    if getattr(args, 'config', None):
        apply_config(parser.subcommands[args.command], read_config(args.config))
        args = parser.parse_args(argv)
    return args
