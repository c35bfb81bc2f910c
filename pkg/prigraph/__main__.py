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

import logging
import sys

from prigraph.cli.commands import COMMANDS
from prigraph.cli.parser import build_parser, parse_arguments
from prigraph.errors import PrigraphError

logger = logging.getLogger('prigraph')


def configure_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(format='%(levelname)s: %(message)s')
    logging.getLogger().setLevel(level)


def main(argv=None):
    """Run the prigraph command line and return the exit code: 0 on
    success, 1 for usage or configuration errors, 2 for data or graph
    errors and 3 for numerical failures."""
    configure_logging()
    parser = build_parser()
    try:
        args = parse_arguments(parser, argv)
        configure_logging(args.verbose, args.quiet)
        return COMMANDS[args.command](args)
    except PrigraphError as err:
        logger.error("%s", err)
        return err.exitCode


if __name__ == "__main__":
    sys.exit(main())
