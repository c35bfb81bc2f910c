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

"""Exceptions raised by prigraph.

Every exception carries the exit code the command line returns for it.
"""


class PrigraphError(Exception):
    """Base class of all prigraph errors."""
    exitCode = 2


class UsageError(PrigraphError):
    """Bad command-line flags or config-file keys."""
    exitCode = 1


class ConfigError(UsageError):
    """An invalid configuration value."""


class GraphError(PrigraphError):
    """A violated graph invariant or grammar precondition."""
    exitCode = 2


class DataError(PrigraphError):
    """Unreadable, empty or degenerate data."""
    exitCode = 2


class NumericalError(PrigraphError):
    """A singular linear system or a non-finite result."""
    exitCode = 3
