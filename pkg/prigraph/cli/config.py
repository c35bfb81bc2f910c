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

"""Configuration files.

A configuration file is a list of `key = value` lines, one per long flag of
the subcommand (dashes or underscores, without the leading `--`):

    # fit.cfg
    data = tree.csv
    grammar = tree,tree,shrink
    max-ops = 20
    standardize = yes

Values become the parser defaults, so flags given on the command line win.
"""

import configparser
import logging

from prigraph.errors import ConfigError

logger = logging.getLogger(__name__)

SECTION = 'prigraph'


def read_config(path):
    """Return the key/value pairs of the file at path."""
    parser = configparser.ConfigParser(interpolation=None,
                                       inline_comment_prefixes=('#', ';'))
    parser.optionxform = str
    try:
        with open(path) as f:
            parser.read_string('[{}]\n'.format(SECTION) + f.read(), source=path)
    except OSError as err:
        raise ConfigError("cannot read config file {}: {}".format(path, err.strerror))
    except configparser.Error as err:
        raise ConfigError("malformed config file {}: {}".format(path, err))
    return dict(parser[SECTION])


def _flag_actions(subparser):
    actions = {}
    for action in subparser._actions:
        for option in action.option_strings:
            if option.startswith('--'):
                actions[option[2:].replace('_', '-')] = action
    return actions


def _boolean(key, value):
    try:
        return configparser.ConfigParser.BOOLEAN_STATES[value.lower()]
    except KeyError:
        raise ConfigError("{} expects a boolean, got {!r}".format(key, value))


def apply_config(subparser, values):
    """Install values as defaults of subparser.

    Switches (store_true flags) take yes/no, true/false, on/off or 1/0;
    flags taking several values take them separated by whitespace.
    """
    actions = _flag_actions(subparser)
    defaults = {}
    for key, value in values.items():
        action = actions.get(key.replace('_', '-'))
        if action is None or action.dest in ('config', 'help'):
            raise ConfigError("unknown configuration key {!r}".format(key))
        if action.nargs == 0:
            defaults[action.dest] = _boolean(key, value)
        elif action.nargs in ('*', '+'):
            convert = action.type or str
            try:
                defaults[action.dest] = [convert(v) for v in value.split()]
            except ValueError:
                raise ConfigError("bad value for {}: {!r}".format(key, value))
        else:
            # argparse converts string defaults with the action's type
            defaults[action.dest] = value
        if action.choices is not None and action.nargs != 0 \
                and defaults[action.dest] not in action.choices:
            raise ConfigError("{} must be one of {}, got {!r}".format(
                key, ', '.join(map(str, action.choices)), value))
        logger.debug("config %s = %r", key, value)
    subparser.set_defaults(**defaults)
