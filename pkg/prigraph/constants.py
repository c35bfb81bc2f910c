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

import os

# ELASTICITY DEFAULTS
# -------------------

# stretching modulus given to every edge created by the builder or a grammar
DEFAULTLAMBDA = 0.01
# bending modulus given to every star
DEFAULTMU = 0.1

# softening schedule: (lambda multiplier, mu multiplier) pairs, fitted in order.
# The mu multipliers must not increase along the schedule.
SOFTENING = ((1.0, 100.0), (1.0, 10.0), (1.0, 1.0))

# the geometrical complexity is always measured with unit bending moduli
COMPLEXITYMU = 1.0


# CONVERGENCE
# -----------

MAXITERATIONS = 100 # EM iterations per softening stage
CONVERGENCETOL = 1e-4 # max node displacement, as a fraction of data diameter
RIDGE = 1e-12 # diagonal regularizer, times trace(a)/k, used on singular systems
PIVOTRATIO = 1e-14 # smallest accepted (min pivot / max pivot)^2 of a

# tolerance of the product energy check for cubic complexes
PRODUCTTOL = 1e-12


# BUILDER
# -------

GRAMMARSEQUENCE = ('tree', 'tree', 'shrink')
MAXOPERATIONS = 50 # CC_max
CANDIDATEITERATIONS = 10 # EM cap while scoring candidates
MAXNODES = 50 # SC_max for the node count policy
MAXBRANCHES = 3 # b_max for the branch policy
FVESTOP = 0.999 # stop growing once the polyline FVE reaches this value


# PLOT CONFIGURATION
# ------------------

CURVECOLOR = '#215f93'
BARCODELINECOLOR = '#f32a1f'
MINIMUMCOLOR = '#22c519'
DATACOLOR = '#b01e7d'
GRAPHCOLOR = '#000000'
FIGSIZE = (7.0, 5.0)
PANELFIGSIZE = (13.0, 5.0)


# DATA
# ----

# CSV output keeps every bit of a float64
FLOATFORMAT = '%.17g'

# portable 64 bit generator used by the synthetic distributions
GENERATORALGORITHM = 'PCG64'

CACHEENV = 'PRIGRAPH_CACHE'
DEFAULTCACHE = os.path.join(os.path.expanduser('~'), '.cache', 'prigraph')

UCIBASE = 'https://archive.ics.uci.edu/ml/machine-learning-databases/'
DOWNLOADTIMEOUT = 60 # seconds
