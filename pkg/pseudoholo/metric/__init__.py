#! /usr/bin/python3
#
#    Pseudoholo - Pseudoholomorphic disks and invariant pseudometrics
#    Copyright (C) 2022  the pseudoholo contributors
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU Affero General Public License as
#    published by the Free Software Foundation, either version 3 of the
#    License, or any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU Affero General Public License for more details.
#
#    You should have received a copy of the GNU Affero General Public License
#    along with this program.  If not, see <https://www.gnu.org/licenses/>.
#
# __init__.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    The pseudonorm and the pseudodistances of a chart, estimated from above with certified disks.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from pseudoholo.structure import exact_distance_model, exact_F_model
from pseudoholo.utils.hyperbolic import poincare_distance

from .chain import chain_defect_slope, estimate_d_chain
from .distance import DISK_CHAIN, PATH_INTEGRAL, DistanceEstimate, estimate_dbar, segment_contributions
from .path import PathSpec, check_path, node_pseudonorms, path_length
from .pseudonorm import (
    DIRECT,
    MODEL,
    MonotonicityReport,
    PseudonormEstimate,
    SearchStep,
    WitnessDisk,
    check_monotonicity,
    estimate_F,
    normalize_direction,
    schwarz_constant,
    sweep,
    witness_disk,
)
