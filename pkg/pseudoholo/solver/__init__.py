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
    Pseudoholomorphic disks by fixed point iteration.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from .contraction import ContractionReport, measure_contraction
from .disk import SOLVER_FAILURES, DiskSolution, IterationRecord, linear_disk, solve_disk
from .theta import Theta, disk_residual, pseudoholomorphy_defect, theta
