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
    Grids of the disk and the operators acting on them.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from .cauchy import apply_T
from .grid import DiskGrid, PolarLayout, polar_layout
from .holder import c1_estimate, holder_norm, holder_prime_norm, holder_seminorm
from .wirtinger import dbar, dz, wirtinger_derivatives
