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
# theta.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the operators of the fixed point iteration for the disks solving

        dz/dzbar + a(z) conj(dz/dz) = 0

    * theta(f, g) = -T(a(g) conj(df/dz)), componentwise theta^i = -T(sum_m a^i_m(g) conj(df^m/dz)),
    * Theta(f, g) = theta(f, g) - theta(f, g)(0) - zeta * d theta(f, g)/dz (0), so that Theta(f, g)(0) = 0 and dTheta/dz(0) = 0.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from typing import Optional

# Third party
import numpy as np

# project
from pseudoholo.errors import Errors
from pseudoholo.structure import ChartSpec
from pseudoholo.transform import DiskGrid, apply_T, wirtinger_derivatives

#############################################################################
#                                  Script                                   #
#############################################################################


def check_inside(chart: ChartSpec, g: DiskGrid, mask: Optional[np.ndarray] = None) -> None:
    """
    Raise a domain escape error naming the first node of 'g' (among 'mask') mapped outside of the chart.
    """

    inside = chart.contains(g.values)
    if mask is not None:
        inside = inside | ~mask
    if not np.all(inside):
        node = int(np.argmin(inside))
        raise Errors.E040(node=node, zeta=complex(g.nodes[node]), point=tuple(g.values[node]), R=g.radius)  # type: ignore


def theta(chart: ChartSpec, f: DiskGrid, g: DiskGrid, jobs: int = 1) -> DiskGrid:
    """
    Compute theta(f, g) = -T(a(g) conj(df/dz)) with the coefficients of 'chart'.

    Args:
        chart (ChartSpec): the chart carrying the coefficients a.
        f (DiskGrid): the differentiated map.
        g (DiskGrid): the map at which the coefficients are evaluated. Must stay inside the chart.
        jobs (int): workers of the transform.
    """

    f._check_compatible(g)
    check_inside(chart, g)

    if chart.is_standard:
        return f.with_values(np.zeros_like(f.values), name="theta")

    d_z = wirtinger_derivatives(f)[0]
    source = np.einsum("nim,nm->ni", chart.a(g.values), np.conj(d_z))

    return -apply_T(f.with_values(source, name="a(g) conj(df)"), jobs=jobs)


def Theta(chart: ChartSpec, f: DiskGrid, g: DiskGrid, jobs: int = 1) -> DiskGrid:
    """
    Compute Theta(f, g) : theta(f, g) with its value and its holomorphic derivative at the origin removed.
    """

    values = theta(chart, f, g, jobs=jobs)
    if chart.is_standard:
        return values.with_values(values.values, name="Theta")

    slope = wirtinger_derivatives(values)[0][0]
    corrected = values.values - values.values[0][None, :] - values.nodes[:, None] * slope[None, :]

    return values.with_values(corrected, name="Theta")


def pseudoholomorphy_defect(chart: ChartSpec, z: DiskGrid) -> DiskGrid:
    """
    The left hand side dz/dzbar + a(z) conj(dz/dz) of the disk equation, node by node.
    """

    d_z, d_zbar = wirtinger_derivatives(z)
    if chart.is_standard:
        return z.with_values(d_zbar, name="defect")

    return z.with_values(d_zbar + np.einsum("nim,nm->ni", chart.a(z.values), np.conj(d_z)), name="defect")


def disk_residual(chart: ChartSpec, z: DiskGrid, epsilon: float) -> float:
    """
    The sup over |zeta| <= (1 - epsilon) R of the Euclidean norm of the pseudoholomorphy defect.
    """

    return pseudoholomorphy_defect(chart, z).sup_norm(z.interior_mask(epsilon))


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("theta.py can't be run in standalone")
