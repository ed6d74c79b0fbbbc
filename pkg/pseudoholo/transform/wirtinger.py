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
# wirtinger.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the Wirtinger derivatives d/dz and d/dzbar on the polar grid.

    In polar coordinates d/dzbar = e^{i phi} / 2 * (d/dr + i / r * d/dphi) and d/dz = e^{-i phi} / 2 * (d/dr - i / r * d/dphi).
    * d/dr : centered differences, the origin standing for the inner neighbour of the first ring, and second order one-sided
      differences on the boundary ring.
    * d/dphi : chord corrected centered differences (F_{j+1} - F_{j-1}) / (2 sin dphi), exact on the first harmonics.
    * origin : the first Fourier coefficients of the two inner rings, combined by a Richardson step.
    Affine functions of (zeta, zetabar) are differentiated exactly.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from typing import Tuple

import numpy as np

from pseudoholo.errors import Errors
from pseudoholo.transform.grid import DiskGrid

#############################################################################
#                                  Script                                   #
#############################################################################

MIN_RESOLUTION = 4


def wirtinger_derivatives(f: DiskGrid) -> Tuple[np.ndarray, np.ndarray]:
    """
    Return the values of (df/dz, df/dzbar). Requires at least two rings.
    """

    layout = f.layout
    n_r, n_theta = f.resolution
    h = layout.h
    values = f.values
    components = f.components

    origin = values[0]
    rings = values[1:].reshape(n_r, n_theta, components)
    padded = np.concatenate((np.broadcast_to(origin, (1, n_theta, components)), rings), axis=0)

    # Radial derivative
    d_r = np.empty_like(rings)
    d_r[:-1] = (padded[2:] - padded[:-2]) / (2 * h)
    d_r[-1] = (3 * padded[n_r] - 4 * padded[n_r - 1] + padded[n_r - 2]) / (2 * h)

    # Angular derivative
    d_phi = (np.roll(rings, -1, axis=1) - np.roll(rings, 1, axis=1)) / (2 * np.sin(layout.d_theta))

    radii = layout.ring_radii[:, None, None]
    phases = layout.phases[None, :, None]
    d_z = np.conj(phases) / 2 * (d_r - 1j * d_phi / radii)
    d_zbar = phases / 2 * (d_r + 1j * d_phi / radii)

    # Origin
    def _fourier(ring: int, phases: np.ndarray) -> np.ndarray:
        return np.einsum("jk,j->k", rings[ring], phases) / (layout.ring_radii[ring] * n_theta)

    d_z_origin = (4 * _fourier(0, np.conj(layout.phases)) - _fourier(1, np.conj(layout.phases))) / 3
    d_zbar_origin = (4 * _fourier(0, layout.phases) - _fourier(1, layout.phases)) / 3

    d_z = np.concatenate((d_z_origin[None, :], d_z.reshape(-1, components)), axis=0)
    d_zbar = np.concatenate((d_zbar_origin[None, :], d_zbar.reshape(-1, components)), axis=0)

    return d_z, d_zbar


def _check_resolution(f: DiskGrid) -> None:

    n_r, n_theta = f.resolution
    if n_r < MIN_RESOLUTION or n_theta < MIN_RESOLUTION:
        raise Errors.E030(n_r=n_r, n_theta=n_theta, operation="the Wirtinger derivatives", minimum=MIN_RESOLUTION)  # type: ignore


def dz(f: DiskGrid) -> DiskGrid:
    """
    The holomorphic derivative df/dz.
    """

    _check_resolution(f)
    return f.with_values(wirtinger_derivatives(f)[0], name=f"dz({f.name})")


def dbar(f: DiskGrid) -> DiskGrid:
    """
    The anti-holomorphic derivative df/dzbar.
    """

    _check_resolution(f)
    return f.with_values(wirtinger_derivatives(f)[1], name=f"dbar({f.name})")


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("wirtinger.py can't be run in standalone")
