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
# hyperbolic.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Poincaré geometry of the disks : distances and the automorphisms moving a point to the center.
    The metric is r |dz| / (r^2 - |z|^2) on the disk of radius r, so that the pseudonorm of v at 0 on the unit disk is |v|.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from typing import Union

import numpy as np

#############################################################################
#                                  Script                                   #
#############################################################################

Complex = Union[complex, np.ndarray]


def pseudo_hyperbolic(z: Complex, w: Complex) -> np.ndarray:
    """
    The pseudo-hyperbolic distance |z - w| / |1 - conj(z) w| on the unit disk.
    """

    return np.abs(z - w) / np.abs(1 - np.conj(z) * w)


def poincare_distance(z: Complex, w: Complex) -> np.ndarray:
    """
    The Poincaré distance arctanh(|z - w| / |1 - conj(z) w|) on the unit disk.
    """

    return np.arctanh(pseudo_hyperbolic(z, w))


def disk_automorphism(z: Complex, p: Complex, r: float) -> np.ndarray:
    """
    The automorphism of the disk of radius r sending p to 0 : z -> r^2 (z - p) / (r^2 - conj(p) z). Infinite radii give the translation.
    """

    if np.isinf(r):
        return z - p
    return r**2 * (z - p) / (r**2 - np.conj(p) * z)


def inverse_disk_automorphism(w: Complex, p: Complex, r: float) -> np.ndarray:
    """
    The inverse of 'disk_automorphism' : w -> r^2 (w + p) / (r^2 + conj(p) w).
    """

    if np.isinf(r):
        return w + p
    return r**2 * (w + p) / (r**2 + np.conj(p) * w)


def automorphism_stretch(p: Complex, r: float) -> np.ndarray:
    """
    The derivative at p of 'disk_automorphism' : r^2 / (r^2 - |p|^2), or 1 for infinite radii.
    """

    if np.isinf(r):
        return np.ones_like(np.abs(p))
    return r**2 / (r**2 - np.abs(p) ** 2)
