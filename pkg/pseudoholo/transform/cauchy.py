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
# cauchy.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the discrete Cauchy-Green transform

        Tf(w) = 1 / (2 pi i) * int_{D_R} f(zeta) / (zeta - w) dzeta ^ dzetabar = -1 / pi * int_{D_R} f(zeta) / (zeta - w) dA

    on the polar grid. The constant f(w) is integrated exactly against the kernel (its transform is conj(w) * f(w)),
    the remainder (f(zeta) - f(w)) / (zeta - w) is bounded and summed with the cells areas. On the singular cell the remainder
    is replaced by its mean value over the cell, that is the holomorphic derivative df(w) (the anti-holomorphic part averages out).
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

import numpy as np

from pseudoholo.logger import get_module_logger
from pseudoholo.transform.grid import DiskGrid
from pseudoholo.transform.wirtinger import wirtinger_derivatives
from pseudoholo.utils.parallel import map_ordered

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

# Number of target nodes per work unit. Fixed so that the summation order does not depend on the workers count.
CHUNK_SIZE = 256


def apply_T(f: DiskGrid, jobs: int = 1) -> DiskGrid:
    """
    Apply the Cauchy-Green transform to every component of 'f'.

    Args:
        f (DiskGrid): the function to transform.
        jobs (int): the number of workers sharing the target nodes.

    Returns:
        DiskGrid: Tf, on the same grid.
    """

    nodes = f.nodes
    areas = f.layout.areas
    values = f.values
    size = f.size

    # Mean value of the remainder over the singular cell
    if f.resolution[0] >= 2:
        own_cell = areas[:, None] * wirtinger_derivatives(f)[0]
    else:
        own_cell = np.zeros_like(values)

    def _chunk(start: int) -> np.ndarray:
        stop = min(start + CHUNK_SIZE, size)
        targets = np.arange(start, stop)
        local = targets - start

        delta = nodes[None, :] - nodes[targets, None]
        delta[local, targets] = 1.0
        kernel = areas[None, :] / delta
        kernel[local, targets] = 0.0

        weight = kernel.sum(axis=1)
        conv = np.einsum("ts,sk->tk", kernel, values)
        remainder = conv - weight[:, None] * values[targets] + own_cell[targets]

        return np.conj(nodes[targets])[:, None] * values[targets] - remainder / np.pi

    blocks = map_ordered(_chunk, range(0, size, CHUNK_SIZE), jobs=jobs)
    LOGGER.debug(f"applied T on {f!r} with {len(blocks)} blocks")

    return f.with_values(np.concatenate(blocks, axis=0), name=f"T({f.name})")


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("cauchy.py can't be run in standalone")
