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
# holder.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the Hölder norms of the grids.

    * holder_norm(f) = sup |f| + sup_{x != y} |f(x) - f(y)| / |x - y|^lambda
    * holder_prime_norm(f) = max(holder_norm(df/dz), holder_norm(df/dzbar))
    * c1_estimate(family) = max of holder_prime_norm(Tf) / holder_norm(f) over a test family, the empirical constant of ||Tf||' <= c1 ||f||

    The seminorm is computed over every pair of nodes up to EXHAUSTIVE_LIMIT nodes. Above, it is computed over
    SAMPLED_PAIRS random pairs drawn with a fixed seed, hence a reproducible lower bound.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from typing import Optional, Sequence

import numpy as np

from pseudoholo.errors import Errors
from pseudoholo.logger import get_module_logger
from pseudoholo.transform.cauchy import apply_T
from pseudoholo.transform.grid import DiskGrid
from pseudoholo.transform.wirtinger import dbar, dz

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

EXHAUSTIVE_LIMIT = 10_000
SAMPLED_PAIRS = 1_000_000
PAIRS_SEED = 20220501
_ROWS_PER_CHUNK = 256


def _check_lambda(lam: float) -> None:

    if not 0 < lam < 1:
        raise Errors.E024(value=lam)  # type: ignore


def _quotients(values: np.ndarray, nodes: np.ndarray, left: np.ndarray, right: np.ndarray, lam: float) -> float:

    distances = np.abs(nodes[left] - nodes[right])
    keep = distances > 0
    if not np.any(keep):
        return 0.0

    jumps = np.sqrt(np.sum(np.abs(values[left[keep]] - values[right[keep]]) ** 2, axis=-1))
    return float(np.max(jumps / distances[keep] ** lam))


def holder_seminorm(f: DiskGrid, lam: Optional[float] = None, mask: Optional[np.ndarray] = None) -> float:
    """
    The Hölder seminorm of exponent 'lam' (default : the grid's) over the nodes selected by 'mask' (default : all).
    """

    lam = f.lam if lam is None else lam
    _check_lambda(lam)

    nodes = f.nodes if mask is None else f.nodes[mask]
    values = f.values if mask is None else f.values[mask]
    size = nodes.shape[0]
    if size == 0:
        raise Errors.E033()  # type: ignore

    if size <= EXHAUSTIVE_LIMIT:
        seminorm = 0.0
        columns = np.arange(size)
        for start in range(0, size, _ROWS_PER_CHUNK):
            rows = np.arange(start, min(start + _ROWS_PER_CHUNK, size))
            left, right = np.meshgrid(rows, columns, indexing="ij")
            seminorm = max(seminorm, _quotients(values, nodes, left.ravel(), right.ravel(), lam))
        return seminorm

    rng = np.random.default_rng(PAIRS_SEED)
    left = rng.integers(0, size, SAMPLED_PAIRS)
    right = rng.integers(0, size, SAMPLED_PAIRS)
    return _quotients(values, nodes, left, right, lam)


def holder_norm(f: DiskGrid, lam: Optional[float] = None, mask: Optional[np.ndarray] = None) -> float:
    """
    Compute the Hölder norm sup |f| + [f]_lam.

    Args:
        f (DiskGrid): the function.
        lam (float, optional): the Hölder exponent, in (0, 1). Defaults to the one carried by the grid.
        mask (np.ndarray, optional): a boolean mask selecting a subgrid.
    """

    seminorm = holder_seminorm(f, lam=lam, mask=mask)
    return f.sup_norm(mask) + seminorm


def holder_prime_norm(f: DiskGrid, lam: Optional[float] = None, mask: Optional[np.ndarray] = None) -> float:
    """
    Compute ||f||' = max(||df/dz||, ||df/dzbar||).
    """

    return max(holder_norm(dz(f), lam=lam, mask=mask), holder_norm(dbar(f), lam=lam, mask=mask))


def c1_estimate(family: Sequence[DiskGrid], lam: Optional[float] = None, shrink: float = 0.1, jobs: int = 1) -> float:
    """
    Measure the constant c1 of the bound ||Tf||' <= c1 ||f|| over a family of grids.

    Both norms are taken over the nodes of modulus <= (1 - shrink) R, where the quadrature of T is accurate.

    Args:
        family (Sequence[DiskGrid]): the test functions, any layout.
        lam (float, optional): the Hölder exponent. Defaults to the one carried by each grid.
        shrink (float): the relative width of the excluded boundary annulus.
        jobs (int): the number of workers applying T.

    Returns:
        float: the largest ratio ||Tf||' / ||f|| over the functions of non zero norm.
    """

    ratios = []
    for f in family:
        mask = f.interior_mask(shrink)
        norm = holder_norm(f, lam=lam, mask=mask)
        if norm == 0:
            continue
        ratios.append(holder_prime_norm(apply_T(f, jobs=jobs), lam=lam, mask=mask) / norm)
        LOGGER.debug(f"c1 ratio of {f!r} : {ratios[-1]:.6g}")

    if not ratios:
        raise Errors.E033()  # type: ignore

    return max(ratios)


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("holder.py can't be run in standalone")
