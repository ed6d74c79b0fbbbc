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
# reduction.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the pseudodistance between the leaves of a fibered chart : the distance between arbitrary points of the two leaves.

    The value does not depend on the chosen points when the leaves are images of large pseudoholomorphic curves. The spread of the
    values over alternative representatives is reported as the well-definedness defect.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

# Third party
import numpy as np

# project
from pseudoholo.errors import Errors
from pseudoholo.logger import get_module_logger
from pseudoholo.metric import estimate_dbar
from pseudoholo.models import OptimizerConfig, SearchConfig, SolverConfig
from pseudoholo.solver import disk_residual, linear_disk
from pseudoholo.structure import ChartSpec, TangentVector

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

# Radius of the disk checked along a leaf with no finite fiber radius
LEAF_DISK_RADIUS = 1.0


@dataclass(frozen=True)
class Leaf:
    """
    The leaf anchor + zeta * direction, zeta in C.
    """

    anchor: Tuple[complex, ...]
    direction: Tuple[complex, ...]
    radius: float

    def point(self, zeta: complex) -> np.ndarray:
        return np.asarray(self.anchor) + zeta * np.asarray(self.direction)

    def representatives(self, count: int, spread: float) -> np.ndarray:
        """
        The anchor, then 'count' - 1 points on the circle |zeta| = spread * radius.
        """

        zetas = [0.0] + [spread * self.radius * np.exp(2j * np.pi * j / (count - 1)) for j in range(count - 1)]
        return np.array([self.point(zeta) for zeta in zetas])


class FibrationSpec:
    """
    The product fibration declared by a chart : the projection keeps the 'base' coordinates, the leaves are spanned by the others.
    """

    def __init__(self, chart: ChartSpec):

        if chart.fibration is None:
            raise Errors.E071(chart=chart.name)  # type: ignore

        self.chart = chart
        self.name = chart.fibration.name
        self.base = tuple(chart.fibration.base)
        self.fiber = tuple(k for k in range(chart.n) if k not in self.base)

    def project(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=complex).reshape(-1, self.chart.n)
        return points[:, list(self.base)]

    def leaf(self, x: Sequence[complex]) -> Leaf:
        """
        The leaf over the base point x.
        """

        x = np.atleast_1d(np.asarray(x, dtype=complex))
        if x.shape[0] != len(self.base):
            raise Errors.E025(got=x.shape[0], n=len(self.base))  # type: ignore

        anchor = np.zeros(self.chart.n, dtype=complex)
        anchor[list(self.base)] = x
        direction = np.zeros(self.chart.n, dtype=complex)
        direction[list(self.fiber)] = 1 / np.sqrt(len(self.fiber))

        fiber_radii = self.chart.radii[list(self.fiber)]
        finite = fiber_radii[np.isfinite(fiber_radii)]
        radius = 0.9 * float(finite.min()) if finite.size else LEAF_DISK_RADIUS

        return Leaf(anchor=tuple(anchor), direction=tuple(direction), radius=radius)

    def verify(self, leaf: Leaf, cfg: Optional[SolverConfig] = None) -> float:
        """
        Check that the leaf is pseudoholomorphic on the disk of its radius.

        Raises:
            E070: the residual exceeds cfg.tol.
        """

        cfg = cfg or SolverConfig()
        self.chart.check_point(leaf.anchor)
        disk = linear_disk(TangentVector(leaf.anchor, leaf.direction), leaf.radius, cfg.resolution, lam=self.chart.holder_lambda)
        residual = disk_residual(self.chart, disk, cfg.epsilon)
        if residual > cfg.tol:
            raise Errors.E070(leaf=list(leaf.anchor), residual=residual, tol=cfg.tol)  # type: ignore

        return residual


@dataclass(frozen=True)
class ReducedDistance:

    value: float
    defect: float
    values: Tuple[float, ...]


def reduced_distance(
    chart: ChartSpec,
    fib: FibrationSpec,
    leaf_a: Leaf,
    leaf_b: Leaf,
    representatives: Tuple[complex, complex] = (0.0, 0.0),
    samples: int = 3,
    spread: float = 0.5,
    optimizer: Optional[OptimizerConfig] = None,
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> ReducedDistance:
    """
    The pseudodistance between two leaves, measured between chosen representatives, with its well-definedness defect.

    Args:
        chart (ChartSpec): the fibered chart.
        fib (FibrationSpec): its fibration.
        leaf_a, leaf_b (Leaf): the leaves, verified first.
        representatives (Tuple[complex, complex]): the leaf parameters of the representatives.
        samples (int): number of alternative representatives per leaf.
        spread (float): the alternatives lie at the relative distance 'spread' of the anchors.

    Returns:
        ReducedDistance: the value, and the spread max - min of the values over all the pairs of representatives.
    """

    for leaf in (leaf_a, leaf_b):
        fib.verify(leaf, cfg=cfg)

    def _distance(p: np.ndarray, q: np.ndarray) -> float:
        return estimate_dbar(chart, p, q, optimizer=optimizer, search=search, cfg=cfg, jobs=jobs).value

    value = _distance(leaf_a.point(representatives[0]), leaf_b.point(representatives[1]))

    values = [value]
    for p in leaf_a.representatives(samples, spread):
        for q in leaf_b.representatives(samples, spread):
            values.append(_distance(p, q))

    result = ReducedDistance(value=value, defect=float(max(values) - min(values)), values=tuple(values))
    LOGGER.debug(f"reduced distance on '{fib.name}' : {result.value:.6g} with defect {result.defect:.3e}")

    return result


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("reduction.py can't be run in standalone")
