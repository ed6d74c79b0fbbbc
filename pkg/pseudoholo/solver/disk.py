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
# disk.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the solver of the pseudoholomorphic disks through a point p in a direction v :

        z_1 = p + zeta v,    z_{k+1} = p + zeta v + Theta(z_k, z_k)

    The iteration stops at the first k for which sup |z_{k+1} - z_k| <= tol / 10. Every iterate must map the whole disk of radius R
    inside the chart. The solution is then accepted if its residual over the disk of radius (1 - epsilon) R is at most tol.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from dataclasses import dataclass, field
from functools import cached_property
from typing import List, Optional

# Third party
import numpy as np

# project
from pseudoholo.errors import Errors
from pseudoholo.logger import get_module_logger
from pseudoholo.models import SolverConfig
from pseudoholo.solver.theta import Theta, check_inside, disk_residual
from pseudoholo.structure import ChartSpec, TangentVector
from pseudoholo.transform import DiskGrid, holder_prime_norm, wirtinger_derivatives

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

# The failures meaning "no disk of this radius" for the callers probing radii
SOLVER_FAILURES = (Errors.E040, Errors.E041, Errors.E042, Errors.E043)


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    difference: float
    residual: float


@dataclass
class DiskSolution:
    """
    A pseudoholomorphic disk z : D_R -> C^n with z(0) = p and dz/dz(0) = v.
    """

    grid: DiskGrid
    tv: TangentVector
    radius: float
    epsilon: float
    residual: float
    iterations: int
    chart: str = ""
    log: List[IterationRecord] = field(default_factory=list)
    iterates: List[DiskGrid] = field(default_factory=list, repr=False)

    @property
    def center(self) -> np.ndarray:
        return self.tv.p

    @property
    def direction(self) -> np.ndarray:
        return self.tv.v

    @property
    def interior(self) -> np.ndarray:
        """
        Mask of the nodes of the disk of radius (1 - epsilon) R.
        """

        return self.grid.interior_mask(self.epsilon)

    @cached_property
    def norm_prime(self) -> float:
        """
        The norm ||z||' over the disk of radius (1 - epsilon) R.
        """

        return holder_prime_norm(self.grid, mask=self.interior)

    def initial_conditions_error(self) -> float:
        """
        max(|z(0) - p|, |dz/dz(0) - v|).
        """

        d_z = wirtinger_derivatives(self.grid)[0][0]
        return float(max(np.linalg.norm(self.grid.origin_value - self.center), np.linalg.norm(d_z - self.direction)))

    def verify(self, chart: ChartSpec) -> float:
        """
        Recompute the residual from the grid alone.
        """

        return disk_residual(chart, self.grid, self.epsilon)


def linear_disk(tv: TangentVector, R: float, resolution, lam: float = 0.5) -> DiskGrid:
    """
    The first iterate p + zeta v.
    """

    return DiskGrid.from_function(R, resolution, lambda zeta: tv.p[None, :] + zeta[:, None] * tv.v[None, :], lam=lam, name="z")


def _check_transverse(chart: ChartSpec, tv: TangentVector, cfg: SolverConfig) -> None:
    """
    A non integrable chart must leave room for the polydisk of size delta around p.
    """

    if chart.is_standard:
        return

    margins = chart.radii - np.abs(tv.p)
    if np.any(margins < cfg.transverse_delta):
        raise Errors.E044(radii=tuple(float(m) for m in margins), delta=cfg.transverse_delta)  # type: ignore


def solve_disk(
    chart: ChartSpec,
    tv: TangentVector,
    R: float,
    cfg: Optional[SolverConfig] = None,
    keep_iterates: bool = False,
) -> DiskSolution:
    """
    Solve the disk equation for the disk of radius R through tv.base in the direction tv.direction.

    Args:
        chart (ChartSpec): the almost complex structure.
        tv (TangentVector): the initial conditions z(0) = p, dz/dz(0) = v.
        R (float): the disk radius.
        cfg (SolverConfig, optional): the numerical settings.
        keep_iterates (bool): keep every iterate in the solution.

    Raises:
        E040: an iterate leaves the chart.
        E041: the successive differences grow twice in a row.
        E042: no convergence after max_iter iterations.
        E043: the limit residual exceeds tol.
    """

    cfg = cfg or SolverConfig()
    if not R > 0 or not np.isfinite(R):
        raise Errors.E046(R=R)  # type: ignore
    if tv.n != chart.n:
        raise Errors.E025(got=tv.n, n=chart.n)  # type: ignore
    chart.check_point(tv.base)
    _check_transverse(chart, tv, cfg)

    linear = linear_disk(tv, R, cfg.resolution, lam=chart.holder_lambda)
    check_inside(chart, linear)

    z = linear
    log: List[IterationRecord] = []
    iterates = [z] if keep_iterates else []
    iterations = 1

    if not chart.is_standard:
        differences: List[float] = []
        converged = False
        for iterations in range(1, cfg.max_iter + 1):
            following = linear + Theta(chart, z, z, jobs=cfg.jobs)
            check_inside(chart, following)

            difference = (following - z).sup_norm()
            differences.append(difference)
            z = following
            if keep_iterates:
                iterates.append(z)

            residual = disk_residual(chart, z, cfg.epsilon)
            log.append(IterationRecord(iterations, difference, residual))
            LOGGER.debug(f"iteration {iterations} : difference {difference:.3e}, residual {residual:.3e}")

            if difference <= cfg.tol / 10:
                converged = True
                break

            if len(differences) >= 3 and differences[-1] > differences[-2] > differences[-3]:
                raise Errors.E041(previous=differences[-2], current=differences[-1], iteration=iterations)  # type: ignore

        if not converged:
            ratio = differences[-1] / differences[-2] if len(differences) > 1 and differences[-2] > 0 else float("nan")
            raise Errors.E042(max_iter=cfg.max_iter, difference=differences[-1], ratio=ratio)  # type: ignore

    residual = disk_residual(chart, z, cfg.epsilon)
    if not log:
        log.append(IterationRecord(1, 0.0, residual))
    if residual > cfg.tol:
        raise Errors.E043(residual=residual, tol=cfg.tol)  # type: ignore

    LOGGER.debug(f"solved the disk of radius {R} through {tv!r} in {iterations} iterations, residual {residual:.3e}")

    return DiskSolution(
        grid=z.with_values(z.values, name="disk"),
        tv=tv,
        radius=float(R),
        epsilon=cfg.epsilon,
        residual=residual,
        iterations=iterations,
        chart=chart.name,
        log=log,
        iterates=iterates,
    )


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("disk.py can't be run in standalone")
