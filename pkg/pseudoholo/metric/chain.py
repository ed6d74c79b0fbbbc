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
# chain.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the chained disks estimate of the pseudodistance.

    The path is cut at t_i = i / k. On each segment, the witness disk of (gamma(t_i), gamma'(t_i)), of certified radius R_i, carries
    gamma(t_i) to u_i(dt), close to gamma(t_i + dt). Moving dt along the disk costs the Poincaré distance arctanh(dt / R_i) of the
    rescaled parameter, and the chain value is the sum of these costs. The displacement defect |u_i(dt) - gamma(t_i + dt)| is reported
    with the bound it induces on the neglected corrections.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from typing import Optional, Sequence, Tuple

# Third party
import numpy as np

# project
from pseudoholo.errors import Errors
from pseudoholo.logger import get_module_logger
from pseudoholo.metric.distance import DISK_CHAIN, DistanceEstimate
from pseudoholo.metric.path import PathSpec, check_path
from pseudoholo.metric.pseudonorm import estimate_F, witness_disk
from pseudoholo.models import SearchConfig, SolverConfig
from pseudoholo.structure import ChartSpec, TangentVector
from pseudoholo.utils.parallel import map_ordered

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

DEFECT_PARTITIONS = (16, 32, 64, 128)


def _check_endpoints(path: PathSpec, p: np.ndarray, q: np.ndarray) -> None:

    for which, expected, actual in (("start", p, path.start), ("end", q, path.end)):
        gap = float(np.linalg.norm(actual - expected))
        if gap > 1e-12 * max(1.0, float(np.linalg.norm(expected))):
            raise Errors.E064(which=which, gap=gap)  # type: ignore


def _segment(
    chart: ChartSpec, path: PathSpec, index: int, step: float, search: Optional[SearchConfig], cfg: Optional[SolverConfig]
) -> Tuple[float, float, float]:
    """
    Return the (cost, defect, pseudonorm) of the segment starting at t = index * step.
    """

    t = index * step
    base = path.at(t)
    velocity = path.velocity(t)
    if not np.any(velocity != 0):
        return 0.0, 0.0, 0.0

    tv = TangentVector(base, velocity)
    try:
        estimate = estimate_F(chart, tv, search=search, cfg=cfg)
    except Errors.E050 as error:
        raise Errors.E060(segment=index, reason=str(error)) from error  # type: ignore

    radius = estimate.witness_R
    if radius <= step:
        raise Errors.E061(segment=index, radius=radius, step=step)  # type: ignore

    disk = witness_disk(chart, estimate, cfg=cfg)
    reached = disk.along_diameter(step)[0]
    defect = float(np.linalg.norm(reached - path.at(t + step)))

    return float(np.arctanh(step / radius)), defect, estimate.value


def estimate_d_chain(
    chart: ChartSpec,
    p: Sequence[complex],
    q: Sequence[complex],
    path: Optional[PathSpec] = None,
    partition: int = 64,
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> DistanceEstimate:
    """
    Estimate the pseudodistance between p and q by chaining the witness disks along a path.

    Args:
        chart (ChartSpec): the chart.
        p, q: the end points.
        path (PathSpec, optional): a path from p to q, interpolated between its nodes. Defaults to the segment [p, q].
        partition (int): the number k of segments.
        search (SearchConfig, optional): the pseudonorm search settings.
        cfg (SolverConfig, optional): the disk solver settings.
        jobs (int): workers for the segments.

    Raises:
        E061: a witness disk is smaller than the step, the partition must be denser.
        E064: the path does not join p to q.
    """

    if partition < 1:
        raise Errors.E062(count=partition + 1)  # type: ignore

    p = np.asarray(p, dtype=complex).reshape(-1)
    q = np.asarray(q, dtype=complex).reshape(-1)
    path = path or PathSpec.straight(p, q, count=2)
    _check_endpoints(path, p, q)
    check_path(chart, path)

    step = 1.0 / partition
    segments = map_ordered(lambda i: _segment(chart, path, i, step, search, cfg), range(partition), jobs=jobs)
    costs = [cost for cost, _, _ in segments]
    defects = np.array([defect for _, defect, _ in segments])
    constant = max(value for _, _, value in segments)

    estimate = DistanceEstimate(
        value=float(sum(costs)),
        method=DISK_CHAIN,
        partition=partition,
        details=tuple(costs),
        defect=float(defects.max()),
        gap_bound=float(constant * defects.sum()),
        nodes=path.at(np.linspace(0.0, 1.0, partition + 1)),
    )
    LOGGER.debug(f"chain of {partition} disks : value {estimate.value:.6g}, defect {estimate.defect:.3e}")

    return estimate


def chain_defect_slope(
    chart: ChartSpec,
    p: Sequence[complex],
    q: Sequence[complex],
    path: Optional[PathSpec] = None,
    partitions: Sequence[int] = DEFECT_PARTITIONS,
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> float:
    """
    The least squares slope of log(defect) against log(dt) over the partitions. Disks following the path exactly have no defect :
    the slope is then infinite.
    """

    steps, defects = [], []
    for k in partitions:
        defect = estimate_d_chain(chart, p, q, path=path, partition=k, search=search, cfg=cfg, jobs=jobs).defect
        if defect > 0:
            steps.append(1.0 / k)
            defects.append(defect)

    if len(steps) < 2:
        return float("inf")

    slope, _ = np.polyfit(np.log(steps), np.log(defects), 1)
    return float(slope)


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("chain.py can't be run in standalone")
