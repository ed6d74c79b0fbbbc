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
# distance.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the estimation of the integrated pseudodistance, the infimum over the paths from p to q of int_0^1 F(gamma'(t)) dt.

    The infimum is searched over the polylines with a fixed number of nodes, starting from the segment [p, q], by a coordinatewise local
    search : each sweep visits the real and imaginary parts of the interior nodes in a seeded random order, and moves a coordinate by
    +/- step whenever the length decreases. The step is halved after a sweep without improvement. Every path found is feasible, hence
    the result is an upper bound.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple
from warnings import warn

# Third party
import numpy as np

# project
from pseudoholo.errors import Errors, Warnings
from pseudoholo.logger import get_module_logger
from pseudoholo.metric.path import PathSpec, node_pseudonorms
from pseudoholo.models import OptimizerConfig, SearchConfig, SolverConfig
from pseudoholo.structure import ChartSpec

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

PATH_INTEGRAL = "path-integral"
DISK_CHAIN = "disk-chain"


@dataclass(frozen=True)
class DistanceEstimate:
    """
    An upper bound on a pseudodistance : the sum of the nonnegative per-segment contributions 'details'.
    """

    value: float
    method: str
    partition: int
    details: Tuple[float, ...] = ()
    converged: bool = True
    defect: float = 0.0
    gap_bound: float = 0.0
    nodes: Optional[np.ndarray] = field(default=None, repr=False, compare=False)


def segment_contributions(values: Sequence[float], parameters: np.ndarray) -> np.ndarray:
    """
    The trapezoidal contributions (F_i + F_{i+1}) / 2 * (t_{i+1} - t_i) of the segments.
    """

    values = np.asarray(values, dtype=float)
    return 0.5 * (values[:-1] + values[1:]) * np.diff(parameters)


def _length(chart, path, search, cfg, jobs) -> np.ndarray:
    values = [estimate.value for estimate in node_pseudonorms(chart, path, search=search, cfg=cfg, jobs=jobs)]
    return segment_contributions(values, path.parameters)


def estimate_dbar(
    chart: ChartSpec,
    p: Sequence[complex],
    q: Sequence[complex],
    optimizer: Optional[OptimizerConfig] = None,
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> DistanceEstimate:
    """
    Estimate the integrated pseudodistance between p and q.

    Args:
        chart (ChartSpec): the chart, containing p and q.
        p, q: the end points.
        optimizer (OptimizerConfig, optional): the number of path nodes, the sweeps budget, the steps and the seed.
        search (SearchConfig, optional): the pseudonorm search settings.
        cfg (SolverConfig, optional): the disk solver settings.
        jobs (int): workers for the per-node estimates.

    Returns:
        DistanceEstimate: the best path length found, flagged non converged when the budget ran out.
    """

    optimizer = optimizer or OptimizerConfig()
    p = np.asarray(p, dtype=complex).reshape(-1)
    q = np.asarray(q, dtype=complex).reshape(-1)
    chart.check_point(p)
    chart.check_point(q)

    scale = float(np.linalg.norm(q - p))
    if scale == 0:
        return DistanceEstimate(value=0.0, method=PATH_INTEGRAL, partition=1, details=(0.0,), nodes=np.stack((p, q)))

    path = PathSpec.straight(p, q, count=optimizer.nodes)
    contributions = _length(chart, path, search, cfg, jobs)
    best = float(contributions.sum())

    # Free coordinates : (node, component, real or imaginary part)
    coordinates = [(k, i, part) for k in range(1, path.count - 1) for i in range(chart.n) for part in (1.0, 1j)]
    rng = np.random.default_rng(optimizer.seed)
    step = optimizer.initial_step
    converged = not coordinates

    for sweep in range(optimizer.sweeps):
        if converged:
            break

        improved = False
        for index in rng.permutation(len(coordinates)):
            k, i, part = coordinates[index]
            for sign in (1.0, -1.0):
                nodes = path.nodes.copy()
                nodes[k, i] += sign * step * scale * part
                trial = path.with_nodes(nodes)
                if not np.all(chart.contains(trial.nodes)):
                    continue
                try:
                    trial_contributions = _length(chart, trial, search, cfg, jobs)
                except Errors.E060:
                    continue

                length = float(trial_contributions.sum())
                if length < best:
                    path, contributions, best, improved = trial, trial_contributions, length, True
                    break

        LOGGER.debug(f"sweep {sweep} : step {step:.3e}, length {best:.6g}")
        if not improved:
            step /= 2
            converged = step < optimizer.min_step

    if not converged:
        warn(Warnings.W060.format(sweeps=optimizer.sweeps, step=step))

    return DistanceEstimate(
        value=float(contributions.sum()),
        method=PATH_INTEGRAL,
        partition=path.count,
        details=tuple(float(c) for c in contributions),
        converged=converged,
        nodes=path.nodes,
    )


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("distance.py can't be run in standalone")
