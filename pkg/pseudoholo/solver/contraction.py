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
# contraction.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Measure how strongly the map f -> Theta(f, f) contracts near the central solution z0 = p0 + zeta v0.

    For the offset |v - v0|, the measured constants are :
    * ratio : max ||Theta(f, f) - Theta(g, g)|| / (|v - v0|^lambda ||f - g||),
    * contraction_factor : max ||Theta(f, f) - Theta(g, g)|| / ||f - g||, below 1 in the convergent regime,
    * c2 : max ||a(f)|| / |v - v0|^lambda,
    * c3 : max ||a(f) - a(g)|| / (|v - v0| ||f - g||),
    over the pairs (f, g) made of consecutive iterates z_k, z_{k-1} of the direction v, and of the iterates and z0.
    Norms are the Hölder norms over the disk of radius (1 - epsilon) R.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from pseudoholo.errors import Errors
from pseudoholo.logger import get_module_logger
from pseudoholo.models import SolverConfig
from pseudoholo.solver.disk import solve_disk
from pseudoholo.solver.theta import Theta
from pseudoholo.structure import ChartSpec, TangentVector
from pseudoholo.transform import DiskGrid, holder_norm

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)


@dataclass(frozen=True)
class ContractionReport:

    offset: float
    ratio: float
    contraction_factor: float
    c2: float
    c3: float
    norm_prime: float
    distance_to_central: float
    iterations: int


def _coefficients_grid(chart: ChartSpec, f: DiskGrid) -> DiskGrid:
    """
    The n x n coefficients a(f), flattened as n^2 components.
    """

    return f.with_values(chart.a(f.values).reshape(f.size, -1), name="a(f)")


def measure_contraction(
    chart: ChartSpec,
    tv: TangentVector,
    tv0: TangentVector,
    R: float,
    cfg: Optional[SolverConfig] = None,
) -> ContractionReport:
    """
    Solve the disks of tv and tv0, then measure the contraction constants along the iterates of tv.

    Args:
        chart (ChartSpec): the chart.
        tv (TangentVector): the perturbed direction v.
        tv0 (TangentVector): the central direction v0, whose linear disk solves the equation.
        R (float): the disk radius.
        cfg (SolverConfig, optional): the numerical settings.
    """

    cfg = cfg or SolverConfig()
    offset = float(np.linalg.norm(tv.v - tv0.v))
    if offset == 0:
        raise Errors.E045()  # type: ignore

    solution = solve_disk(chart, tv, R, cfg=cfg, keep_iterates=True)
    central = solve_disk(chart, tv0, R, cfg=cfg).grid
    mask = solution.interior
    lam = chart.holder_lambda

    iterates = solution.iterates
    pairs: List[Tuple[DiskGrid, DiskGrid]] = [(iterates[k], iterates[k - 1]) for k in range(1, len(iterates))]
    pairs += [(iterate, central) for iterate in iterates]

    ratio = contraction_factor = c2 = c3 = 0.0
    for f, g in pairs:
        gap = holder_norm(f - g, lam=lam, mask=mask)
        if gap == 0:
            continue
        image_gap = holder_norm(Theta(chart, f, f, jobs=cfg.jobs) - Theta(chart, g, g, jobs=cfg.jobs), lam=lam, mask=mask)
        coefficients_gap = holder_norm(_coefficients_grid(chart, f) - _coefficients_grid(chart, g), lam=lam, mask=mask)

        contraction_factor = max(contraction_factor, image_gap / gap)
        ratio = max(ratio, image_gap / (offset**lam * gap))
        c3 = max(c3, coefficients_gap / (offset * gap))

    for f in iterates:
        c2 = max(c2, holder_norm(_coefficients_grid(chart, f), lam=lam, mask=mask) / offset**lam)

    report = ContractionReport(
        offset=offset,
        ratio=ratio,
        contraction_factor=contraction_factor,
        c2=c2,
        c3=c3,
        norm_prime=solution.norm_prime,
        distance_to_central=(solution.grid - central).sup_norm(mask),
        iterations=solution.iterations,
    )
    LOGGER.debug(f"contraction at offset {offset:.3e} : {report}")

    return report


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("contraction.py can't be run in standalone")
