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
# scan.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the hyperbolicity scan : the pseudonorm of unit vectors over a compact sample of the chart.

    A chart is hyperbolic exactly when the pseudonorm of unit vectors is bounded away from zero on compact sets. The estimates are upper
    bounds, so the scan only reports evidence :
    * a small sup is genuine evidence of non hyperbolicity,
    * a large inf is evidence of hyperbolicity, up to the completeness of the disk search.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
from warnings import warn

# Third party
import numpy as np
import pandas as pd

# project
from pseudoholo.errors import Errors, Warnings
from pseudoholo.logger import get_module_logger
from pseudoholo.metric import estimate_F
from pseudoholo.models import ScanConfig, SearchConfig, SolverConfig, format_vector
from pseudoholo.structure import ChartSpec, TangentVector
from pseudoholo.utils.parallel import map_ordered

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

HYPERBOLIC = "hyperbolic-evidence"
NONHYPERBOLIC = "nonhyperbolic-evidence"
INCONCLUSIVE = "inconclusive"

EXIT_CODES = {HYPERBOLIC: 0, NONHYPERBOLIC: 1, INCONCLUSIVE: 2}

DISCLAIMER = "estimates are upper bounds : the verdict is numerical evidence, not a proof"


def direction_fan(n: int, count: int, seed: int = 7) -> np.ndarray:
    """
    Unit vectors of C^n : the coordinate axes first, then normalized complex gaussian draws. The fan of size m is a prefix of the fan of
    size m + 1.

    Returns:
        np.ndarray: a (count, n) array.
    """

    axes = np.eye(n, dtype=complex)[:count]
    extra = max(count - n, 0)
    rng = np.random.default_rng(seed)
    draws = np.array([rng.standard_normal(n) + 1j * rng.standard_normal(n) for _ in range(extra)]).reshape(extra, n)
    draws /= np.linalg.norm(draws, axis=1, keepdims=True)

    return np.concatenate((axes, draws))


def base_lattice(chart: ChartSpec, extent: float = 0.9, rings: int = 3) -> np.ndarray:
    """
    The origin, and along each coordinate axis the rings of radius extent * r_k * i / rings (i = 1..rings) with 4i points each.
    Infinite radii are replaced by 1.

    Returns:
        np.ndarray: a (count, n) array.
    """

    radii = np.where(np.isfinite(chart.radii), chart.radii, 1.0)
    points = [np.zeros(chart.n, dtype=complex)]
    for k in range(chart.n):
        for i in range(1, rings + 1):
            angles = 2 * np.pi * np.arange(4 * i) / (4 * i)
            for z in extent * radii[k] * i / rings * np.exp(1j * angles):
                point = np.zeros(chart.n, dtype=complex)
                point[k] = z
                points.append(point)

    return np.array(points)


@dataclass(frozen=True)
class ScanSample:

    point: Tuple[complex, ...]
    direction: Tuple[complex, ...]
    value: float
    witness_R: float
    status: str = "solved"


@dataclass
class ScanReport:
    """
    The extremes of F1, the minimum of the pseudonorm over the direction fan at each base point, and the verdict at threshold tau.
    """

    chart: str
    tau: float
    inf_F1: float
    sup_F1: float
    schwarz: float
    verdict: str
    samples: List[ScanSample] = field(default_factory=list)
    F1: Dict[Tuple[complex, ...], float] = field(default_factory=dict)
    failures: List[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.verdict]

    def summary(self) -> str:
        return (
            f"{self.chart} : {self.verdict} (inf F1 = {self.inf_F1:.6g}, sup F1 = {self.sup_F1:.6g}, tau = {self.tau}, "
            f"{len(self.samples)} samples, {len(self.failures)} failures) ; {DISCLAIMER}"
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "p": [format_vector(s.point) for s in self.samples],
                "v": [format_vector(s.direction) for s in self.samples],
                "value": [s.value for s in self.samples],
                "witness_R": [s.witness_R for s in self.samples],
                "status": [s.status for s in self.samples],
            }
        )


def verdict(inf_F1: float, sup_F1: float, tau: float, failed: bool = False) -> str:

    if failed:
        return INCONCLUSIVE
    if inf_F1 >= tau:
        return HYPERBOLIC
    if sup_F1 <= tau / 10:
        return NONHYPERBOLIC
    return INCONCLUSIVE


def scan(
    chart: ChartSpec,
    bases: Optional[Sequence[Sequence[complex]]] = None,
    directions: Optional[Sequence[Sequence[complex]]] = None,
    config: Optional[ScanConfig] = None,
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> ScanReport:
    """
    Estimate the pseudonorm of the Euclidean unit vectors over a sample of base points.

    Args:
        chart (ChartSpec): the chart.
        bases (optional): the compact sample K. Defaults to the base lattice of the config.
        directions (optional): the directions, normalized here. Defaults to the direction fan of the config.
        config (ScanConfig, optional): the lattice, the fan and the threshold tau.
        search (SearchConfig, optional): the pseudonorm search settings.
        cfg (SolverConfig, optional): the disk solver settings.
        jobs (int): workers over the (point, direction) pairs.
    """

    config = config or ScanConfig()
    if not config.tau > 0:
        raise Errors.E072(tau=config.tau)  # type: ignore

    bases = base_lattice(chart, config.extent, config.rings) if bases is None else np.asarray(bases, dtype=complex).reshape(-1, chart.n)
    if directions is None:
        directions = direction_fan(chart.n, config.directions, config.seed)
    directions = np.asarray(directions, dtype=complex).reshape(-1, chart.n)
    directions = directions[np.linalg.norm(directions, axis=1) > 0]
    directions = directions / np.linalg.norm(directions, axis=1, keepdims=True)
    if len(bases) == 0 or len(directions) == 0:
        raise Errors.E073()  # type: ignore

    pairs = [TangentVector(p, v) for p in bases for v in directions]

    def _sample(tv: TangentVector) -> ScanSample:
        try:
            estimate = estimate_F(chart, tv, search=search, cfg=cfg)
        except (Errors.E023, Errors.E050) as error:
            warn(Warnings.W070.format(point=tv.base, direction=tv.direction, reason=str(error)))
            return ScanSample(point=tv.base, direction=tv.direction, value=float("nan"), witness_R=float("nan"), status=error.code)
        return ScanSample(point=tv.base, direction=tv.direction, value=estimate.value, witness_R=estimate.witness_R)

    samples = map_ordered(_sample, pairs, jobs=jobs)
    solved = [s for s in samples if s.status == "solved"]
    failures = [f"{s.status} at {list(s.point)} in direction {list(s.direction)}" for s in samples if s.status != "solved"]

    F1: Dict[Tuple[complex, ...], float] = {}
    for s in solved:
        F1[s.point] = min(F1.get(s.point, float("inf")), s.value)

    if F1:
        inf_F1, sup_F1 = min(F1.values()), max(F1.values())
        schwarz = max(s.value for s in solved)
    else:
        inf_F1 = sup_F1 = schwarz = float("nan")

    report = ScanReport(
        chart=chart.name,
        tau=config.tau,
        inf_F1=inf_F1,
        sup_F1=sup_F1,
        schwarz=schwarz,
        verdict=verdict(inf_F1, sup_F1, config.tau, failed=bool(failures) or not F1),
        samples=samples,
        F1=F1,
        failures=failures,
    )
    LOGGER.info(report.summary())

    return report


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("scan.py can't be run in standalone")
