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
# pseudonorm.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the estimator of the invariant pseudonorm

        F(v) = inf { 1 / r : f pseudoholomorphic disk of the chart, f(0) = p, df/dz(0) = r v }.

    A disk of radius R with derivative v at its center rescales to a unit disk with derivative R v, so that every solvable radius R
    certifies F(v) <= 1 / R. The estimator searches the largest certified radius by a geometric bisection and returns its inverse : the
    result is an upper bound on the pseudonorm restricted to the disks contained in a single chart.

    The search runs on the normalized direction u = c v / s, where s = max |v_i| and c is the unit complex number making the first
    non zero component of u real positive. The radius certified for u is rescaled by 1 / s.

    For the charts declaring an integrable model, the candidates also include the disks through the origin of the recentered chart,
    pulled back by the model automorphism sending p to 0.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple
from warnings import warn

# Third party
import numpy as np
import pandas as pd

# project
from pseudoholo.errors import Errors, Warnings
from pseudoholo.logger import get_module_logger
from pseudoholo.models import SearchConfig, SolverConfig, format_vector
from pseudoholo.solver import SOLVER_FAILURES, DiskSolution, solve_disk
from pseudoholo.structure import ChartSpec, IntegrableModel, TangentVector
from pseudoholo.utils.parallel import map_ordered

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

DIRECT = "direct"
MODEL = "model"


@dataclass(frozen=True)
class SearchStep:
    """
    One probed radius of the bisection.
    """

    candidate: str
    radius: float
    solved: bool
    outcome: str


@dataclass(frozen=True)
class _NormalizedSearch:

    radius: float
    candidate: str
    capped: bool
    residual: float
    iterations: int
    steps: Tuple[SearchStep, ...]


@dataclass(frozen=True)
class PseudonormEstimate:
    """
    An upper bound on the pseudonorm of 'tv', restricted to the disks contained in the chart.
    'value' is s / R, with R the largest certified radius for the normalized direction and s = max |v_i|, so that 'witness_R' = R / s
    is the largest certified radius for the direction tv.direction.
    """

    value: float
    witness_R: float
    tv: TangentVector
    candidate: str = DIRECT
    capped: bool = False
    residual: float = 0.0
    iterations: int = 0
    search_log: Tuple[SearchStep, ...] = ()

    @property
    def solves(self) -> int:
        return len(self.search_log)


def normalize_direction(v: np.ndarray) -> Tuple[float, complex, np.ndarray]:
    """
    Return (s, c, u) with s = max |v_i|, c the unit phase making the first non zero component of c v real positive, and u = c v / s.
    """

    moduli = np.abs(v)
    s = float(moduli.max())
    first = int(np.flatnonzero(moduli)[0])
    c = np.conj(v[first]) / moduli[first]
    return s, c, c * v / s


def _probe(chart: ChartSpec, tv: TangentVector, R: float, cfg: SolverConfig) -> Tuple[Optional[DiskSolution], str]:

    try:
        return solve_disk(chart, tv, R, cfg=cfg), "solved"
    except SOLVER_FAILURES as error:
        return None, error.code


def _bisect(
    chart: ChartSpec, tv: TangentVector, candidate: str, search: SearchConfig, cfg: SolverConfig
) -> Tuple[Optional[DiskSolution], bool, List[SearchStep]]:
    """
    Return the disk of the largest certified radius between r_min and r_max, whether it is capped by r_max, and the probes.
    """

    steps = []

    def _step(R: float) -> Optional[DiskSolution]:
        solution, outcome = _probe(chart, tv, R, cfg)
        steps.append(SearchStep(candidate=candidate, radius=R, solved=solution is not None, outcome=outcome))
        return solution

    best = _step(search.r_min)
    if best is None:
        return None, False, steps

    top = _step(search.r_max)
    if top is not None:
        return top, True, steps

    lo, hi = search.r_min, search.r_max
    while hi / lo > 1 + search.rtol:
        mid = float(np.sqrt(lo * hi))
        solution = _step(mid)
        if solution is None:
            hi = mid
        else:
            lo, best = mid, solution
        LOGGER.debug(f"bisection '{candidate}' on {tv!r} : [{lo:.6g}, {hi:.6g}]")

    return best, False, steps


@lru_cache(maxsize=4096)
def _search_normalized(chart: ChartSpec, unit: TangentVector, search: SearchConfig, cfg: SolverConfig) -> _NormalizedSearch:
    """
    Largest certified radius for a normalized direction. Cached : charts hash by their definition, configurations are frozen.
    """

    candidates: List[Tuple[str, TangentVector]] = [(DIRECT, unit)]
    if search.use_models and chart.model is not None:
        candidates.append((MODEL, IntegrableModel.get(chart.model).recenter(unit, chart.domain)))

    steps: List[SearchStep] = []
    best: Optional[Tuple[float, str, bool, DiskSolution]] = None
    for name, tv in candidates:
        solution, capped, probes = _bisect(chart, tv, name, search, cfg)
        steps += probes
        if solution is not None and (best is None or solution.radius > best[0]):
            best = (solution.radius, name, capped, solution)

    if best is None:
        reason = steps[-1].outcome if steps else "no candidate"
        raise Errors.E050(r_min=search.r_min, direction=unit.direction, base=unit.base, reason=reason)  # type: ignore

    radius, name, capped, solution = best
    return _NormalizedSearch(
        radius=radius, candidate=name, capped=capped, residual=solution.residual, iterations=solution.iterations, steps=tuple(steps)
    )


def estimate_F(
    chart: ChartSpec,
    tv: TangentVector,
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
) -> PseudonormEstimate:
    """
    Estimate the pseudonorm of 'tv' from above.

    Args:
        chart (ChartSpec): the chart.
        tv (TangentVector): the tangent vector, its base inside the chart.
        search (SearchConfig, optional): the radius bounds and the bisection tolerance.
        cfg (SolverConfig, optional): the disk solver settings.

    Raises:
        E050: no radius >= r_min is solvable.
    """

    search = search or SearchConfig()
    cfg = cfg or SolverConfig()
    if search.r_min >= search.r_max:
        raise Errors.E052(reason=f"r_min = {search.r_min} >= r_max = {search.r_max}")  # type: ignore
    if tv.n != chart.n:
        raise Errors.E025(got=tv.n, n=chart.n)  # type: ignore
    chart.check_point(tv.base)

    v = tv.v
    if not np.any(v != 0):
        return PseudonormEstimate(value=0.0, witness_R=float("inf"), tv=tv)

    s, _, u = normalize_direction(v)
    result = _search_normalized(chart, TangentVector(tv.base, u), search, cfg)

    witness_R = result.radius / s
    value = s / result.radius
    if result.capped:
        warn(Warnings.W050.format(r_max=search.r_max, direction=tv.direction, base=tv.base))

    return PseudonormEstimate(
        value=value,
        witness_R=witness_R,
        tv=tv,
        candidate=result.candidate,
        capped=result.capped,
        residual=result.residual,
        iterations=result.iterations,
        search_log=result.steps,
    )


@dataclass
class WitnessDisk:
    """
    The disk certifying an estimate, with derivative tv.direction at the center. 'frame' maps the solved disk into the chart.
    """

    solution: DiskSolution
    frame: Callable[[np.ndarray], np.ndarray]

    @property
    def radius(self) -> float:
        return self.solution.radius

    def along_diameter(self, t) -> np.ndarray:
        """
        The points of the chart reached by the disk at the real parameters t in [-R, R].
        """

        points = np.atleast_2d(self.solution.grid.evaluate_on_diameter(np.atleast_1d(t)))
        return self.frame(points)


def witness_disk(chart: ChartSpec, estimate: PseudonormEstimate, cfg: Optional[SolverConfig] = None) -> WitnessDisk:
    """
    Solve again the disk certifying 'estimate', for the direction of the estimate itself.
    """

    cfg = cfg or SolverConfig()
    tv = estimate.tv
    if estimate.candidate == MODEL:
        model = IntegrableModel.get(chart.model)
        solution = solve_disk(chart, model.recenter(tv, chart.domain), estimate.witness_R, cfg=cfg)

        def frame(points: np.ndarray) -> np.ndarray:
            return model.pull_back(points, tv.base, chart.domain)

    else:
        solution = solve_disk(chart, tv, estimate.witness_R, cfg=cfg)

        def frame(points: np.ndarray) -> np.ndarray:
            return points

    return WitnessDisk(solution=solution, frame=frame)


@dataclass(frozen=True)
class MonotonicityReport:
    """
    'capped' : the estimate on the big chart is capped by r_max, so that it bounds nothing but the search.
    """

    small: float
    big: float
    tolerance: float
    capped: bool = False

    @property
    def passed(self) -> bool:
        return self.capped or self.big <= self.small * (1 + self.tolerance) + 1e-12


def check_monotonicity(
    chart_small: ChartSpec,
    chart_big: ChartSpec,
    tv: TangentVector,
    inclusion: Optional[Callable[[TangentVector], TangentVector]] = None,
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
) -> MonotonicityReport:
    """
    Compare the estimates of tv in a chart and of its image in a bigger chart, by a pseudoholomorphic 'inclusion' (default :
    the identity of the coordinates). The pseudonorm can't increase : big <= small up to the bisection tolerance.
    """

    search = search or SearchConfig()
    image = tv if inclusion is None else inclusion(tv)

    small = estimate_F(chart_small, tv, search=search, cfg=cfg).value
    big = estimate_F(chart_big, image, search=search, cfg=cfg)
    report = MonotonicityReport(small=small, big=big.value, tolerance=search.rtol, capped=big.capped)
    LOGGER.debug(f"monotonicity {chart_small.name} -> {chart_big.name} : {report.small:.6g} vs {report.big:.6g}")

    return report


def sweep(
    chart: ChartSpec,
    bases: Iterable[Sequence[complex]],
    directions: Iterable[Sequence[complex]],
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> pd.DataFrame:
    """
    Estimate the pseudonorm over a lattice of base points and a fan of directions.

    Returns:
        pd.DataFrame: one row per (base, direction) with the columns p, v, value, witness_R, candidate, iterations.
    """

    pairs = [TangentVector(p, v) for p in bases for v in directions]
    estimates = map_ordered(lambda tv: estimate_F(chart, tv, search=search, cfg=cfg), pairs, jobs=jobs)

    return pd.DataFrame(
        {
            "p": [format_vector(e.tv.base) for e in estimates],
            "v": [format_vector(e.tv.direction) for e in estimates],
            "value": [e.value for e in estimates],
            "witness_R": [e.witness_R for e in estimates],
            "candidate": [e.candidate for e in estimates],
            "iterations": [e.iterations for e in estimates],
        }
    )


def schwarz_constant(
    chart: ChartSpec,
    bases: Iterable[Sequence[complex]],
    directions: Iterable[Sequence[complex]],
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> float:
    """
    The measured constant C_K = max F(p, v) / |v| over the sampled base points and directions.
    """

    pairs = [TangentVector(p, v) for p in bases for v in directions if np.any(np.asarray(v) != 0)]
    if not pairs:
        raise Errors.E073()  # type: ignore

    ratios = map_ordered(lambda tv: estimate_F(chart, tv, search=search, cfg=cfg).value / tv.norm, pairs, jobs=jobs)
    return float(max(ratios))


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("pseudonorm.py can't be run in standalone")
