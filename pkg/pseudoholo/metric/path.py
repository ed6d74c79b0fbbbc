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
# path.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the sampled paths of a chart and their length int_0^1 F(gamma'(t)) dt.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from functools import cached_property
from typing import List, Optional, Sequence

# Third party
import numpy as np
from scipy.integrate import trapezoid
from scipy.interpolate import CubicSpline

# project
from pseudoholo.errors import Errors
from pseudoholo.metric.pseudonorm import PseudonormEstimate, estimate_F
from pseudoholo.models import SearchConfig, SolverConfig
from pseudoholo.structure import ChartSpec, TangentVector
from pseudoholo.utils.parallel import map_ordered

#############################################################################
#                                  Script                                   #
#############################################################################


class PathSpec:
    """
    A path gamma : [0, 1] -> C^n sampled at uniformly spaced parameters. Tangents are second order finite differences.
    """

    def __init__(self, nodes: Sequence[Sequence[complex]]):

        nodes = np.array(nodes, dtype=complex)
        if nodes.ndim == 1:
            nodes = nodes[:, None]
        if nodes.shape[0] < 2:
            raise Errors.E062(count=nodes.shape[0])  # type: ignore

        nodes.setflags(write=False)
        self._nodes = nodes

    @classmethod
    def straight(cls, p: Sequence[complex], q: Sequence[complex], count: int = 2) -> "PathSpec":
        """
        The segment from p to q sampled at 'count' nodes.
        """

        if count < 2:
            raise Errors.E062(count=count)  # type: ignore

        p = np.asarray(p, dtype=complex)
        q = np.asarray(q, dtype=complex)
        t = np.linspace(0.0, 1.0, count)[:, None]
        nodes = (1 - t) * p[None, :] + t * q[None, :]
        nodes[0], nodes[-1] = p, q
        return cls(nodes)

    @property
    def nodes(self) -> np.ndarray:
        return self._nodes

    @property
    def count(self) -> int:
        return self._nodes.shape[0]

    @property
    def n(self) -> int:
        return self._nodes.shape[1]

    @property
    def parameters(self) -> np.ndarray:
        return np.linspace(0.0, 1.0, self.count)

    @cached_property
    def tangents(self) -> np.ndarray:
        """
        The velocities gamma'(t) at the nodes.
        """

        edge_order = 2 if self.count >= 3 else 1
        return np.gradient(self._nodes, self.parameters, axis=0, edge_order=edge_order)

    @property
    def start(self) -> np.ndarray:
        return self._nodes[0]

    @property
    def end(self) -> np.ndarray:
        return self._nodes[-1]

    def tangent_vectors(self) -> List[TangentVector]:
        return [TangentVector(p, v) for p, v in zip(self._nodes, self.tangents)]

    @cached_property
    def _spline(self):
        return (
            CubicSpline(self.parameters, self._nodes.real, axis=0),
            CubicSpline(self.parameters, self._nodes.imag, axis=0),
        )

    def at(self, t) -> np.ndarray:
        """
        Interpolate the path at the parameters t in [0, 1] with a cubic spline through the nodes.
        """

        real, imag = self._spline
        return real(t) + 1j * imag(t)

    def velocity(self, t) -> np.ndarray:
        real, imag = self._spline
        return real(t, 1) + 1j * imag(t, 1)

    def with_nodes(self, nodes: np.ndarray) -> "PathSpec":
        return PathSpec(nodes)

    def reversed(self) -> "PathSpec":
        return PathSpec(self._nodes[::-1])

    def __repr__(self) -> str:
        return f"PathSpec(count={self.count}, start={list(self.start)}, end={list(self.end)})"


def check_path(chart: ChartSpec, path: PathSpec) -> None:
    """
    Raise if a node of the path lies outside of the chart.
    """

    if path.n != chart.n:
        raise Errors.E025(got=path.n, n=chart.n)  # type: ignore

    inside = chart.contains(path.nodes)
    if not np.all(inside):
        index = int(np.argmin(inside))
        raise Errors.E063(index=index, point=tuple(path.nodes[index]))  # type: ignore


def node_pseudonorms(
    chart: ChartSpec,
    path: PathSpec,
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> List[PseudonormEstimate]:
    """
    Estimate F(gamma'(t)) at every node. A failure names the node.
    """

    check_path(chart, path)
    vectors = path.tangent_vectors()

    def _estimate(index: int) -> PseudonormEstimate:
        try:
            return estimate_F(chart, vectors[index], search=search, cfg=cfg)
        except Errors.E050 as error:
            raise Errors.E060(segment=index, reason=str(error)) from error  # type: ignore

    return map_ordered(_estimate, range(path.count), jobs=jobs)


def path_length(
    chart: ChartSpec,
    path: PathSpec,
    search: Optional[SearchConfig] = None,
    cfg: Optional[SolverConfig] = None,
    jobs: int = 1,
) -> float:
    """
    The trapezoidal quadrature of int_0^1 F(gamma'(t)) dt over the path nodes.
    """

    values = [estimate.value for estimate in node_pseudonorms(chart, path, search=search, cfg=cfg, jobs=jobs)]
    return float(trapezoid(values, path.parameters))


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("path.py can't be run in standalone")
