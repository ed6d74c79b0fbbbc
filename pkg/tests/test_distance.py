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
# test_distance.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Test the paths, the integrated pseudodistance and the chains of disks
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

import numpy as np
import pytest

from pseudoholo.errors import Errors
from pseudoholo.metric import (
    DISK_CHAIN,
    PATH_INTEGRAL,
    PathSpec,
    chain_defect_slope,
    check_path,
    estimate_d_chain,
    estimate_dbar,
    exact_distance_model,
    node_pseudonorms,
    path_length,
    segment_contributions,
)
from pseudoholo.models import OptimizerConfig, SearchConfig, SolverConfig
from pseudoholo.structure import get_chart

#############################################################################
#                                  Script                                   #
#############################################################################

pytestmark = pytest.mark.filterwarnings("ignore::UserWarning")


@pytest.fixture
def search():
    return SearchConfig(r_min=1e-2, r_max=1e3)


@pytest.fixture
def cfg():
    return SolverConfig(resolution=(8, 16))


@pytest.fixture
def straight():
    """
    A quick optimizer : the straight path, with no sweep.
    """

    return OptimizerConfig(nodes=9, sweeps=0)


@pytest.fixture
def disk():
    return get_chart("unit-disk")


def test_path_needs_two_nodes():
    """
    A path has at least two nodes.
    """

    with pytest.raises(Errors.E062):
        PathSpec([[0.0]])

    with pytest.raises(Errors.E062):
        PathSpec.straight([0.0], [1.0], count=1)


def test_straight_path():
    """
    The segment has constant velocity q - p, joins p to q, and is reversed end for end.
    """

    p, q = np.array([0.0, 1j]), np.array([0.5, -0.5 + 1j])
    path = PathSpec.straight(p, q, count=5)

    assert path.count == 5 and path.n == 2
    assert np.array_equal(path.start, p) and np.array_equal(path.end, q)
    assert np.allclose(path.tangents, (q - p)[None, :])
    assert np.allclose(path.at(0.5), (p + q) / 2)
    assert np.allclose(path.velocity(0.3), q - p)

    back = path.reversed()
    assert np.array_equal(back.start, q) and np.array_equal(back.end, p)


def test_curved_path_tangents():
    """
    The second order differences are exact on a quadratic path.
    """

    t = np.linspace(0.0, 1.0, 7)
    path = PathSpec((t + 1j * t**2)[:, None])

    assert np.allclose(path.tangents[:, 0], 1 + 2j * t)


def test_check_path(disk):
    """
    Every node of the path must lie in the chart, and the dimensions must match.
    """

    with pytest.raises(Errors.E063) as error:
        check_path(disk, PathSpec([[0.0], [1.5], [0.5]]))
    assert error.value.details["index"] == 1

    with pytest.raises(Errors.E025):
        check_path(disk, PathSpec([[0.0, 0.0], [0.5, 0.0]]))


def test_segment_contributions():
    """
    The trapezoidal contributions of the segments.
    """

    contributions = segment_contributions([1.0, 3.0, 5.0], np.array([0.0, 0.5, 1.0]))
    assert np.allclose(contributions, [1.0, 2.0])


def test_path_length_on_unit_disk(disk, search, cfg):
    """
    The length of the radius [0, 1/2] is arctanh(1/2), within 5% at 64 segments.
    """

    length = path_length(disk, PathSpec.straight([0.0], [0.5], count=65), search=search, cfg=cfg)
    assert length == pytest.approx(np.arctanh(0.5), rel=0.05)


def test_node_failures_name_the_node(disk, cfg):
    """
    A failing pseudonorm estimate is reported with the index of its node.
    """

    with pytest.raises(Errors.E060) as error:
        node_pseudonorms(disk, PathSpec.straight([0.0], [0.5], count=3), search=SearchConfig(r_min=5.0, r_max=10.0), cfg=cfg)

    assert error.value.details["segment"] == 0


def test_same_points(disk):
    """
    The distance of a point to itself vanishes.
    """

    estimate = estimate_dbar(disk, [0.3j], [0.3j])
    assert estimate.value == 0.0


def test_points_outside_of_the_chart(disk, straight):
    """
    Both end points must lie in the chart.
    """

    with pytest.raises(Errors.E023):
        estimate_dbar(disk, [0.0], [1.0], optimizer=straight)


@pytest.mark.parametrize(
    "name, p, q",
    [
        ("unit-disk", [0.0], [0.5]),
        ("unit-disk", [0.0], [0.8j]),
        ("polydisk", [0.0, 0.0], [0.5, 0.0]),
        ("polydisk", [0.0, 0.0], [0.0, 0.8j]),
    ],
)
def test_distance_oracle(name, p, q, straight, search, cfg):
    """
    The integrated distance and the chain of disks agree with each other and with the Poincaré distance.
    """

    chart = get_chart(name)
    exact = exact_distance_model(chart, p, q)

    dbar = estimate_dbar(chart, p, q, optimizer=straight, search=search, cfg=cfg)
    chain = estimate_d_chain(chart, p, q, partition=64, search=search, cfg=cfg)

    assert dbar.method == PATH_INTEGRAL and chain.method == DISK_CHAIN
    assert 0.95 * exact <= dbar.value <= 1.10 * exact
    assert chain.value == pytest.approx(exact, rel=0.10)
    assert abs(chain.value - dbar.value) <= 0.10 * (chain.value + dbar.value) / 2


def test_optimizer_only_improves(disk, search, cfg):
    """
    The sweeps never lengthen the straight path, and the budget exhaustion is reported.
    """

    initial = estimate_dbar(disk, [0.0], [0.5], optimizer=OptimizerConfig(nodes=5, sweeps=0), search=search, cfg=cfg)

    with pytest.warns(UserWarning, match="budget"):
        optimized = estimate_dbar(disk, [0.0], [0.5], optimizer=OptimizerConfig(nodes=5, sweeps=1), search=search, cfg=cfg)

    assert optimized.value <= initial.value
    assert not optimized.converged
    assert len(optimized.details) == 4
    assert optimized.nodes.shape == (5, 1)
    assert np.array_equal(optimized.nodes[0], [0.0]) and np.array_equal(optimized.nodes[-1], [0.5])


def test_optimizer_is_deterministic(disk, search, cfg):
    """
    The coordinate search is seeded.
    """

    optimizer = OptimizerConfig(nodes=4, sweeps=1)
    first = estimate_dbar(disk, [0.1], [0.4j], optimizer=optimizer, search=search, cfg=cfg)
    second = estimate_dbar(disk, [0.1], [0.4j], optimizer=optimizer, search=search, cfg=cfg)

    assert first.value == second.value
    assert np.array_equal(first.nodes, second.nodes)


def test_standard_space_distance(search, cfg, straight):
    """
    The pseudodistance of C^n vanishes : the estimate is bounded by the search cap.
    """

    estimate = estimate_dbar(get_chart("std-C2"), [0, 0], [1, 1], optimizer=straight, search=search, cfg=cfg)
    assert estimate.value <= 1e-3 * (1 + 1e-9)


def _random_points(chart, rng, count):
    """
    Points inside 0.6 times the finite radii of the chart, and of modulus <= 2 along the infinite ones.
    """

    radii = np.array([0.6 * r if np.isfinite(r) else 2.0 for r in chart.domain])
    moduli = radii * np.sqrt(rng.random((count, chart.n)))
    return moduli * np.exp(2j * np.pi * rng.random((count, chart.n)))


@pytest.mark.parametrize("name", ["unit-disk", "polydisk", "disk-times-plane"])
def test_pseudodistance_axioms(name, search, cfg):
    """
    Symmetry and triangle inequality on random triples, within the estimation tolerance.
    """

    chart = get_chart(name)
    rng = np.random.default_rng(2)
    optimizer = OptimizerConfig(nodes=9, sweeps=0)

    def _d(a, b):
        return estimate_dbar(chart, a, b, optimizer=optimizer, search=search, cfg=cfg).value

    for _ in range(10):
        a, b, c = _random_points(chart, rng, 3)

        assert _d(a, b) == pytest.approx(_d(b, a), rel=3 * search.rtol)
        assert _d(a, c) <= 1.10 * (_d(a, b) + _d(b, c))


@pytest.mark.parametrize("name, p, q", [("unit-disk", [0.0], [0.5]), ("unit-disk", [0.1], [0.4j]), ("polydisk", [0.0, 0.2], [0.5, -0.3j])])
def test_doubling_the_nodes_never_lengthens(name, p, q, search, cfg):
    """
    Refining the straight path never increases the estimate by more than the bisection tolerance.
    """

    chart = get_chart(name)
    values = [
        estimate_dbar(chart, p, q, optimizer=OptimizerConfig(nodes=nodes, sweeps=0), search=search, cfg=cfg).value for nodes in (3, 5, 9, 17)
    ]

    for coarse, fine in zip(values, values[1:]):
        assert fine <= coarse * (1 + search.rtol)


def test_chain_defect_scales_quadratically(disk, search, cfg):
    """
    The witness disks leave the path at second order in the step.
    """

    slope = chain_defect_slope(disk, [0.0], [0.5], search=search, cfg=cfg)
    assert slope >= 1.8


def test_chain_reports_its_defects(disk, search, cfg):
    """
    The chain carries its per segment costs, the max defect and the induced bound.
    """

    chain = estimate_d_chain(disk, [0.0], [0.5], partition=16, search=search, cfg=cfg)

    assert chain.partition == 16
    assert len(chain.details) == 16
    assert chain.value == pytest.approx(sum(chain.details))
    assert chain.defect > 0
    assert 0 < chain.gap_bound <= 16 * chain.defect * 1.5
    assert chain.nodes.shape == (17, 1)


def test_chain_along_a_given_path(disk, search, cfg):
    """
    The chain follows the interpolated path, which must join the end points.
    """

    path = PathSpec([[0.0], [0.2 + 0.1j], [0.5]])
    chain = estimate_d_chain(disk, [0.0], [0.5], path=path, partition=32, search=search, cfg=cfg)
    assert chain.value >= 0.95 * np.arctanh(0.5)

    with pytest.raises(Errors.E064):
        estimate_d_chain(disk, [0.0], [0.5], path=PathSpec.straight([0.0], [0.4]), search=search, cfg=cfg)

    with pytest.raises(Errors.E062):
        estimate_d_chain(disk, [0.0], [0.5], partition=0, search=search, cfg=cfg)


def test_chain_in_parallel(disk, search, cfg):
    """
    The segments computed by several workers give the same chain.
    """

    sequential = estimate_d_chain(disk, [0.0], [0.3j], partition=8, search=search, cfg=cfg)
    parallel = estimate_d_chain(disk, [0.0], [0.3j], partition=8, search=search, cfg=cfg, jobs=3)

    assert sequential.details == parallel.details
