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
# test_pseudonorm.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Test the estimation of the pseudonorm from the radii of the solvable disks
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

import numpy as np
import pytest

from pseudoholo.errors import Errors
from pseudoholo.metric import (
    DIRECT,
    MODEL,
    check_monotonicity,
    estimate_F,
    exact_F_model,
    normalize_direction,
    schwarz_constant,
    sweep,
    witness_disk,
)
from pseudoholo.models import SearchConfig, SolverConfig
from pseudoholo.structure import TangentVector, get_chart

#############################################################################
#                                  Script                                   #
#############################################################################


@pytest.fixture
def search():
    return SearchConfig(r_min=1e-2, r_max=1e3)


@pytest.fixture
def cfg():
    return SolverConfig(resolution=(8, 16))


@pytest.fixture
def disk():
    return get_chart("unit-disk")


@pytest.mark.parametrize("p, v", [([0.0], [1.0]), ([0.5], [1.0]), ([0.0], [1j]), ([-0.3j], [0.2 + 0.1j])])
def test_unit_disk_oracle(disk, search, cfg, p, v):
    """
    On the unit disk, the estimate is an upper bound of |v| / (1 - |p|^2), within the bisection tolerance.
    """

    tv = TangentVector(p, v)
    exact = exact_F_model(disk, tv)
    estimate = estimate_F(disk, tv, search=search, cfg=cfg)

    assert exact <= estimate.value <= exact * (1 + search.rtol)
    assert estimate.value == pytest.approx(1 / estimate.witness_R, rel=1e-15)
    assert estimate.residual <= cfg.tol
    assert not estimate.capped


def test_off_center_estimates_use_the_model(disk, search, cfg):
    """
    Away from the center, the disks through p centered at p are not extremal : the recentered candidate wins.
    """

    estimate = estimate_F(disk, TangentVector([0.5], [1.0]), search=search, cfg=cfg)

    assert estimate.candidate == MODEL
    assert {step.candidate for step in estimate.search_log} == {DIRECT, MODEL}


def test_models_can_be_disabled(disk, cfg):
    """
    Without the model candidates, the estimate is the one of the centered disks.
    """

    search = SearchConfig(r_min=1e-2, r_max=1e3, use_models=False)
    estimate = estimate_F(disk, TangentVector([0.5], [1.0]), search=search, cfg=cfg)

    assert estimate.candidate == DIRECT
    assert 2.0 <= estimate.value <= 2.0 * (1 + search.rtol)


@pytest.mark.parametrize("v", [[0.3 - 0.1j], [0.7 + 0.2j]])
@pytest.mark.parametrize("t", [-2.0, -1.0, 0.5, 2.0, 0.5j, -4.0])
def test_homogeneity(disk, search, cfg, v, t):
    """
    F(tv) = |t| F(v), exactly when t is a signed power of two, possibly times i.
    """

    tv = TangentVector([0.25 + 0.25j], v)

    base = estimate_F(disk, tv, search=search, cfg=cfg).value
    scaled = estimate_F(disk, tv.scaled(t), search=search, cfg=cfg).value

    assert scaled == abs(t) * base


@pytest.mark.parametrize("v", [[0.3 - 0.1j], [0.7 + 0.2j]])
@pytest.mark.parametrize("t", [-2.0, -1.0, 0.5, 3.0, 0.1, 3j])
def test_homogeneity_up_to_rounding(disk, search, cfg, v, t):
    """
    Otherwise t v and max |t v_i| are rounded : F(tv) and |t| F(v) agree within a few ulps.
    """

    tv = TangentVector([0.25 + 0.25j], v)

    base = abs(t) * estimate_F(disk, tv, search=search, cfg=cfg).value
    scaled = estimate_F(disk, tv.scaled(t), search=search, cfg=cfg).value

    assert abs(scaled - base) <= 4 * np.spacing(base)


def test_zero_vector(disk, search, cfg):
    """
    The zero vector has a zero pseudonorm.
    """

    estimate = estimate_F(disk, TangentVector([0.2], [0.0]), search=search, cfg=cfg)
    assert estimate.value == 0.0


def test_standard_space_is_degenerate(search, cfg):
    """
    In C^n, every radius is solvable : the estimate is capped by 1 / r_max.
    """

    with pytest.warns(UserWarning, match="capped"):
        estimate = estimate_F(get_chart("std-C2"), TangentVector([1, 2j], [1, 1]), search=search, cfg=cfg)

    assert estimate.capped
    assert estimate.value <= 1e-3 + 1e-15


def test_perturbed_axis(search, cfg):
    """
    The axis disks of the perturbed chart are solutions up to the radius of the chart.
    """

    estimate = estimate_F(get_chart("perturbed-R4"), TangentVector([0, 0], [1, 0]), search=search, cfg=cfg)

    assert estimate.candidate == DIRECT
    assert 0.5 <= estimate.value <= 0.5 * (1 + search.rtol)


def test_unsolvable_at_scale(disk, cfg):
    """
    No radius above r_min fits in the chart.
    """

    with pytest.raises(Errors.E050):
        estimate_F(disk, TangentVector([0.0], [1.0]), search=SearchConfig(r_min=2.0, r_max=10.0), cfg=cfg)


def test_invalid_tangent_vectors(disk, search, cfg):
    """
    The vector must match the dimension of the chart, and its base must lie in the chart.
    """

    with pytest.raises(Errors.E025):
        estimate_F(disk, TangentVector([0, 0], [1, 0]), search=search, cfg=cfg)

    with pytest.raises(Errors.E023):
        estimate_F(disk, TangentVector([1.5], [1]), search=search, cfg=cfg)


def test_normalize_direction():
    """
    The direction is scaled by its max modulus and rotated to make its first non zero component real positive.
    """

    s, c, u = normalize_direction(np.array([0.0, 2j, 1.0]))

    assert s == 2.0
    assert c == pytest.approx(-1j)
    assert np.allclose(u, [0.0, 1.0, -0.5j])


@pytest.mark.parametrize("p", [[0.0], [0.5]])
def test_witness_disk(disk, search, cfg, p):
    """
    The witness disk goes through p, stays in the chart, and has the estimated radius.
    """

    estimate = estimate_F(disk, TangentVector(p, [1.0]), search=search, cfg=cfg)
    witness = witness_disk(disk, estimate, cfg=cfg)

    assert witness.radius == estimate.witness_R
    assert np.allclose(witness.along_diameter(0.0)[0], p, atol=1e-12)

    t = np.linspace(-0.99, 0.99, 11) * witness.radius
    assert disk.contains(witness.along_diameter(t)).all()


def test_monotonicity(disk, search, cfg):
    """
    The inclusion of the disk of radius 1/2 in the unit disk can't increase the pseudonorm : 1 <= 2.
    """

    tv = TangentVector([0.0], [1.0])
    report = check_monotonicity(get_chart("disk(0.5)"), disk, tv, search=search, cfg=cfg)

    assert report.passed
    assert report.small == pytest.approx(2.0, rel=2 * search.rtol)
    assert report.big == pytest.approx(1.0, rel=2 * search.rtol)

    same = check_monotonicity(disk, disk, tv, search=search, cfg=cfg)
    assert same.small == same.big


def test_monotonicity_through_a_linear_map(search, cfg):
    """
    A complex linear map of C^2 is holomorphic : both estimates vanish.
    """

    chart = get_chart("std-C2")
    A = np.array([[1.0, 2j], [0.0, 3.0]])

    def _push(tv: TangentVector) -> TangentVector:
        return TangentVector(A @ tv.p, A @ tv.v)

    with pytest.warns(UserWarning):
        report = check_monotonicity(chart, chart, TangentVector([0.1, 0.2], [1, 1j]), inclusion=_push, search=search, cfg=cfg)

    assert report.passed
    assert report.capped
    assert report.small < 1e-2 and report.big < 1e-2


def test_sweep(disk, search, cfg):
    """
    The sweep estimates every pair of base point and direction.
    """

    frame = sweep(disk, [[0.0], [0.5]], [[1.0], [1j], [2.0]], search=search, cfg=cfg)

    assert list(frame.columns) == ["p", "v", "value", "witness_R", "candidate", "iterations"]
    assert len(frame) == 6
    assert frame["value"].iloc[2] == 2 * frame["value"].iloc[0]


def test_sweep_in_parallel(disk, search, cfg):
    """
    The workers return the same table as the sequential sweep.
    """

    bases, directions = [[0.0], [0.25j], [-0.5]], [[1.0], [1j]]

    sequential = sweep(disk, bases, directions, search=search, cfg=cfg)
    parallel = sweep(disk, bases, directions, search=search, cfg=cfg, jobs=4)

    assert sequential.equals(parallel)


@pytest.mark.parametrize(
    "name, bases, directions",
    [
        ("unit-disk", [[0.0], [0.5]], [[1.0], [0.0]]),
        ("polydisk", [[0.0, 0.0], [0.5, 0.0], [0.0, -0.3j]], [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]),
        ("disk-times-plane", [[0.0, 0.0], [0.5, 5.0]], [[1.0, 0.0], [0.0, 1.0], [1.0, 1j]]),
    ],
)
def test_schwarz_constant(name, bases, directions, search, cfg):
    """
    The max of F(p, v) / |v| over the samples : a single finite constant per chart, bounding the exact one from above.
    """

    chart = get_chart(name)
    exact = max(exact_F_model(chart, TangentVector(p, v)) / np.linalg.norm(v) for p in bases for v in directions if np.any(v))

    value = schwarz_constant(chart, bases, directions, search=search, cfg=cfg)

    assert np.isfinite(value)
    assert exact <= value <= exact * (1 + search.rtol)


def test_schwarz_constant_needs_samples(disk, search, cfg):

    with pytest.raises(Errors.E073):
        schwarz_constant(disk, [[0.0]], [[0.0]], search=search, cfg=cfg)


@pytest.mark.parametrize("offset", [0.04, 0.02, 0.01])
def test_semicontinuity_near_the_axis(search, offset):
    """
    On the perturbed chart, the directions close to the axis certify almost the radius of the axis disk.
    """

    chart = get_chart("perturbed-R4")
    cfg = SolverConfig(resolution=(16, 32), tol=5e-3)

    axis = estimate_F(chart, TangentVector([0, 0], [1, 0]), search=search, cfg=cfg)
    near = estimate_F(chart, TangentVector([0, 0], [1, offset]), search=search, cfg=cfg)

    assert near.witness_R >= 0.9 * axis.witness_R
    assert near.value <= axis.value / 0.9
