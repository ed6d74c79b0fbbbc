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
# test_transform.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Test the polar grids, the Cauchy-Green transform, the Wirtinger derivatives and the Hölder norms
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

import numpy as np
import pytest

from pseudoholo.errors import Errors
from pseudoholo.transform import DiskGrid, apply_T, c1_estimate, dbar, dz, holder_norm, holder_prime_norm, holder_seminorm, polar_layout

#############################################################################
#                                  Script                                   #
#############################################################################


@pytest.fixture
def identity():
    """
    The function zeta -> zeta on the unit disk.
    """

    return DiskGrid.from_function(1.0, (16, 32), lambda zeta: zeta, name="identity")


def test_layout_areas_sum_to_the_disk_area():
    """
    The cells of a polar layout must tile the disk.
    """

    layout = polar_layout(2.0, 12, 24)

    assert layout.size == 1 + 12 * 24
    assert layout.areas.sum() == pytest.approx(4 * np.pi, rel=1e-12)
    assert layout.ring_radii[-1] == pytest.approx(2.0)


def test_grid_rejects_invalid_inputs():
    """
    Check the errors raised on bad radii, bad shapes, non finite values and odd angular resolutions.
    """

    with pytest.raises(Errors.E046):
        DiskGrid(0.0, (4, 8), 0.0)

    with pytest.raises(Errors.E032):
        DiskGrid(1.0, (4, 8), np.zeros(5))

    with pytest.raises(Errors.E031):
        DiskGrid(1.0, (4, 8), np.full(1 + 4 * 8, np.nan))

    with pytest.raises(Errors.E035):
        DiskGrid(1.0, (4, 7), 0.0)


def test_grid_arithmetic(identity):
    """
    Grids of the same layout can be added and scaled. Grids of different layouts can't.
    """

    doubled = identity + identity
    assert np.allclose(doubled.values, 2 * identity.values)
    assert np.allclose((identity - identity).values, 0.0)
    assert np.allclose((1j * identity).values, 1j * identity.values)

    other = DiskGrid.from_function(2.0, (16, 32), lambda zeta: zeta)
    with pytest.raises(Errors.E032):
        identity + other


def test_grid_is_read_only(identity):
    """
    The values of a grid can't be modified in place.
    """

    with pytest.raises(ValueError):
        identity.values[0, 0] = 1.0


def test_diameter_interpolation(identity):
    """
    The identity evaluated along the real diameter returns the real parameter.
    """

    s = np.array([-0.75, -0.1, 0.0, 0.33, 0.9])
    values = identity.evaluate_on_diameter(s)

    assert np.allclose(values[:, 0], s, atol=1e-12)


def test_dump_and_load(tmp_path):
    """
    Check that a dumped grid is read back with its layout, its exponent and its values.
    """

    grid = DiskGrid.from_function(1.5, (6, 12), lambda zeta: np.stack((zeta**2, np.conj(zeta) + 1j), axis=1), lam=0.3)
    path = tmp_path / "grid.txt"
    grid.dump(path)

    loaded = DiskGrid.load(path)
    assert loaded.radius == grid.radius
    assert loaded.resolution == grid.resolution
    assert loaded.lam == grid.lam
    assert np.array_equal(loaded.values, grid.values)


def test_load_rejects_garbage(tmp_path):
    """
    Loading a file that is not a grid dump raises a parsing error.
    """

    path = tmp_path / "garbage.txt"
    path.write_text("not a grid\n1 2 3\n")

    with pytest.raises(Errors.E034):
        DiskGrid.load(path)


def test_transform_of_zero():
    """
    T 0 = 0
    """

    zero = DiskGrid(1.0, (8, 16), 0.0)
    assert np.all(apply_T(zero).values == 0)


@pytest.mark.parametrize("radius", [1.0, 0.5, 3.0])
def test_transform_of_one(radius):
    """
    T 1 (w) = conj(w) on the disk of radius R.
    """

    one = DiskGrid(radius, (16, 32), 1.0)
    transformed = apply_T(one)

    assert np.allclose(transformed.values[:, 0], np.conj(transformed.nodes), atol=1e-12)


def test_transform_of_zeta():
    """
    T zeta (w) = |w|^2 - R^2 on the disk of radius R.
    """

    radius = 1.5
    f = DiskGrid.from_function(radius, (16, 32), lambda zeta: zeta)
    transformed = apply_T(f)

    expected = np.abs(f.nodes) ** 2 - radius**2
    assert np.allclose(transformed.values[:, 0], expected, atol=1e-10)


def test_transform_is_a_right_inverse_of_dbar():
    """
    dbar T f = f, up to the discretization error.
    """

    f = DiskGrid.from_function(1.0, (16, 32), lambda zeta: zeta)
    mask = f.interior_mask(0.1)

    assert np.abs(dbar(apply_T(f)).values - f.values)[mask].max() < 1e-8


def _random_cubic(seed: int):
    """
    A polynomial in (zeta, conj(zeta)) of degree <= 3 with seeded random coefficients.
    """

    rng = np.random.default_rng(seed)
    powers = [(a, b) for a in range(4) for b in range(4) if a + b <= 3]
    coefficients = rng.normal(size=len(powers)) + 1j * rng.normal(size=len(powers))

    def func(zeta):
        return sum(c * zeta**a * np.conj(zeta) ** b for c, (a, b) in zip(coefficients, powers))

    return func


CUBICS = [
    lambda zeta: np.conj(zeta) ** 3,
    lambda zeta: zeta**2 * np.conj(zeta),
    lambda zeta: zeta * np.conj(zeta) ** 2 + np.conj(zeta),
    lambda zeta: np.abs(zeta) ** 2,
    _random_cubic(7),
]


@pytest.mark.parametrize("func", CUBICS)
def test_pompeiu_error_shrinks_under_refinement(func):
    """
    max |dbar T f - f| over |w| <= 0.9 decreases at each refinement of the grid.
    """

    errors = []
    for resolution in [(16, 32), (32, 64), (64, 128)]:
        f = DiskGrid.from_function(1.0, resolution, func)
        mask = f.interior_mask(0.1)
        errors.append(np.abs(dbar(apply_T(f)).values - f.values)[mask].max())

    assert errors[1] <= errors[0] / 1.5
    assert errors[2] <= errors[1] / 1.5
    assert errors[2] <= 5e-2


def test_transform_is_complex_linear():
    """
    T(alpha f + beta g) = alpha Tf + beta Tg, to round-off.
    """

    f = DiskGrid.from_function(1.0, (16, 32), CUBICS[0])
    g = DiskGrid.from_function(1.0, (16, 32), CUBICS[1])
    alpha, beta = 0.7 - 1.2j, -2.0 + 0.3j

    combined = apply_T(f * alpha + g * beta)
    expected = apply_T(f) * alpha + apply_T(g) * beta

    assert np.allclose(combined.values, expected.values, rtol=0, atol=1e-11)


def test_c1_is_stable_under_refinement():
    """
    The measured constant of ||Tf||' <= c1 ||f|| moves by less than 10% when the grid is refined.
    """

    family = [np.conj, CUBICS[1], CUBICS[3]]

    coarse = c1_estimate([DiskGrid.from_function(1.0, (32, 64), func) for func in family])
    fine = c1_estimate([DiskGrid.from_function(1.0, (64, 128), func) for func in family])

    assert 0 < coarse < np.inf
    assert fine == pytest.approx(coarse, rel=0.10)


def test_c1_of_zero_family():
    """
    A family of zero functions measures nothing.
    """

    with pytest.raises(Errors.E033):
        c1_estimate([DiskGrid(1.0, (8, 16), 0.0)])


def test_transform_parallel_matches_sequential():
    """
    The transform computed by several workers is identical to the sequential one.
    """

    f = DiskGrid.from_function(1.0, (16, 32), lambda zeta: np.conj(zeta) ** 2 + zeta)

    assert np.array_equal(apply_T(f, jobs=1).values, apply_T(f, jobs=3).values)


def test_wirtinger_of_holomorphic_square():
    """
    d(zeta^2)/dzbar = 0 and d(zeta^2)/dz = 2 zeta, up to O(h^2).
    """

    f = DiskGrid.from_function(1.0, (32, 64), lambda zeta: zeta**2)

    assert np.abs(dbar(f).values[:, 0]).max() < 1e-2
    assert np.abs(dz(f).values[:, 0] - 2 * f.nodes).max() < 1e-2


def test_wirtinger_of_modulus_square():
    """
    d|zeta|^2/dzbar = zeta and d|zeta|^2/dz = conj(zeta).
    """

    f = DiskGrid.from_function(1.0, (16, 32), lambda zeta: np.abs(zeta) ** 2)

    assert np.allclose(dbar(f).values[:, 0], f.nodes, atol=1e-9)
    assert np.allclose(dz(f).values[:, 0], np.conj(f.nodes), atol=1e-9)


def test_wirtinger_of_constant():
    """
    Both derivatives of a constant vanish.
    """

    f = DiskGrid(2.0, (8, 16), 3.0 - 1j)

    assert np.abs(dbar(f).values).max() < 1e-12
    assert np.abs(dz(f).values).max() < 1e-12


def test_wirtinger_too_coarse():
    """
    Derivatives need at least 4 rings.
    """

    with pytest.raises(Errors.E030):
        dz(DiskGrid(1.0, (2, 8), 1.0))


def test_holder_norm_of_constant():
    """
    The Hölder norm of a constant is its modulus.
    """

    f = DiskGrid(1.0, (8, 16), 3.0 + 4.0j)
    assert holder_norm(f, lam=0.5) == pytest.approx(5.0)


def test_holder_norm_of_identity(identity):
    """
    The identity has sup norm 1 and Hölder seminorm 2^(1/2) on the unit disk.
    """

    assert holder_seminorm(identity, lam=0.5) == pytest.approx(np.sqrt(2), rel=1e-12)
    assert holder_norm(identity, lam=0.5) == pytest.approx(1 + np.sqrt(2), rel=1e-12)


def test_holder_prime_norm_of_identity(identity):
    """
    ||zeta||' is the Hölder norm of the constant 1.
    """

    assert holder_prime_norm(identity, lam=0.5) == pytest.approx(1.0, abs=1e-6)


def test_holder_norm_on_a_subgrid(identity):
    """
    Restricting the norm to the disk of radius 1/2 shrinks both the sup and the seminorm.
    """

    mask = identity.interior_mask(0.5)
    assert holder_norm(identity, lam=0.5, mask=mask) == pytest.approx(0.5 + 1.0, rel=1e-12)


@pytest.mark.parametrize("lam", [0.0, 1.0, -0.2])
def test_holder_exponent_out_of_range(identity, lam):
    """
    The Hölder exponent must lie in (0, 1).
    """

    with pytest.raises(Errors.E024):
        holder_norm(identity, lam=lam)
