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
# test_structure.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Test the almost complex structures : the J matrix fields, the coefficient fields, the charts and the gallery
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

import numpy as np
import pytest

from pseudoholo.errors import Errors
from pseudoholo.models import ChartDefinition, CoefficientEntry, JEntry, PolynomialTerm, RealTerm
from pseudoholo.structure import (
    J0,
    ChartSpec,
    CoeffField,
    IntegrableModel,
    JMatrixField,
    TangentVector,
    coeffs_from_J,
    exact_distance_model,
    exact_F_model,
    frame_normalize,
    gallery_definition,
    get_chart,
    resubstitution_residual,
    sample_points,
    validate_structure,
)
from pseudoholo.structure.jmatrix import antilinear_matrix
from pseudoholo.utils import automorphism_stretch, disk_automorphism, inverse_disk_automorphism, poincare_distance

#############################################################################
#                                  Script                                   #
#############################################################################


def _conditioned(rng, size: int, condition: float = 10.0) -> np.ndarray:
    """
    A random real matrix with the given condition number.
    """

    u, _, vt = np.linalg.svd(rng.standard_normal((size, size)))
    return u @ np.diag(np.linspace(1.0, condition, size)) @ vt


@pytest.fixture
def points():
    return sample_points([1.0, 1.0], count=50)


@pytest.fixture
def perturbed():
    return get_chart("perturbed-R4")


def test_standard_structure_is_valid(points):
    """
    J0^2 = -I exactly.
    """

    report = validate_structure(JMatrixField.constant(J0(2)), points)

    assert report.passed
    assert report.deviation == 0.0
    assert report.points == 50


def test_conjugated_structure_is_valid(points):
    """
    A conjugate of J0 is a complex structure.
    """

    M = _conditioned(np.random.default_rng(3), 4)
    J = JMatrixField.constant(M @ J0(2) @ np.linalg.inv(M))

    assert validate_structure(J, points).passed


def test_symmetric_perturbation_is_rejected(points):
    """
    J0 + 0.01 S, with S symmetric, does not square to -I.
    """

    S = np.diag([1.0, 0.0, 0.0, 1.0])
    report = validate_structure(JMatrixField.constant(J0(2) + 0.01 * S), points, tol_J=1e-9)

    assert not report.passed
    assert report.deviation > 1e-3
    assert len(report.worst_point) == 2


def test_failing_evaluation_names_the_point():
    """
    An exception raised by the field is reported as an invalid input at the offending point.
    """

    def _broken(points):
        if np.any(np.abs(points) > 0.5):
            raise ZeroDivisionError()
        return np.broadcast_to(J0(1), (points.shape[0], 2, 2))

    with pytest.raises(Errors.E021):
        validate_structure(JMatrixField(1, _broken), [[0.1], [0.9]])


def test_invalid_constant_matrix():
    """
    A constant J must be an even sized square matrix.
    """

    with pytest.raises(Errors.E027):
        JMatrixField.constant(np.eye(3))


def test_polynomial_entries():
    """
    Polynomial entries replace the matching entries of J0. Out of range entries are rejected.
    """

    entries = [JEntry(row=0, col=0, terms=[RealTerm(x=[1, 0], c=2.0)])]
    J = JMatrixField.from_entries(1, entries)

    value = J.evaluate([0.5 + 0.25j])
    assert np.allclose(value, [[1.0, -1.0], [1.0, 0.0]])

    with pytest.raises(Errors.E028):
        JMatrixField.from_entries(1, [JEntry(row=2, col=0, terms=[])])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_frame_normalize_of_standard(n):
    """
    J0 is its own normal form.
    """

    L = frame_normalize(J0(n))
    assert np.abs(L @ J0(n) @ np.linalg.inv(L) - J0(n)).max() <= 1e-10


def test_frame_normalize_of_random_conjugates():
    """
    For 100 random conjugates M J0 M^-1 with condition number 10, the change of frame recovers J0.
    """

    rng = np.random.default_rng(11)
    for _ in range(100):
        M = _conditioned(rng, 4)
        Jp = M @ J0(2) @ np.linalg.inv(M)
        L = frame_normalize(Jp)

        assert np.abs(L @ Jp @ np.linalg.inv(L) - J0(2)).max() <= 1e-10


def test_frame_normalize_of_sheared_rotation():
    """
    The quarter turn written in a sheared basis of R^2.
    """

    S = np.array([[1.0, 2.0], [0.0, 1.0]])
    Jp = S @ J0(1) @ np.linalg.inv(S)
    L = frame_normalize(Jp)

    assert np.abs(L @ Jp @ np.linalg.inv(L) - J0(1)).max() <= 1e-10


def test_frame_normalize_rejects_non_structures():
    """
    The identity does not square to -I.
    """

    with pytest.raises(Errors.E020):
        frame_normalize(np.eye(2))


def test_coefficients_of_standard_structure():
    """
    J = J0 gives a = 0.
    """

    coeff = coeffs_from_J(JMatrixField.constant(J0(2)), sample_points([1.0, 1.0]), degree=2)

    assert coeff.is_zero
    assert coeff.fit_residual == 0.0


def test_coefficients_of_nilpotent_perturbation():
    """
    J = J0 + eps N, with N anti-linear and nilpotent, is a structure whose coefficients are a^1_2 = -i eps / 2.
    """

    eps = 0.05
    N = antilinear_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
    J = JMatrixField.constant(J0(2) + eps * N)
    points = sample_points([1.0, 1.0])

    assert validate_structure(J, points).passed

    coeff = coeffs_from_J(J, points, degree=2)
    values = coeff.evaluate(points)

    assert np.abs(values[:, 0, 1] + 0.5j * eps).max() < 1e-9
    assert np.abs(values[:, 0, 0]).max() < 1e-9
    assert np.abs(values[:, 1, :]).max() < 1e-9
    assert resubstitution_residual(J, coeff, points) <= 1e-8


def test_coefficients_round_trip_through_J(perturbed):
    """
    Rebuilding the coefficients from the matrix form of a chart recovers the chart's coefficients.
    """

    points = sample_points(perturbed.radii, count=300)
    coeff = coeffs_from_J(perturbed.jfield, points, degree=4)

    assert np.abs(coeff.evaluate(points) - perturbed.a(points)).max() < 1e-8
    assert resubstitution_residual(perturbed.jfield, perturbed.coeff, points) < 1e-10


def test_coefficients_need_enough_samples():
    """
    The polynomial fit needs at least as many samples as unknowns.
    """

    with pytest.raises(Errors.E026):
        coeffs_from_J(JMatrixField.constant(J0(2)), sample_points([1.0, 1.0], count=10), degree=4)


def test_coefficients_of_far_structure():
    """
    J = -J0 is a structure, but J0 + J is singular.
    """

    with pytest.raises(Errors.E022):
        coeffs_from_J(JMatrixField.constant(-J0(1)), sample_points([1.0], count=20), degree=1)


def test_coefficient_field_evaluation():
    """
    Evaluate a field built from chart entries.
    """

    entries = [CoefficientEntry(row=1, col=0, terms=[PolynomialTerm(z=[1, 0], zbar=[0, 2], c="0.5-1i")])]
    coeff = CoeffField.from_entries(2, entries)
    point = np.array([0.3 + 0.1j, -0.2j])

    expected = (0.5 - 1j) * point[0] * np.conj(point[1]) ** 2
    value = coeff.evaluate(point)

    assert value.shape == (2, 2)
    assert value[1, 0] == pytest.approx(expected)
    assert value[0, 0] == 0 and value[0, 1] == 0 and value[1, 1] == 0
    assert coeff.degree == 3
    assert coeff.sup_bound([1.0, 2.0]) == pytest.approx(abs(0.5 - 1j) * 4.0)


def test_coefficient_field_dimension_mismatch():
    """
    A term with the wrong number of exponents is rejected.
    """

    entries = [CoefficientEntry(row=0, col=0, terms=[PolynomialTerm(z=[1], zbar=[0], c=1.0)])]
    with pytest.raises(Errors.E025):
        CoeffField.from_entries(2, entries)


def test_sample_points_are_deterministic():
    """
    The samples lie in the shrunk polydisk, contain the origin, and do not depend on the call.
    """

    first = sample_points([2.0, float("inf")], count=40)
    second = sample_points([2.0, float("inf")], count=40)

    assert first.shape == (40, 2)
    assert np.array_equal(first, second)
    assert np.all(first[0] == 0)
    assert np.all(np.abs(first[:, 0]) <= 0.95 * 2.0)
    assert np.all(np.abs(first[:, 1]) <= 0.95)


def test_chart_domain(perturbed):
    """
    Points outside of the open polydisk are rejected.
    """

    assert perturbed.contains([[1.5, 0.5], [0.0, 0.99]]).all()
    assert not perturbed.contains([[0.0, 1.0]])[0]

    with pytest.raises(Errors.E023):
        perturbed.check_point([2.5, 0.0])


def test_perturbed_chart_vanishes_on_the_axis(perturbed):
    """
    The coefficients of the perturbed chart vanish on the axis z2 = 0, and nowhere else.
    """

    on_axis = np.array([[0.3, 0.0], [-1.2 + 0.5j, 0.0]])
    assert np.all(perturbed.a(on_axis) == 0)
    assert np.abs(perturbed.a([0.3, 0.2])).max() > 0

    assert not perturbed.is_standard
    assert perturbed.sup_bound == pytest.approx(0.1)


def test_chart_matrix_form_is_a_structure(perturbed):
    """
    The matrix form rebuilt from the coefficients squares to -I.
    """

    report = validate_structure(perturbed.jfield, sample_points(perturbed.radii))
    assert report.deviation < 1e-12


def test_chart_from_matrix_definition():
    """
    A chart given by a constant J gets fitted coefficients. A J failing J^2 = -I is rejected.
    """

    S = np.array([[1.0, 0.3], [0.0, 1.0]])
    definition = ChartDefinition(name="sheared", n=1, domain=[1.0], j_constant=(S @ J0(1) @ np.linalg.inv(S)).tolist())
    chart = ChartSpec.from_definition(definition, degree=2)

    points = sample_points([1.0], count=30)
    assert not chart.is_standard
    assert resubstitution_residual(chart.jfield, chart.coeff, points) < 1e-8

    bad = ChartDefinition(name="bad", n=1, domain=[1.0], j_constant=[[0.01, -1.0], [1.0, 0.0]])
    with pytest.raises(Errors.E020):
        ChartSpec.from_definition(bad)


def test_chart_definition_round_trip(perturbed):
    """
    The definition written back from a chart describes the same structure.
    """

    rebuilt = ChartSpec.from_definition(perturbed.to_definition())
    points = sample_points(perturbed.radii, count=20)

    assert rebuilt.domain == perturbed.domain
    assert np.array_equal(rebuilt.a(points), perturbed.a(points))


def test_charts_compare_by_definition():
    """
    Charts built twice from the same definition are equal and share their hash.
    """

    assert get_chart("unit-disk") == get_chart("unit-disk")
    assert hash(get_chart("polydisk")) == hash(get_chart("polydisk"))
    assert get_chart("unit-disk") != get_chart("disk(0.5)")


@pytest.mark.parametrize(
    "name, n, domain, model",
    [
        ("std-C3", 3, (float("inf"),) * 3, "euclidean"),
        ("unit-disk", 1, (1.0,), "polydisk"),
        ("disk(0.5)", 1, (0.5,), "polydisk"),
        ("polydisk(1,2)", 2, (1.0, 2.0), "polydisk"),
        ("perturbed-R4(0.1)", 2, (2.0, 1.0), None),
        ("disk-times-plane", 2, (1.0, float("inf")), "polydisk"),
    ],
)
def test_gallery(name, n, domain, model):
    """
    Check the gallery charts and their parameters.
    """

    chart = get_chart(name)

    assert chart.n == n
    assert chart.domain == domain
    assert chart.model == model


def test_gallery_unknown_and_malformed():
    """
    Unknown names and malformed parameters are rejected.
    """

    with pytest.raises(Errors.E014):
        gallery_definition("klein-bottle")

    with pytest.raises(Errors.E013):
        gallery_definition("disk(abc)")


def test_gallery_fibration():
    """
    The product chart is fibered over its first coordinate.
    """

    chart = get_chart("disk-times-plane")
    assert chart.fibration.base == [0]
    assert chart.is_standard


def test_registered_models():
    """
    The integrable models are registered by name.
    """

    assert IntegrableModel.models() == ["euclidean", "polydisk"]
    with pytest.raises(Errors.E051):
        IntegrableModel.get("hyperbolic-space")


@pytest.mark.parametrize(
    "model, p, v, expected",
    [
        ("unit-disk", [0.0], [1.0], 1.0),
        ("unit-disk", [0.5], [1.0], 4 / 3),
        ("unit-disk", [0.0], [1j], 1.0),
        ("std-C2", [1.0, 5.0], [3.0, 1j], 0.0),
        ("disk(0.5)", [0.0], [1.0], 2.0),
        ("polydisk", [0.5, 0.0], [1.0, 1.0], 4 / 3),
        ("disk-times-plane", [0.0, 7.0], [0.5, 100.0], 0.5),
    ],
)
def test_exact_pseudonorm(model, p, v, expected):
    """
    The closed forms of the pseudonorm on the integrable models.
    """

    assert exact_F_model(model, TangentVector(p, v)) == pytest.approx(expected)


def test_exact_pseudonorm_of_non_model():
    """
    A chart declaring no model has no closed form.
    """

    with pytest.raises(Errors.E051):
        exact_F_model("perturbed-R4", TangentVector([0, 0], [1, 0]))

    with pytest.raises(Errors.E051):
        exact_F_model("klein-bottle", TangentVector([0], [1]))


def test_exact_distance():
    """
    The closed forms of the pseudodistance on the integrable models.
    """

    assert exact_distance_model("unit-disk", [0.0], [0.5]) == pytest.approx(np.arctanh(0.5))
    assert exact_distance_model("polydisk", [0.0, 0.0], [0.5, 0.0]) == pytest.approx(np.arctanh(0.5))
    assert exact_distance_model("std-C2", [0.0, 0.0], [1.0, 1.0]) == 0.0


def test_poincare_distance():
    """
    The Poincaré distance is symmetric and invariant by the automorphisms.
    """

    z, w, p = 0.3 + 0.2j, -0.5j, 0.4 - 0.1j

    assert poincare_distance(z, w) == pytest.approx(poincare_distance(w, z))
    assert poincare_distance(disk_automorphism(z, p, 1.0), disk_automorphism(w, p, 1.0)) == pytest.approx(poincare_distance(z, w))


@pytest.mark.parametrize("r", [1.0, 2.5, float("inf")])
def test_disk_automorphism(r):
    """
    The automorphism sends p to 0, is inverted by its inverse, and has the expected derivative at p.
    """

    p = 0.3 - 0.4j
    zetas = np.array([0.0, 0.1j, -0.2 + 0.1j])

    assert abs(disk_automorphism(p, p, r)) < 1e-15
    assert np.allclose(inverse_disk_automorphism(disk_automorphism(zetas, p, r), p, r), zetas)

    step = 1e-6
    derivative = (disk_automorphism(p + step, p, r) - disk_automorphism(p - step, p, r)) / (2 * step)
    assert derivative == pytest.approx(float(automorphism_stretch(p, r)), rel=1e-6)
