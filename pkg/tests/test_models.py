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
# test_models.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Test the serialization models : complex numbers, chart definitions and numerical configurations
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

import pytest
from pydantic import ValidationError

from pseudoholo.models import (
    ChartDefinition,
    OptimizerConfig,
    PolynomialTerm,
    ScanConfig,
    SearchConfig,
    SolverConfig,
    format_vector,
    parse_complex,
)

#############################################################################
#                                  Script                                   #
#############################################################################


@pytest.mark.parametrize(
    "raw, expected",
    [
        ("1", 1),
        ("0.5-2i", 0.5 - 2j),
        ("3i", 3j),
        ("-i", -1j),
        ("1+i", 1 + 1j),
        (" 2 - 0.5 i ", 2 - 0.5j),
        ("1e-3+2j", 1e-3 + 2j),
        (2, 2),
        (0.25, 0.25),
        ([1.0, -1.0], 1 - 1j),
        (1j, 1j),
    ],
)
def test_parse_complex(raw, expected):
    """
    Numbers, [re, im] pairs and 're+imi' strings.
    """

    assert parse_complex(raw) == expected


@pytest.mark.parametrize("raw", ["", "a+bi", "1,2", [1.0, 2.0, 3.0]])
def test_parse_complex_invalid(raw):
    """
    Malformed numbers are rejected.
    """

    with pytest.raises(ValueError):
        parse_complex(raw)


def test_format_vector():
    """
    The command line format, parsed back exactly.
    """

    vector = [0.1 + 0.2j, -1 / 3, -2.5j]
    formatted = format_vector(vector)

    assert formatted.split(",")[1] == "-0.3333333333333333+0.0i"
    assert [parse_complex(token) for token in formatted.split(",")] == vector


def test_polynomial_term():
    """
    Coefficients accept every complex notation, exponents are natural numbers.
    """

    assert PolynomialTerm(z=[1, 0], zbar=[0, 1], c="0.5-1i").c == (0.5, -1.0)
    assert PolynomialTerm(z=[0], zbar=[0], c=[0.0, 2.0]).c == (0.0, 2.0)

    with pytest.raises(ValidationError):
        PolynomialTerm(z=[-1], zbar=[0], c=1)


@pytest.mark.parametrize(
    "fields",
    [
        {"n": 2, "domain": [1.0]},
        {"n": 1, "domain": [0.0]},
        {"n": 1, "domain": [-1.0]},
        {"n": 0, "domain": []},
        {"n": 1, "domain": [1.0], "j_constant": [[0.0, -1.0], [1.0, 0.0]], "j_polynomial": []},
        {"n": 1, "domain": [1.0], "unknown": 1},
    ],
)
def test_chart_definition_invalid(fields):
    """
    Radii are positive and match the dimension, a structure is given once.
    """

    with pytest.raises(ValidationError):
        ChartDefinition(name="invalid", **fields)


def test_chart_definition_fingerprint():
    """
    The fingerprint identifies the content of a definition.
    """

    first = ChartDefinition(name="disk", n=1, domain=[1.0], model="polydisk")
    same = ChartDefinition(name="disk", n=1, domain=[1.0], model="polydisk")
    other = ChartDefinition(name="disk", n=1, domain=[2.0], model="polydisk")

    assert first.fingerprint() == same.fingerprint()
    assert first.fingerprint() != other.fingerprint()
    assert len(first.fingerprint()) == 64
    assert not first.has_matrix


@pytest.mark.parametrize(
    "model, fields",
    [
        (SolverConfig, {"tol": 0.0}),
        (SolverConfig, {"max_iter": 0}),
        (SolverConfig, {"epsilon": 1.0}),
        (SolverConfig, {"resolution": (2, 16)}),
        (SolverConfig, {"resolution": (8, 15)}),
        (SolverConfig, {"delta": -0.1}),
        (SearchConfig, {"r_min": 0.0}),
        (SearchConfig, {"r_min": 2.0, "r_max": 1.0}),
        (OptimizerConfig, {"nodes": 1}),
        (OptimizerConfig, {"sweeps": -1}),
        (ScanConfig, {"directions": 0}),
        (ScanConfig, {"extent": 1.0}),
        (ScanConfig, {"unknown": 1}),
    ],
)
def test_configs_invalid(model, fields):
    """
    The numerical configurations validate their settings.
    """

    with pytest.raises(ValidationError):
        model(**fields)


def test_configs_are_frozen():
    """
    Configurations are hashable values.
    """

    cfg = SolverConfig()

    assert hash(cfg) == hash(SolverConfig())
    assert cfg.transverse_delta == cfg.epsilon
    assert cfg.copy(update={"delta": 0.2}).transverse_delta == 0.2

    with pytest.raises(TypeError):
        cfg.tol = 1.0


def test_solver_defaults():
    """
    Desk scale defaults : the 128x256 grid is opt in.
    """

    cfg = SolverConfig()

    assert cfg.resolution == (32, 64)
    assert cfg.tol == 1e-8
    assert SolverConfig(resolution=(128, 256)).resolution == (128, 256)
