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
# models.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    implements models serialization for charts definitions, numerical configurations and run manifests
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
import hashlib
import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from pydantic import BaseModel, Extra, Field, validator
from pydantic.json import pydantic_encoder

#############################################################################
#                                  Script                                   #
#############################################################################


def parse_complex(value: Union[str, float, int, complex, List[float], Tuple[float, float]]) -> complex:
    """
    Parse a complex number written as a number, a [re, im] pair, or a 're+imi' string ('0.5-2i', '3i', '1').
    """

    if isinstance(value, complex):
        return value
    if isinstance(value, (int, float)):
        return complex(float(value), 0.0)
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"a complex pair must have two items, got {value}")
        return complex(float(value[0]), float(value[1]))

    token = str(value).strip().replace(" ", "")
    if not token:
        raise ValueError("empty complex number")
    if token.endswith("i") or token.endswith("j"):
        token = token[:-1]
        if token == "" or token[-1] in "+-":
            token += "1"
        token += "j"

    return complex(token)


def format_vector(vector) -> str:
    """
    Write a complex vector in the command line format, with round trip precision : '0.5+0.0i,1.0-2.0i'.
    """

    return ",".join(f"{z.real!r}{'+' if z.imag >= 0 else '-'}{abs(z.imag)!r}i" for z in map(complex, vector))


class Pyproject(BaseModel, extra=Extra.forbid):
    """
    The parsed configurations from the '[tool.pseudoholo]' section of the project.toml
    """

    charts: Optional[Path]
    out: Optional[Path]
    jobs: Optional[int]
    tol_j: Optional[float]
    poly_degree: Optional[int]
    solver_tol: Optional[float]
    solver_max_iter: Optional[int]
    solver_epsilon: Optional[float]
    solver_resolution: Optional[Tuple[int, int]]
    solver_delta: Optional[float]
    search_r_min: Optional[float]
    search_r_max: Optional[float]
    search_rtol: Optional[float]
    optimizer_nodes: Optional[int]
    optimizer_sweeps: Optional[int]
    scan_tau: Optional[float]
    scan_directions: Optional[int]
    scan_extent: Optional[float]
    scan_rings: Optional[int]
    chart_epsilon: Optional[float]

    def dict(self):
        """
        Return a dictionary of non None fields
        """
        return {k: v for k, v in self.__dict__.items() if v is not None}


class SolverConfig(BaseModel):
    """
    Numerical settings of the disk solver.
    The shrink 'epsilon' is relative : the residual is measured on the disk of radius (1 - epsilon) * R.
    """

    tol: float = 1e-8
    max_iter: int = 50
    epsilon: float = 0.1
    resolution: Tuple[int, int] = (32, 64)
    delta: Optional[float] = None
    jobs: int = 1

    class Config:
        frozen = True
        extra = Extra.forbid

    @validator("tol")
    def _positive_tol(cls, value):
        if not value > 0:
            raise ValueError(f"tol must be positive, got {value}")
        return value

    @validator("max_iter", "jobs")
    def _positive_count(cls, value):
        if value < 1:
            raise ValueError(f"expected a positive integer, got {value}")
        return value

    @validator("epsilon")
    def _relative_shrink(cls, value):
        if not 0 < value < 1:
            raise ValueError(f"epsilon is a relative shrink and must lie in (0, 1), got {value}")
        return value

    @validator("resolution")
    def _resolvable(cls, value):
        n_r, n_theta = value
        if n_r < 4 or n_theta < 4 or n_theta % 2:
            raise ValueError(f"resolution must be at least 4x4 with an even number of angles, got {n_r}x{n_theta}")
        return value

    @validator("delta")
    def _positive_delta(cls, value):
        if value is not None and not value > 0:
            raise ValueError(f"delta must be positive, got {value}")
        return value

    @property
    def transverse_delta(self) -> float:
        """
        The transverse polydisk size : delta when given, else epsilon.
        """

        return self.epsilon if self.delta is None else self.delta


class SearchConfig(BaseModel):
    """
    Bounds of the radius bisection used by the pseudonorm estimator.
    """

    r_min: float = 1e-3
    r_max: float = 1e4
    rtol: float = 0.01
    use_models: bool = True

    class Config:
        frozen = True
        extra = Extra.forbid

    @validator("r_min", "rtol")
    def _positive(cls, value):
        if not value > 0:
            raise ValueError(f"expected a positive value, got {value}")
        return value

    @validator("r_max")
    def _ordered(cls, value, values):
        if "r_min" in values and not value > values["r_min"]:
            raise ValueError(f"r_max must be larger than r_min, got {value}")
        return value


class OptimizerConfig(BaseModel):
    """
    Budget of the coordinatewise path search. Steps are relative to the distance between the end points.
    """

    nodes: int = 9
    sweeps: int = 4
    initial_step: float = 0.05
    min_step: float = 1e-3
    seed: int = 0

    class Config:
        frozen = True
        extra = Extra.forbid

    @validator("nodes")
    def _at_least_two(cls, value):
        if value < 2:
            raise ValueError(f"a path needs at least two nodes, got {value}")
        return value

    @validator("sweeps")
    def _non_negative(cls, value):
        if value < 0:
            raise ValueError(f"the sweep budget can't be negative, got {value}")
        return value


class ScanConfig(BaseModel):
    """
    Sampling of the unit tangent bundle and verdict threshold of the hyperbolicity scan.
    """

    tau: float = 0.5
    directions: int = 4
    extent: float = 0.9
    rings: int = 3
    seed: int = 7

    class Config:
        frozen = True
        extra = Extra.forbid

    @validator("directions", "rings")
    def _positive_count(cls, value):
        if value < 1:
            raise ValueError(f"expected a positive integer, got {value}")
        return value

    @validator("extent")
    def _inside(cls, value):
        if not 0 < value < 1:
            raise ValueError(f"extent is relative to the chart radii and must lie in (0, 1), got {value}")
        return value


class PolynomialTerm(BaseModel, extra=Extra.forbid):
    """
    A monomial c * z^alpha * conj(z)^beta.
    """

    z: List[int]
    zbar: List[int]
    c: Tuple[float, float]

    @validator("c", pre=True)
    def _complex(cls, value):
        value = parse_complex(value)
        return (value.real, value.imag)

    @validator("z", "zbar", each_item=True)
    def _natural(cls, value):
        if value < 0:
            raise ValueError(f"exponents must be non negative, got {value}")
        return value


class CoefficientEntry(BaseModel, extra=Extra.forbid):
    """
    The polynomial giving the entry a^row_col of the anti-linear coefficient field.
    """

    row: int
    col: int
    terms: List[PolynomialTerm] = Field(default_factory=list)


class RealTerm(BaseModel, extra=Extra.forbid):
    """
    A real monomial c * x^alpha in the interleaved real coordinates (Re z1, Im z1, Re z2, ...).
    """

    x: List[int]
    c: float


class JEntry(BaseModel, extra=Extra.forbid):
    """
    The polynomial giving the entry J[row, col] of a structure matrix field.
    """

    row: int
    col: int
    terms: List[RealTerm] = Field(default_factory=list)


class FibrationDefinition(BaseModel, extra=Extra.forbid):
    """
    A product fibration : the projection keeps the 'base' coordinates, the leaves are the affine planes spanned by the other ones.
    """

    name: str
    base: List[int]


class ChartDefinition(BaseModel, extra=Extra.forbid):
    """
    Represents the definition of a chart : an almost complex structure on a polydisk of C^n.
    The structure is given either by the coefficients of the anti-linear part, or by the matrix J.
    """

    name: str
    n: int = Field(ge=1)
    domain: List[float]
    holder_lambda: float = 0.5
    smoothness_k: int = Field(default=2, ge=0)
    model: Optional[str] = None
    fibration: Optional[FibrationDefinition] = None
    coefficients: List[CoefficientEntry] = Field(default_factory=list)
    j_constant: Optional[List[List[float]]] = None
    j_polynomial: Optional[List[JEntry]] = None

    @validator("domain", each_item=True)
    def _positive_radius(cls, value):
        if not value > 0:
            raise ValueError(f"chart radii must be positive, got {value}")
        return value

    @validator("domain")
    def _dimension(cls, value, values):
        if "n" in values and len(value) != values["n"]:
            raise ValueError(f"expected {values['n']} radii, got {len(value)}")
        return value

    @validator("j_polynomial")
    def _single_structure(cls, value, values):
        if value is not None and values.get("j_constant") is not None:
            raise ValueError("'j_constant' and 'j_polynomial' are mutually exclusive")
        return value

    @property
    def has_matrix(self) -> bool:
        return self.j_constant is not None or self.j_polynomial is not None

    def fingerprint(self) -> str:
        """
        Return the sha256 of the canonical json representation of the chart.
        """

        payload = json.dumps(self.dict(), default=pydantic_encoder, sort_keys=True)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class RunManifest(BaseModel):
    """
    Represent a run manifest : the command, the chart, and the full configuration echo of a CLI run.
    Replaying a manifest reproduces the run outputs.
    """

    command: str
    chart: Optional[str]
    chart_hash: Optional[str]
    config: Dict[str, Any]
    version: str
    started_at: str
    elapsed_seconds: float = math.nan
    outputs: List[str] = Field(default_factory=list)


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("model.py can't be run in standalone")
