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
# chart.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the charts : an almost complex structure on a polydisk of C^n, and the tangent vectors of the chart.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence, Tuple

# Third party
import numpy as np

# project
from pseudoholo.errors import Errors
from pseudoholo.logger import get_module_logger
from pseudoholo.models import ChartDefinition, FibrationDefinition
from pseudoholo.structure.jmatrix import DEFAULT_DEGREE, TOL_J, JMatrixField, coeffs_from_J, resubstitution_residual, validate_structure
from pseudoholo.structure.polynomial import CoeffField, monomial_exponents

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

# Fraction of the chart radii covered by the samples of a J field
SAMPLE_EXTENT = 0.95
SAMPLE_SEED = 1729


def _as_complex_tuple(values) -> Tuple[complex, ...]:
    return tuple(complex(value) for value in np.atleast_1d(np.asarray(values, dtype=complex)))


@dataclass(frozen=True)
class TangentVector:
    """
    A tangent vector v at the point p of a chart. Both are stored as tuples of complex numbers, so that vectors are hashable.
    """

    base: Tuple[complex, ...]
    direction: Tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "base", _as_complex_tuple(self.base))
        object.__setattr__(self, "direction", _as_complex_tuple(self.direction))
        if len(self.base) != len(self.direction):
            raise Errors.E025(got=len(self.direction), n=len(self.base))  # type: ignore

    @property
    def n(self) -> int:
        return len(self.base)

    @property
    def p(self) -> np.ndarray:
        return np.array(self.base, dtype=complex)

    @property
    def v(self) -> np.ndarray:
        return np.array(self.direction, dtype=complex)

    @property
    def norm(self) -> float:
        """
        The Euclidean norm of the direction.
        """

        return float(np.linalg.norm(self.v))

    def scaled(self, t: complex) -> "TangentVector":
        return TangentVector(self.base, tuple(t * self.v))

    def __repr__(self) -> str:
        return f"TangentVector(p={list(self.base)}, v={list(self.direction)})"


class ChartSpec:
    """
    An almost complex structure on the polydisk of radii 'domain' of C^n, given by its coefficient field.
    Infinite radii stand for whole coordinate lines.

    Charts are immutable and compare equal when their definitions do.
    """

    def __init__(
        self,
        name: str,
        n: int,
        domain: Sequence[float],
        coeff: CoeffField,
        holder_lambda: float = 0.5,
        smoothness_k: int = 2,
        model: Optional[str] = None,
        fibration: Optional[FibrationDefinition] = None,
        jfield: Optional[JMatrixField] = None,
        fingerprint: Optional[str] = None,
    ):

        if not 0 < holder_lambda < 1:
            raise Errors.E024(value=holder_lambda)  # type: ignore
        if coeff.n != n:
            raise Errors.E025(got=coeff.n, n=n)  # type: ignore
        if len(domain) != n or not all(r > 0 for r in domain):
            raise Errors.E013(name=name, reason=f"expected {n} positive radii, got {list(domain)}")  # type: ignore

        self.name = name
        self.n = n
        self._radii = np.array(domain, dtype=float)
        self._radii.setflags(write=False)
        self.coeff = coeff
        self.holder_lambda = holder_lambda
        self.smoothness_k = smoothness_k
        self.model = model
        self.fibration = fibration
        self._jfield = jfield
        self._fingerprint = fingerprint

    @classmethod
    def from_definition(cls, definition: ChartDefinition, tol_J: float = TOL_J, degree: int = DEFAULT_DEGREE) -> "ChartSpec":
        """
        Build a chart from its validated definition. Charts given by a matrix J get their coefficients from a polynomial fit, after
        checking J^2 = -I on the samples.
        """

        jfield = None
        if definition.has_matrix:
            if definition.j_constant is not None:
                jfield = JMatrixField.constant(definition.j_constant, name=definition.name)
                if jfield.n != definition.n:
                    raise Errors.E025(got=jfield.n, n=definition.n)  # type: ignore
            else:
                jfield = JMatrixField.from_entries(definition.n, definition.j_polynomial, name=definition.name)

            points = sample_points(definition.domain, count=_sample_count(definition.n, degree))
            report = validate_structure(jfield, points, tol_J=tol_J)
            if not report.passed:
                raise Errors.E020(deviation=report.deviation, tol=tol_J, point=report.worst_point)  # type: ignore

            coeff = coeffs_from_J(jfield, points, degree=degree)
            residual = resubstitution_residual(jfield, coeff, points)
            LOGGER.info(f"chart '{definition.name}' : coefficients fitted up to degree {degree}, resubstitution residual {residual:.3e}")
        else:
            coeff = CoeffField.from_entries(definition.n, definition.coefficients)

        return cls(
            name=definition.name,
            n=definition.n,
            domain=definition.domain,
            coeff=coeff,
            holder_lambda=definition.holder_lambda,
            smoothness_k=definition.smoothness_k,
            model=definition.model,
            fibration=definition.fibration,
            jfield=jfield,
            fingerprint=definition.fingerprint(),
        )

    def to_definition(self) -> ChartDefinition:
        """
        Return the definition of the chart, with the structure given by its coefficients.
        """

        return ChartDefinition(
            name=self.name,
            n=self.n,
            domain=list(self._radii),
            holder_lambda=self.holder_lambda,
            smoothness_k=self.smoothness_k,
            model=self.model,
            fibration=self.fibration,
            coefficients=self.coeff.to_entries(),
        )

    @property
    def radii(self) -> np.ndarray:
        return self._radii

    @property
    def domain(self) -> Tuple[float, ...]:
        return tuple(float(r) for r in self._radii)

    @property
    def jfield(self) -> JMatrixField:
        """
        The matrix form of the structure : the one given by the definition, or the one rebuilt from the coefficients.
        """

        if self._jfield is None:
            self._jfield = JMatrixField.from_coefficients(self.coeff, name=self.name)
        return self._jfield

    @property
    def is_standard(self) -> bool:
        return self.coeff.is_zero

    @cached_property
    def sup_bound(self) -> float:
        return self.coeff.sup_bound(self._radii)

    @cached_property
    def fingerprint(self) -> str:
        if self._fingerprint is None:
            self._fingerprint = self.to_definition().fingerprint()
        return self._fingerprint

    def a(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate the coefficient field.
        """

        return self.coeff.evaluate(points)

    def contains(self, points: np.ndarray) -> np.ndarray:
        """
        Whether each point of a (N, n) array lies in the open polydisk.
        """

        points = np.asarray(points, dtype=complex).reshape(-1, self.n)
        return np.all(np.abs(points) < self._radii[None, :], axis=1)

    def check_point(self, point: Sequence[complex]) -> None:
        if not self.contains(point)[0]:
            raise Errors.E023(point=tuple(point), radii=self.domain)  # type: ignore

    def __hash__(self) -> int:
        return hash(self.fingerprint)

    def __eq__(self, other) -> bool:
        return isinstance(other, ChartSpec) and self.fingerprint == other.fingerprint

    def __repr__(self) -> str:
        return f"ChartSpec(name={self.name!r}, n={self.n}, domain={list(self.domain)}, model={self.model!r})"


def _sample_count(n: int, degree: int) -> int:
    return max(4 * len(monomial_exponents(n, degree)), 200)


def sample_points(radii: Sequence[float], count: int = 200, extent: float = SAMPLE_EXTENT, seed: int = SAMPLE_SEED) -> np.ndarray:
    """
    Draw 'count' points uniformly in the polydisk of radii extent * radii (infinite radii are replaced by 1). The origin is always included.

    Returns:
        np.ndarray: a (count, n) array.
    """

    radii = np.where(np.isfinite(radii), np.asarray(radii, dtype=float), 1.0) * extent
    rng = np.random.default_rng(seed)

    moduli = np.sqrt(rng.random((count, radii.shape[0]))) * radii[None, :]
    angles = 2 * np.pi * rng.random((count, radii.shape[0]))
    points = moduli * np.exp(1j * angles)
    points[0] = 0.0

    return points


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("chart.py can't be run in standalone")
