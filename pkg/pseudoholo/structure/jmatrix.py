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
# jmatrix.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the matrix form J(z) of the almost complex structures, and its conversion to the coefficient field a(z).

    Real coordinates are interleaved : (x_1, y_1, ..., x_n, y_n) with z_k = x_k + i y_k, so that the standard structure J0 is the
    block diagonal matrix of the rotations [[0, -1], [1, 0]].

    Conversion. Let K = (J0 + J)^-1 (J0 - J), so that J = J0 (I - K) (I + K)^-1. When J^2 = -I, K anti-commutes with J0, hence
    acts on C^n as an anti-linear map y -> kappa * conj(y). A map z is J-holomorphic iff dz/dzbar = kappa(z) * conj(dz/dz), that is
    a(z) = -kappa(z) in the equation dz/dzbar + a(z) * conj(dz/dz) = 0.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Optional, Sequence, Tuple

# Third party
import numpy as np
from scipy.linalg import qr

# project
from pseudoholo.errors import Errors
from pseudoholo.logger import get_module_logger
from pseudoholo.models import JEntry
from pseudoholo.structure.polynomial import CoeffField, evaluate_monomials, monomial_exponents

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

TOL_J = 1e-9
DEFAULT_DEGREE = 4

# Fitted coefficients below this modulus are dropped
PRUNE_BELOW = 1e-10

# Condition number above which J0 + J is deemed singular
SINGULAR_CONDITION = 1e12


def J0(n: int) -> np.ndarray:
    """
    The standard structure of C^n in interleaved real coordinates.
    """

    return np.kron(np.eye(n), np.array([[0.0, -1.0], [1.0, 0.0]]))


def to_real(points: np.ndarray) -> np.ndarray:
    """
    Map (N, n) complex points to (N, 2n) interleaved real coordinates.
    """

    points = np.asarray(points, dtype=complex)
    real = np.empty(points.shape[:-1] + (2 * points.shape[-1],))
    real[..., 0::2] = points.real
    real[..., 1::2] = points.imag
    return real


def antilinear_matrix(kappa: np.ndarray) -> np.ndarray:
    """
    The real (.., 2n, 2n) matrix of the anti-linear map y -> kappa @ conj(y).
    """

    kappa = np.asarray(kappa, dtype=complex)
    n = kappa.shape[-1]
    matrix = np.zeros(kappa.shape[:-2] + (2 * n, 2 * n))
    matrix[..., 0::2, 0::2] = kappa.real
    matrix[..., 0::2, 1::2] = kappa.imag
    matrix[..., 1::2, 0::2] = kappa.imag
    matrix[..., 1::2, 1::2] = -kappa.real
    return matrix


def antilinear_part(matrix: np.ndarray) -> np.ndarray:
    """
    Read the coefficients kappa of the anti-linear part of a real (.., 2n, 2n) matrix.
    """

    k00 = matrix[..., 0::2, 0::2]
    k01 = matrix[..., 0::2, 1::2]
    k10 = matrix[..., 1::2, 0::2]
    k11 = matrix[..., 1::2, 1::2]
    return ((k00 - k11) + 1j * (k10 + k01)) / 2


class JMatrixField:
    """
    A field of real 2n x 2n matrices J(z) over C^n.
    """

    def __init__(self, n: int, func: Callable[[np.ndarray], np.ndarray], name: str = "J"):
        """
        Args:
            n (int): the complex dimension.
            func (Callable): maps a (N, n) array of complex points to the (N, 2n, 2n) array of matrices.
            name (str): a label for the diagnostics.
        """

        self.n = n
        self._func = func
        self.name = name

    @classmethod
    def constant(cls, matrix: Sequence[Sequence[float]], name: str = "J") -> "JMatrixField":

        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
            raise Errors.E027(shape=matrix.shape)  # type: ignore

        def _func(points: np.ndarray) -> np.ndarray:
            return np.broadcast_to(matrix, (points.shape[0],) + matrix.shape)

        return cls(matrix.shape[0] // 2, _func, name=name)

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[JEntry], name: str = "J") -> "JMatrixField":
        """
        Build the field from real polynomial entries in the interleaved coordinates. Missing entries are taken from J0.
        """

        base = J0(n)
        entries = list(entries)
        touched = {(entry.row, entry.col) for entry in entries}

        def _func(points: np.ndarray) -> np.ndarray:
            x = to_real(points)
            values = np.broadcast_to(base, (x.shape[0], 2 * n, 2 * n)).copy()
            for row, col in touched:
                values[:, row, col] = 0.0
            for entry in entries:
                for term in entry.terms:
                    values[:, entry.row, entry.col] += term.c * np.prod(x ** np.asarray(term.x, dtype=float)[None, :], axis=1)
            return values

        for entry in entries:
            if not (0 <= entry.row < 2 * n and 0 <= entry.col < 2 * n):
                raise Errors.E028(row=entry.row, col=entry.col, n=n, reason="out of range")  # type: ignore
            for term in entry.terms:
                if len(term.x) != 2 * n:
                    reason = f"a term has {len(term.x)} exponents instead of {2 * n}"
                    raise Errors.E028(row=entry.row, col=entry.col, n=n, reason=reason)  # type: ignore

        return cls(n, _func, name=name)

    @classmethod
    def from_coefficients(cls, coeff: CoeffField, name: str = "J(a)") -> "JMatrixField":
        """
        The structure J = J0 (I - K) (I + K)^-1 of the coefficient field, with K the anti-linear map of kappa = -a.
        """

        n = coeff.n
        identity = np.eye(2 * n)
        base = J0(n)

        def _func(points: np.ndarray) -> np.ndarray:
            k = antilinear_matrix(-coeff.evaluate(points))
            return base @ np.linalg.solve(np.swapaxes(identity + k, -1, -2), np.swapaxes(identity - k, -1, -2)).swapaxes(-1, -2)

        return cls(n, _func, name=name)

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate the field on a point, or on a (N, n) array of points.
        """

        points = np.asarray(points, dtype=complex)
        single = points.ndim == 1
        points = points.reshape(-1, self.n)

        values = np.asarray(self._func(points), dtype=float)
        return values[0] if single else values

    __call__ = evaluate

    def __repr__(self) -> str:
        return f"JMatrixField(name={self.name!r}, n={self.n})"


@dataclass(frozen=True)
class StructureReport:
    """
    The outcome of a J^2 = -I check.
    """

    deviation: float
    worst_point: Optional[Tuple[complex, ...]]
    tol: float
    points: int

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tol


def _evaluate(J: JMatrixField, points: np.ndarray) -> np.ndarray:
    """
    Evaluate J point by point, so that a failure names the offending point.
    """

    values = np.empty((points.shape[0], 2 * J.n, 2 * J.n))
    for index, point in enumerate(points):
        try:
            values[index] = J.evaluate(point)
        except BaseException as error:
            raise Errors.E021(point=tuple(point)) from error  # type: ignore

        if not np.all(np.isfinite(values[index])):
            raise Errors.E021(point=tuple(point))  # type: ignore

    return values


def validate_structure(J: JMatrixField, grid_points: Iterable[Sequence[complex]], tol_J: float = TOL_J) -> StructureReport:
    """
    Measure max ||J(z)^2 + I|| (spectral norm) over the grid points.

    Args:
        J (JMatrixField): the structure to check.
        grid_points: points of C^n.
        tol_J (float): the pass threshold.
    """

    points = np.asarray(list(grid_points), dtype=complex).reshape(-1, J.n)
    if points.shape[0] == 0:
        return StructureReport(deviation=0.0, worst_point=None, tol=tol_J, points=0)

    values = _evaluate(J, points)
    deviations = np.linalg.norm(values @ values + np.eye(2 * J.n), ord=2, axis=(1, 2))
    worst = int(np.argmax(deviations))

    report = StructureReport(deviation=float(deviations[worst]), worst_point=tuple(points[worst]), tol=tol_J, points=points.shape[0])
    LOGGER.debug(f"validated {J!r} on {report.points} points : deviation {report.deviation:.3e}")

    return report


def frame_normalize(Jp: np.ndarray, tol_J: float = TOL_J) -> np.ndarray:
    """
    Return a real change of frame L with L @ Jp @ L^-1 = J0.

    The +i eigenspace of Jp is the range of P = (I - i Jp) / 2. A pivoted QR of P gives an orthonormal basis w_1..w_n of it, and
    the matrix M whose columns are (Im w_k, Re w_k) intertwines J0 and Jp : Jp @ M = M @ J0. L is the inverse of M.

    Args:
        Jp (np.ndarray): a real 2n x 2n matrix with Jp^2 = -I.
        tol_J (float): tolerance on the Jp^2 = -I check.

    Returns:
        np.ndarray: the change of frame L.
    """

    Jp = np.asarray(Jp, dtype=float)
    size = Jp.shape[0]
    deviation = float(np.linalg.norm(Jp @ Jp + np.eye(size), ord=2))
    if size % 2 or deviation > tol_J:
        raise Errors.E020(deviation=deviation, tol=tol_J, point="<frame>")  # type: ignore

    n = size // 2
    projector = (np.eye(size) - 1j * Jp) / 2
    q, _, _ = qr(projector, pivoting=True)
    basis = q[:, :n]

    M = np.empty((size, size))
    M[:, 0::2] = basis.imag
    M[:, 1::2] = basis.real

    return np.linalg.inv(M)


def _kappa(J: JMatrixField, points: np.ndarray) -> np.ndarray:
    """
    The anti-linear coefficients kappa of K = (J0 + J)^-1 (J0 - J) at each point.
    """

    base = J0(J.n)
    values = _evaluate(J, points)

    kappas = np.empty((points.shape[0], J.n, J.n), dtype=complex)
    for index, (point, value) in enumerate(zip(points, values)):
        left = base + value
        if not np.linalg.cond(left) < SINGULAR_CONDITION:
            raise Errors.E022(point=tuple(point))  # type: ignore
        kappas[index] = antilinear_part(np.linalg.solve(left, base - value))

    return kappas


def coeffs_from_J(
    J: JMatrixField,
    sample_grid: Iterable[Sequence[complex]],
    degree: int = DEFAULT_DEGREE,
) -> CoeffField:
    """
    Sample a = -kappa on the grid and fit every entry by a polynomial in (z, zbar) of total degree <= 'degree'.
    The max fit error over the samples is stored in the 'fit_residual' attribute of the field.

    Args:
        J (JMatrixField): the structure, close enough to J0 for J0 + J to be invertible.
        sample_grid: the sample points.
        degree (int): the maximum total degree of the fitted polynomials.
    """

    n = J.n
    points = np.asarray(list(sample_grid), dtype=complex).reshape(-1, n)

    unknowns = comb(2 * n + degree, degree)
    if points.shape[0] < unknowns:
        raise Errors.E026(samples=points.shape[0], unknowns=unknowns)  # type: ignore

    samples = -_kappa(J, points).reshape(points.shape[0], n * n)

    exponents = monomial_exponents(n, degree)
    alpha = np.array([e[0] for e in exponents], dtype=int)
    beta = np.array([e[1] for e in exponents], dtype=int)
    design = evaluate_monomials(points, alpha, beta)

    solution, *_ = np.linalg.lstsq(design, samples, rcond=None)
    solution[np.abs(solution) < PRUNE_BELOW] = 0.0
    fit_residual = float(np.abs(design @ solution - samples).max())

    rows, cols, alphas, betas, coefficients = [], [], [], [], []
    for term, entry in zip(*np.nonzero(solution)):
        rows.append(entry // n)
        cols.append(entry % n)
        alphas.append(alpha[term])
        betas.append(beta[term])
        coefficients.append(solution[term, entry])

    coeff = CoeffField(
        n,
        rows,
        cols,
        np.reshape(alphas, (-1, n)),
        np.reshape(betas, (-1, n)),
        coefficients,
        fit_residual=fit_residual,
    )
    LOGGER.debug(f"fitted {coeff!r} from {J!r} on {points.shape[0]} samples, residual {fit_residual:.3e}")

    return coeff


def resubstitution_residual(
    J: JMatrixField,
    coeff: CoeffField,
    points: Iterable[Sequence[complex]],
    vectors: Optional[np.ndarray] = None,
) -> float:
    """
    Check that the coefficients describe J : for each test vector xi, the differential with dz = xi and dzbar = -a(z) conj(xi)
    must satisfy d/dt = J d/ds. Return the max relative defect |u_t - J u_s| / |xi|.

    Args:
        J (JMatrixField): the structure.
        coeff (CoeffField): the candidate coefficients.
        points: the evaluation points.
        vectors (np.ndarray, optional): (m, n) complex test vectors. Defaults to the basis vectors and their i-multiples.
    """

    n = J.n
    points = np.asarray(list(points), dtype=complex).reshape(-1, n)
    if vectors is None:
        vectors = np.concatenate((np.eye(n), 1j * np.eye(n)))
    vectors = np.asarray(vectors, dtype=complex).reshape(-1, n)

    values = _evaluate(J, points)
    a = coeff.evaluate(points)

    worst = 0.0
    for matrix, a_z in zip(values, a):
        d_z = vectors
        d_zbar = -np.conj(vectors) @ a_z.T
        u_s = to_real(d_z + d_zbar)
        u_t = to_real(1j * (d_z - d_zbar))
        defect = np.linalg.norm(u_t - u_s @ matrix.T, axis=1) / np.linalg.norm(vectors, axis=1)
        worst = max(worst, float(defect.max()))

    return worst


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("jmatrix.py can't be run in standalone")
