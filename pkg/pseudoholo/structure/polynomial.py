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
# polynomial.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the coefficient field a^i_m(z) of the anti-linear part of an almost complex structure.

    Each entry is a polynomial sum_t c_t * z^alpha_t * conj(z)^beta_t. A field is stored as flat arrays of terms, so that
    evaluating it on N points is a handful of vectorized operations.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from itertools import product
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from pseudoholo.errors import Errors
from pseudoholo.models import CoefficientEntry, PolynomialTerm

#############################################################################
#                                  Script                                   #
#############################################################################


def monomial_exponents(n: int, degree: int) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """
    Return the exponents (alpha, beta) of the monomials z^alpha * conj(z)^beta of total degree <= 'degree', sorted by degree.
    """

    exponents = [e for e in product(range(degree + 1), repeat=2 * n) if sum(e) <= degree]
    exponents.sort(key=lambda e: (sum(e), tuple(-x for x in e)))
    return [(tuple(e[:n]), tuple(e[n:])) for e in exponents]


def _powers(points: np.ndarray, degree: int) -> np.ndarray:
    """
    Return the array p[:, k, d] = points[:, k] ** d, built by repeated multiplication.
    """

    powers = np.ones(points.shape + (degree + 1,), dtype=complex)
    for d in range(1, degree + 1):
        powers[..., d] = powers[..., d - 1] * points

    return powers


def evaluate_monomials(points: np.ndarray, alpha: np.ndarray, beta: np.ndarray) -> np.ndarray:
    """
    Evaluate the monomials of exponents (alpha, beta), of shape (T, n), on the (N, n) points. Return a (N, T) array.
    """

    n = points.shape[1]
    degree = int(max(alpha.max(initial=0), beta.max(initial=0)))
    columns = np.arange(n)[None, :]

    z_powers = _powers(points, degree)
    zbar_powers = _powers(np.conj(points), degree)

    return np.prod(z_powers[:, columns, alpha], axis=2) * np.prod(zbar_powers[:, columns, beta], axis=2)


class CoeffField:
    """
    The n x n field of polynomial coefficients a^i_m(z, zbar).
    """

    def __init__(
        self,
        n: int,
        rows: Sequence[int],
        cols: Sequence[int],
        alpha: Sequence[Sequence[int]],
        beta: Sequence[Sequence[int]],
        coefficients: Sequence[complex],
        fit_residual: float = 0.0,
    ):

        self.n = n
        self._rows = np.asarray(rows, dtype=int).reshape(-1)
        self._cols = np.asarray(cols, dtype=int).reshape(-1)
        self._alpha = np.asarray(alpha, dtype=int).reshape(-1, n)
        self._beta = np.asarray(beta, dtype=int).reshape(-1, n)
        self._coefficients = np.asarray(coefficients, dtype=complex).reshape(-1)
        self.fit_residual = fit_residual

        size = self._coefficients.shape[0]
        if not all(array.shape[0] == size for array in (self._rows, self._cols, self._alpha, self._beta)):
            raise ValueError("the terms arrays must share the same length")

        for index in np.concatenate((self._rows, self._cols)):
            if not 0 <= index < n:
                raise Errors.E025(got=int(index) + 1, n=n)  # type: ignore

        # One-hot selector mapping the terms onto the matrix entries
        self._selector = np.zeros((size, n, n))
        self._selector[np.arange(size), self._rows, self._cols] = 1.0

    @classmethod
    def zero(cls, n: int) -> "CoeffField":
        return cls(n, [], [], np.zeros((0, n)), np.zeros((0, n)), [])

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[CoefficientEntry]) -> "CoeffField":
        """
        Build a field from the validated entries of a chart definition. Entries are 0-indexed.
        """

        rows, cols, alpha, beta, coefficients = [], [], [], [], []
        for entry in entries:
            for term in entry.terms:
                if len(term.z) != n or len(term.zbar) != n:
                    raise Errors.E025(got=max(len(term.z), len(term.zbar)), n=n)  # type: ignore
                rows.append(entry.row)
                cols.append(entry.col)
                alpha.append(term.z)
                beta.append(term.zbar)
                coefficients.append(complex(*term.c))

        return cls(n, rows, cols, np.reshape(alpha, (-1, n)), np.reshape(beta, (-1, n)), coefficients)

    def to_entries(self) -> List[CoefficientEntry]:
        """
        Return the field as chart definition entries, one per non empty matrix entry.
        """

        entries = []
        for row, col in product(range(self.n), repeat=2):
            select = (self._rows == row) & (self._cols == col)
            if not np.any(select):
                continue
            terms = [
                PolynomialTerm(z=list(map(int, a)), zbar=list(map(int, b)), c=(c.real, c.imag))
                for a, b, c in zip(self._alpha[select], self._beta[select], self._coefficients[select])
            ]
            entries.append(CoefficientEntry(row=row, col=col, terms=terms))

        return entries

    @property
    def is_zero(self) -> bool:
        """
        Whether every entry vanishes identically (the standard structure).
        """

        return not np.any(self._coefficients != 0)

    @property
    def degree(self) -> int:
        if self._coefficients.size == 0:
            return 0
        return int((self._alpha.sum(axis=1) + self._beta.sum(axis=1)).max())

    @property
    def terms_count(self) -> int:
        return int(self._coefficients.shape[0])

    def evaluate(self, points: np.ndarray) -> np.ndarray:
        """
        Evaluate the field.

        Args:
            points (np.ndarray): a point of C^n, or a (N, n) array of points.

        Returns:
            np.ndarray: the (n, n) matrix a(z), or the (N, n, n) stack of matrices.
        """

        points = np.asarray(points, dtype=complex)
        single = points.ndim == 1
        points = points.reshape(-1, self.n)

        if self.is_zero:
            values = np.zeros((points.shape[0], self.n, self.n), dtype=complex)
        else:
            monomials = evaluate_monomials(points, self._alpha, self._beta) * self._coefficients[None, :]
            values = np.einsum("nt,tij->nij", monomials, self._selector)

        return values[0] if single else values

    __call__ = evaluate

    def sup_bound(self, radii: Sequence[float]) -> float:
        """
        Bound sup |a^i_m| over the polydisk of the given radii by the triangle inequality : sum |c| * prod r^(alpha + beta).
        Infinite radii give an infinite bound as soon as a non constant term depends on the matching coordinate.
        """

        if self.is_zero:
            return 0.0

        radii = np.asarray(radii, dtype=float)
        exponents = self._alpha + self._beta
        with np.errstate(invalid="ignore"):
            scales = np.where(exponents > 0, radii[None, :] ** exponents, 1.0)
        moduli = np.abs(self._coefficients)
        bounds = np.where(moduli > 0, moduli * np.prod(scales, axis=1), 0.0)

        per_entry = np.zeros((self.n, self.n))
        np.add.at(per_entry, (self._rows, self._cols), bounds)
        return float(per_entry.max())

    def __repr__(self) -> str:
        return f"CoeffField(n={self.n}, terms={self.terms_count}, degree={self.degree})"


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("polynomial.py can't be run in standalone")
