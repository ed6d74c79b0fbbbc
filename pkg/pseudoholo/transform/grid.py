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
# grid.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the polar disk grid carrying the candidate disks and the transforms outputs.

    The nodes of a radius R disk at resolution n_r x n_theta are the origin, then the rings r_i = i * R / n_r (i = 1..n_r),
    each sampled at the angles 2 * pi * j / n_theta. Node 0 is the origin, the ring nodes follow ring by ring.

    Each node carries the area of its cell :
    * origin : the disk of radius h / 2,
    * interior rings : the annular sector r * h * dtheta,
    * outer ring : the truncated sector between R - h / 2 and R,
    so that the areas sum to pi * R^2.

    Text dump format (one header line per field, then one line per node with the interleaved real and imaginary parts):

        # pseudoholo disk grid
        # radius <R>
        # resolution <n_r> <n_theta>
        # components <n>
        # lambda <lambda>
        <re_1> <im_1> ... <re_n> <im_n>
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Optional, Tuple, Union

# Third party
import numpy as np
from scipy.interpolate import CubicSpline

# project
from pseudoholo.errors import Errors

#############################################################################
#                                  Script                                   #
#############################################################################

_HEADER = "pseudoholo disk grid"


@dataclass(frozen=True)
class PolarLayout:
    """
    The geometry of a polar grid : nodes, cells areas and angular phases.
    Arrays are read only and shared between the grids of the same layout.
    """

    radius: float
    n_r: int
    n_theta: int
    nodes: np.ndarray
    areas: np.ndarray
    moduli: np.ndarray
    phases: np.ndarray

    @property
    def size(self) -> int:
        return 1 + self.n_r * self.n_theta

    @property
    def h(self) -> float:
        return self.radius / self.n_r

    @property
    def d_theta(self) -> float:
        return 2 * np.pi / self.n_theta

    @property
    def mesh(self) -> float:
        """
        The max mesh size max(R / n_r, 2 pi R / n_theta).
        """

        return max(self.h, self.radius * self.d_theta)

    @property
    def ring_radii(self) -> np.ndarray:
        return self.h * np.arange(1, self.n_r + 1)


@lru_cache(maxsize=128)
def polar_layout(radius: float, n_r: int, n_theta: int) -> PolarLayout:
    """
    Build (and cache) the layout of a polar grid.
    """

    if n_r < 1 or n_theta < 4:
        raise Errors.E030(n_r=n_r, n_theta=n_theta, operation="a polar grid", minimum=1)  # type: ignore
    if n_theta % 2:
        raise Errors.E035(n_theta=n_theta)  # type: ignore

    h = radius / n_r
    d_theta = 2 * np.pi / n_theta
    phases = np.exp(1j * d_theta * np.arange(n_theta))
    rings = h * np.arange(1, n_r + 1)

    nodes = np.concatenate(([0j], (rings[:, None] * phases[None, :]).ravel()))

    ring_areas = rings * h * d_theta
    ring_areas[-1] = 0.5 * (radius**2 - (radius - h / 2) ** 2) * d_theta
    areas = np.concatenate(([np.pi * (h / 2) ** 2], np.repeat(ring_areas, n_theta)))
    moduli = np.concatenate(([0.0], np.repeat(rings, n_theta)))

    for array in (nodes, areas, moduli, phases):
        array.setflags(write=False)

    return PolarLayout(radius=float(radius), n_r=n_r, n_theta=n_theta, nodes=nodes, areas=areas, moduli=moduli, phases=phases)


class DiskGrid:
    """
    A complex vector valued function sampled on a polar grid of the disk of radius R.
    Grids are immutable : arithmetic returns new grids sharing the layout.
    """

    def __init__(
        self,
        radius: float,
        resolution: Tuple[int, int],
        values: Union[np.ndarray, complex],
        lam: float = 0.5,
        name: str = "grid",
    ):

        if not radius > 0:
            raise Errors.E046(R=radius)  # type: ignore

        n_r, n_theta = resolution
        self._layout = polar_layout(float(radius), int(n_r), int(n_theta))
        self.lam = lam
        self.name = name

        values = np.array(values, dtype=complex)
        if values.ndim == 0:
            values = np.full((self._layout.size, 1), values)
        elif values.ndim == 1:
            values = values[:, None]

        if values.shape[0] != self._layout.size:
            raise Errors.E032(reason=f"expected {self._layout.size} nodes, got {values.shape[0]}")  # type: ignore
        if values.shape[1] == 0:
            raise Errors.E033()  # type: ignore
        if not np.all(np.isfinite(values)):
            raise Errors.E031(name=name)  # type: ignore

        values.setflags(write=False)
        self._values = values

    @classmethod
    def from_function(
        cls,
        radius: float,
        resolution: Tuple[int, int],
        func: Callable[[np.ndarray], np.ndarray],
        lam: float = 0.5,
        name: str = "grid",
    ) -> "DiskGrid":
        """
        Sample 'func' (mapping the complex nodes array to the values) on the polar grid.
        """

        layout = polar_layout(float(radius), *resolution)
        return cls(radius, resolution, func(layout.nodes), lam=lam, name=name)

    def with_values(self, values: np.ndarray, name: Optional[str] = None) -> "DiskGrid":
        """
        Return a grid of the same layout carrying 'values'.
        """

        return DiskGrid(self.radius, self.resolution, values, lam=self.lam, name=name or self.name)

    # Geometry
    @property
    def layout(self) -> PolarLayout:
        return self._layout

    @property
    def radius(self) -> float:
        return self._layout.radius

    @property
    def resolution(self) -> Tuple[int, int]:
        return (self._layout.n_r, self._layout.n_theta)

    @property
    def nodes(self) -> np.ndarray:
        return self._layout.nodes

    @property
    def mesh(self) -> float:
        return self._layout.mesh

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def size(self) -> int:
        return self._values.shape[0]

    @property
    def components(self) -> int:
        return self._values.shape[1]

    def interior_mask(self, shrink: float = 0.0) -> np.ndarray:
        """
        Boolean mask of the nodes lying in the closed disk of radius (1 - shrink) * R.
        """

        bound = (1.0 - shrink) * self.radius
        return self._layout.moduli <= bound * (1 + 1e-12)

    # Arithmetic
    def _check_compatible(self, other: "DiskGrid") -> None:

        if self.resolution != other.resolution or self.radius != other.radius:
            reason = f"{self.radius}@{self.resolution} vs {other.radius}@{other.resolution}"
            raise Errors.E032(reason=reason)  # type: ignore
        if self.components != other.components:
            raise Errors.E032(reason=f"{self.components} vs {other.components} components")  # type: ignore

    def __add__(self, other: "DiskGrid") -> "DiskGrid":
        self._check_compatible(other)
        return self.with_values(self._values + other.values)

    def __sub__(self, other: "DiskGrid") -> "DiskGrid":
        self._check_compatible(other)
        return self.with_values(self._values - other.values)

    def __neg__(self) -> "DiskGrid":
        return self.with_values(-self._values)

    def __mul__(self, scalar: complex) -> "DiskGrid":
        return self.with_values(self._values * scalar)

    __rmul__ = __mul__

    def conj(self) -> "DiskGrid":
        return self.with_values(np.conj(self._values))

    def component(self, k: int) -> "DiskGrid":
        return self.with_values(self._values[:, k : k + 1], name=f"{self.name}[{k}]")

    # Reductions
    def pointwise_norm(self) -> np.ndarray:
        """
        The Euclidean norm of the values at each node.
        """

        return np.sqrt(np.sum(np.abs(self._values) ** 2, axis=1))

    def sup_norm(self, mask: Optional[np.ndarray] = None) -> float:
        norms = self.pointwise_norm()
        if mask is not None:
            norms = norms[mask]
        return float(norms.max())

    @property
    def origin_value(self) -> np.ndarray:
        return self._values[0]

    def diameter(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        Return the real parameters and the values along the real diameter [-R, R].
        """

        n_r, n_theta = self.resolution
        rings = self._values[1:].reshape(n_r, n_theta, -1)
        radii = self._layout.ring_radii
        s = np.concatenate((-radii[::-1], [0.0], radii))
        values = np.concatenate((rings[::-1, n_theta // 2], self._values[:1], rings[:, 0]))

        return s, values

    def evaluate_on_diameter(self, s: Union[float, np.ndarray]) -> np.ndarray:
        """
        Interpolate the grid along its real diameter with a cubic spline. 's' must lie in [-R, R].
        """

        nodes, values = self.diameter()
        real = CubicSpline(nodes, values.real, axis=0)
        imag = CubicSpline(nodes, values.imag, axis=0)
        return real(s) + 1j * imag(s)

    # Serialization
    def dump(self, path: Union[str, Path]) -> None:
        """
        Write the grid as text. The format is documented in the module docstring.
        """

        n_r, n_theta = self.resolution
        header = "\n".join(
            (
                _HEADER,
                f"radius {self.radius!r}",
                f"resolution {n_r} {n_theta}",
                f"components {self.components}",
                f"lambda {self.lam!r}",
            )
        )
        interleaved = np.empty((self.size, 2 * self.components))
        interleaved[:, 0::2] = self._values.real
        interleaved[:, 1::2] = self._values.imag

        np.savetxt(path, interleaved, fmt="%.17g", header=header, comments="# ")

    @classmethod
    def load(cls, path: Union[str, Path]) -> "DiskGrid":
        """
        Read a grid written by 'dump'.
        """

        try:
            with open(path) as f:
                lines = [f.readline().lstrip("#").split() for _ in range(5)]
            if " ".join(lines[0]) != _HEADER:
                raise ValueError(f"unexpected header {lines[0]}")
            radius = float(lines[1][1])
            n_r, n_theta = (int(item) for item in lines[2][1:])
            components = int(lines[3][1])
            lam = float(lines[4][1])
            interleaved = np.loadtxt(path, ndmin=2)
        except BaseException as error:
            raise Errors.E034(path=str(path)) from error  # type: ignore

        if interleaved.shape[1] != 2 * components:
            raise Errors.E034(path=str(path))  # type: ignore

        values = interleaved[:, 0::2] + 1j * interleaved[:, 1::2]
        return cls(radius, (n_r, n_theta), values, lam=lam, name=Path(path).stem)

    def __repr__(self) -> str:
        n_r, n_theta = self.resolution
        return f"DiskGrid(name={self.name!r}, R={self.radius}, resolution={n_r}x{n_theta}, components={self.components})"


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("grid.py can't be run in standalone")
