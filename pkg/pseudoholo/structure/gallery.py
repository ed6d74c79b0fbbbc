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
# gallery.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the gallery of named charts, and the integrable models for which the pseudonorm and the pseudodistance are known.

    Named charts :
    * std-C<n> : C^n with its standard structure,
    * unit-disk, disk(r) : the disk of radius r of C,
    * polydisk, polydisk(r1, ..., rn) : a product of disks (default : the unit bidisk),
    * perturbed-R4, perturbed-R4(eps) : a non integrable structure on D_2 x D_1 whose coefficients vanish on the first axis,
    * disk-times-plane : the unit disk times C, fibered by the planes {x} x C.

    Models are registered by subclassing IntegrableModel with a 'model_name'.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
import re
from abc import ABCMeta, abstractmethod
from typing import Callable, Dict, List, Sequence, Tuple

# Third party
import numpy as np

# project
from pseudoholo.errors import Errors
from pseudoholo.logger import get_module_logger
from pseudoholo.models import ChartDefinition, CoefficientEntry, FibrationDefinition, PolynomialTerm
from pseudoholo.structure.chart import ChartSpec, TangentVector
from pseudoholo.utils.hyperbolic import automorphism_stretch, inverse_disk_automorphism, poincare_distance

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)

PERTURBATION = 0.05


class IntegrableModel(metaclass=ABCMeta):
    """
    An integrable structure with a closed form pseudonorm and pseudodistance, and a transitive group of automorphisms.
    """

    _models: Dict[str, "IntegrableModel"] = dict()

    def __init_subclass__(cls, model_name: str, register: bool = True, **kwargs):
        """
        Register the model under 'model_name'.
        """

        super().__init_subclass__(**kwargs)
        if not register:
            return

        if model_name in IntegrableModel._models:
            raise Errors.E051(model=f"{model_name} (already registered)", known=sorted(IntegrableModel._models))  # type: ignore

        IntegrableModel._models[model_name] = cls()
        LOGGER.debug(f"registering '{model_name}' model")

    @classmethod
    def models(cls) -> List[str]:
        return sorted(cls._models)

    @classmethod
    def get(cls, name: str) -> "IntegrableModel":
        try:
            return cls._models[name]
        except KeyError:
            raise Errors.E051(model=name, known=cls.models()) from None  # type: ignore

    @abstractmethod
    def exact_F(self, tv: TangentVector, radii: Sequence[float]) -> float:
        raise NotImplementedError("must be implemented in the concrete class")

    @abstractmethod
    def exact_distance(self, p: Sequence[complex], q: Sequence[complex], radii: Sequence[float]) -> float:
        raise NotImplementedError("must be implemented in the concrete class")

    @abstractmethod
    def recenter(self, tv: TangentVector, radii: Sequence[float]) -> TangentVector:
        """
        Push 'tv' forward by the automorphism sending its base point to the origin.
        """

        raise NotImplementedError("must be implemented in the concrete class")

    @abstractmethod
    def pull_back(self, points: np.ndarray, base: Sequence[complex], radii: Sequence[float]) -> np.ndarray:
        """
        Map (N, n) points of the recentered chart back, by the inverse of the automorphism sending 'base' to the origin.
        """

        raise NotImplementedError("must be implemented in the concrete class")


class EuclideanModel(IntegrableModel, model_name="euclidean"):
    """
    C^n : every pseudonorm and pseudodistance vanishes. The automorphisms are the translations.
    """

    def exact_F(self, tv, radii) -> float:
        return 0.0

    def exact_distance(self, p, q, radii) -> float:
        return 0.0

    def recenter(self, tv, radii) -> TangentVector:
        return TangentVector(np.zeros(tv.n), tv.direction)

    def pull_back(self, points, base, radii) -> np.ndarray:
        return np.asarray(points) + np.asarray(base)[None, :]


class PolydiskModel(IntegrableModel, model_name="polydisk"):
    """
    A product of disks, some of them possibly of infinite radius. The pseudonorm is the max of the factors' Poincaré norms.
    """

    def exact_F(self, tv, radii) -> float:
        values = [r * abs(v) / (r**2 - abs(p) ** 2) for p, v, r in zip(tv.base, tv.direction, radii) if np.isfinite(r)]
        return float(max(values, default=0.0))

    def exact_distance(self, p, q, radii) -> float:
        values = [poincare_distance(a / r, b / r) for a, b, r in zip(p, q, radii) if np.isfinite(r)]
        return float(max(values, default=0.0))

    def recenter(self, tv, radii) -> TangentVector:
        stretch = np.array([automorphism_stretch(p, r) for p, r in zip(tv.base, radii)])
        return TangentVector(np.zeros(tv.n), stretch * tv.v)

    def pull_back(self, points, base, radii) -> np.ndarray:
        points = np.asarray(points, dtype=complex)
        return np.stack([inverse_disk_automorphism(points[:, k], p, r) for k, (p, r) in enumerate(zip(base, radii))], axis=1)


def exact_F_model(model, tv: TangentVector) -> float:
    """
    The exact pseudonorm of 'tv' on an integrable model.

    Args:
        model (Union[str, ChartSpec]): a gallery chart name ('std-C2', 'unit-disk', 'polydisk', 'disk(0.5)', ...) or a chart declaring a model.
        tv (TangentVector): the tangent vector.
    """

    chart = model if isinstance(model, ChartSpec) else _model_chart(model)
    return IntegrableModel.get(chart.model).exact_F(tv, chart.domain)


def exact_distance_model(model, p: Sequence[complex], q: Sequence[complex]) -> float:
    """
    The exact pseudodistance between p and q on an integrable model. See 'exact_F_model'.
    """

    chart = model if isinstance(model, ChartSpec) else _model_chart(model)
    return IntegrableModel.get(chart.model).exact_distance(p, q, chart.domain)


def _model_chart(name: str) -> ChartSpec:

    try:
        chart = get_chart(name)
    except Errors.E014:
        raise Errors.E051(model=name, known=list_charts()) from None  # type: ignore

    if chart.model is None:
        raise Errors.E051(model=name, known=list_charts(integrable_only=True))  # type: ignore

    return chart


#############################################################################
#                                 Gallery                                   #
#############################################################################


def _term(z: Sequence[int], zbar: Sequence[int], c: complex) -> PolynomialTerm:
    return PolynomialTerm(z=list(z), zbar=list(zbar), c=c)


def standard_chart(n: int) -> ChartDefinition:
    return ChartDefinition(name=f"std-C{n}", n=n, domain=[float("inf")] * n, model="euclidean")


def disk_chart(radius: float = 1.0, name: str = "") -> ChartDefinition:
    return ChartDefinition(name=name or f"disk({radius!r})", n=1, domain=[radius], model="polydisk")


def polydisk_chart(radii: Sequence[float] = (1.0, 1.0), name: str = "") -> ChartDefinition:
    label = name or "polydisk(" + ",".join(repr(float(r)) for r in radii) + ")"
    return ChartDefinition(name=label, n=len(radii), domain=list(radii), model="polydisk")


def perturbed_chart(epsilon: float = PERTURBATION) -> ChartDefinition:
    """
    The structure of D_2 x D_1 with a^1_1 = eps z2, a^2_1 = eps z1 conj(z2), a^2_2 = eps conj(z2). Every coefficient vanishes on
    the axis z2 = 0, so that the linear disks along the first axis are pseudoholomorphic.
    """

    coefficients = [
        CoefficientEntry(row=0, col=0, terms=[_term((0, 1), (0, 0), epsilon)]),
        CoefficientEntry(row=1, col=0, terms=[_term((1, 0), (0, 1), epsilon)]),
        CoefficientEntry(row=1, col=1, terms=[_term((0, 0), (0, 1), epsilon)]),
    ]
    return ChartDefinition(name=f"perturbed-R4({epsilon!r})", n=2, domain=[2.0, 1.0], coefficients=coefficients)


def disk_times_plane_chart() -> ChartDefinition:
    """
    The unit disk times C, fibered over the disk by the planes {x} x C.
    """

    return ChartDefinition(
        name="disk-times-plane",
        n=2,
        domain=[1.0, float("inf")],
        model="polydisk",
        fibration=FibrationDefinition(name="vertical-planes", base=[0]),
    )


def _parameters(raw: str) -> Tuple[float, ...]:
    return tuple(float(item) for item in raw.split(",") if item.strip())


# Pattern -> builder of the chart definition from the match
_GALLERY: List[Tuple[str, Callable[[re.Match], ChartDefinition]]] = [
    (r"std-C(\d+)", lambda m: standard_chart(int(m.group(1)))),
    (r"unit-disk", lambda m: disk_chart(1.0, name="unit-disk")),
    (r"disk\(([^)]*)\)", lambda m: disk_chart(*_parameters(m.group(1)))),
    (r"polydisk", lambda m: polydisk_chart(name="polydisk")),
    (r"polydisk\(([^)]*)\)", lambda m: polydisk_chart(_parameters(m.group(1)))),
    (r"perturbed-R4", lambda m: perturbed_chart()),
    (r"perturbed-R4\(([^)]*)\)", lambda m: perturbed_chart(*_parameters(m.group(1)))),
    (r"disk-times-plane", lambda m: disk_times_plane_chart()),
]


def list_charts(integrable_only: bool = False) -> List[str]:
    """
    The names of the gallery charts, parametrized charts shown with their default parameters.
    """

    names = ["std-C<n>", "unit-disk", "disk(r)", "polydisk", "polydisk(r1,...,rn)", "disk-times-plane"]
    if not integrable_only:
        names += ["perturbed-R4", "perturbed-R4(eps)"]
    return names


def gallery_definition(name: str) -> ChartDefinition:
    """
    Return the definition of the gallery chart 'name'.
    """

    token = name.strip().replace(" ", "")
    for pattern, builder in _GALLERY:
        match = re.fullmatch(pattern, token)
        if match is None:
            continue
        try:
            return builder(match)
        except (TypeError, ValueError) as error:
            raise Errors.E013(name=name, reason=str(error)) from error  # type: ignore

    raise Errors.E014(name=name, known=list_charts())  # type: ignore


def get_chart(name: str) -> ChartSpec:
    """
    Build the gallery chart 'name'.
    """

    return ChartSpec.from_definition(gallery_definition(name))


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("gallery.py can't be run in standalone")
