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
# chart_loader.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the resolution of a chart reference : a chart file, a chart of the configured charts folder, or a gallery chart.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import ValidationError

# project
from pseudoholo.errors import Errors
from pseudoholo.loader.yaml_utils import gen_as_model
from pseudoholo.logger import get_module_logger
from pseudoholo.models import ChartDefinition
from pseudoholo.structure import ChartSpec, IntegrableModel, gallery_definition
from pseudoholo.structure.jmatrix import DEFAULT_DEGREE, TOL_J

#############################################################################
#                                  Script                                   #
#############################################################################

LOGGER = get_module_logger(__name__)


def get_chart_definitions(path: Union[str, Path], render_vars: Optional[Dict[str, Any]] = None) -> List[ChartDefinition]:
    """
    Parse the chart definitions of a yaml file, or of all the yamls of a folder.
    """

    try:
        return [definition for _, definition in gen_as_model(Path(path), ChartDefinition, render_vars)]  # type: ignore
    except (TypeError, ValidationError) as error:
        raise Errors.E013(name=str(path), reason=str(error)) from error  # type: ignore


def check_definition(definition: ChartDefinition) -> ChartDefinition:
    """
    Check the references of a definition : its integrable model and its fibration.
    """

    if definition.model is not None and definition.model not in IntegrableModel.models():
        raise Errors.E015(model=definition.model, known=IntegrableModel.models())  # type: ignore

    fibration = definition.fibration
    if fibration is not None:
        base = set(fibration.base)
        if not base or not base.issubset(range(definition.n)):
            reason = f"the base coordinates {fibration.base} must be a non empty subset of 0..{definition.n - 1}"
            raise Errors.E016(name=fibration.name, chart=definition.name, reason=reason)  # type: ignore
        if len(base) == definition.n:
            raise Errors.E016(name=fibration.name, chart=definition.name, reason="the leaves have no fiber coordinate")  # type: ignore

    return definition


def resolve_definition(
    reference: str, render_vars: Optional[Dict[str, Any]] = None, charts: Optional[Union[str, Path]] = None
) -> ChartDefinition:
    """
    Resolve a chart reference into its definition.

    Args:
        reference (str): a yaml file holding a single chart, the name of a chart from the 'charts' folder, or a gallery chart name.
        render_vars (Dict[str, Any], optional): the variables rendered into the chart templates.
        charts (Union[str, Path], optional): the folder of the project's charts.
    """

    path = Path(reference)
    if path.is_file():
        definitions = get_chart_definitions(path, render_vars)
        if len(definitions) != 1:
            raise Errors.E013(name=reference, reason=f"expected a single chart in the file, got {len(definitions)}")  # type: ignore
        LOGGER.debug(f"chart '{definitions[0].name}' loaded from '{path}'")
        return check_definition(definitions[0])

    if charts is not None and Path(charts).exists():
        for definition in get_chart_definitions(charts, render_vars):
            if definition.name == reference:
                LOGGER.debug(f"chart '{reference}' loaded from the charts folder '{charts}'")
                return check_definition(definition)

    return gallery_definition(reference)


def load_chart(
    reference: str,
    render_vars: Optional[Dict[str, Any]] = None,
    charts: Optional[Union[str, Path]] = None,
    tol_J: float = TOL_J,
    degree: int = DEFAULT_DEGREE,
) -> ChartSpec:
    """
    Resolve a chart reference and build the chart. See 'resolve_definition'.
    """

    return ChartSpec.from_definition(resolve_definition(reference, render_vars, charts), tol_J=tol_J, degree=degree)


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("chart_loader.py can't be run in standalone")
