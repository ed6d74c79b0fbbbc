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
# yaml_utils.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements various helper functions to manipulated data extracted from yamls
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from functools import singledispatch
from glob import glob
from pathlib import Path
from typing import Any, Dict, Generator, Iterator, List, Optional, Tuple, Type, Union

# Third party
import yaml
from jinja2 import StrictUndefined, Template
from pydantic import BaseModel

# project
from pseudoholo.errors import Errors

#############################################################################
#                                  Script                                   #
#############################################################################


def gen_as_model(
    path: Path, model: Type[BaseModel], render_vars: Optional[Dict[str, Any]] = None
) -> Generator[Tuple[Optional[str], BaseModel], None, None]:
    """
    Parse all the yamls files stored a 'path' and return a generator of deserialized models.
    A yaml holds either a single definition, a mapping of definitions by name, or a list of definitions.

    Args:
        path (Path): the yaml file, or the folder to start parsing the yaml files from.
        model (Type[BaseModel]): the model to deserialize the yaml files against.
        render_vars (Dict[str, Any]): an optional mapping of variables to use to render the templates. Default to None.

    Returns:
        Generator[Tuple[Optional[str], BaseModel]]: the (key, model) pairs. The key is None for list items and single definitions.
    """

    render_vars = render_vars or {}
    for template_path in gen_yamls(Path(path)):
        rendered = render_template(template_path, render_vars)
        templated = load_template(rendered)

        if isinstance(templated, dict) and "name" in templated:
            yield None, model(**templated)
        elif isinstance(templated, dict):
            for key, val in templated.items():
                yield key, model(**{"name": key, **val})
        elif isinstance(templated, list):
            for val in templated:
                yield None, model(**val)


def load_template(template: str) -> Union[List, Dict[str, Any]]:
    """
    Load template and return dictionary representation fo the yaml.

    Args:
        template (str): a string to be loaded as yaml into a dictionary.

    Returns:
        Dict[str, Any]: a mapping of parsed values
    """

    try:
        parsed = yaml.safe_load(template)  # type: ignore
    except BaseException as error:
        raise Errors.E019(repr=template) from error  # type: ignore

    return parsed


def render_template(path: Path, render_vars: Optional[Dict[str, Any]] = None) -> str:
    """
    Render the Jinja2 template from 'path' with interpolated variables from 'render_vars'.

    Args:
        path (Path): the path to the ressource to render.
        render_vars (Dict[str, Any], optional): An optional mapping of variables to use to render the template. Defaults to None.

    Implementation details:
    * YAML parse null and ~ as None, but Jinja renders None as 'None'.
    * Before rendering, any None in the render_vars dict is replaced with a 'null', so that it's parsed back as None.
    """

    @singledispatch
    def replace_none(value):
        return value

    @replace_none.register(dict)
    def _(value):
        return {k: replace_none(v) for k, v in value.items()}

    @replace_none.register(list)
    def _(value):
        return [replace_none(v) for v in value]

    @replace_none.register(type(None))
    def _(value):
        return "null"

    # Load and render the Jinja template
    try:
        with open(path) as f:
            template = Template(f.read(), undefined=StrictUndefined)
    except BaseException as error:
        raise Errors.E018(path=str(path), vars=render_vars) from error  # type: ignore

    render_vars = replace_none(render_vars or {})

    try:
        rendered = template.render(render_vars)
    except BaseException as error:
        raise Errors.E018(path=str(path), vars=render_vars) from error  # type: ignore

    return rendered


def gen_yamls(path: Path) -> Iterator[Path]:
    """
    Iterates over all the yamls found at the 'path' location.
    If 'path' is a yaml, only the yaml is returned.
    If 'path' is a folder, any yaml in the folder will be returned, sorted by path.

    Args:
        path (Path): the source folder we want to extracts yaml from.
    """

    if not path.exists():
        raise Errors.E017(path=str(path))  # type: ignore

    if path.is_file():
        yield path
    else:
        found = set()
        for files in (path / "**/*.yml", path / "**/*.yaml"):
            found.update(Path(g) for g in glob(str(files), recursive=True))
        yield from sorted(found)


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("yaml_utils.py can't be run in standalone")
