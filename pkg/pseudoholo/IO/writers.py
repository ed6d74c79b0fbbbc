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
# writers.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    implements the writers the recorder delegates the saving of the run outputs to.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from __future__ import annotations

import json
from abc import ABCMeta, abstractmethod
from pathlib import Path
from typing import Any, Dict, Type, Union

import pandas as pd  # type: ignore
from pydantic import BaseModel
from pydantic.json import pydantic_encoder

from pseudoholo.errors import Errors
from pseudoholo.logger import MixinLogable, get_module_logger
from pseudoholo.transform import DiskGrid

#############################################################################
#                                  Script                                   #
#############################################################################


class Writer(MixinLogable, metaclass=ABCMeta):
    """
    Describe the Writer's interface. A writer saves one kind of asset to a local file.
    Concrete writers register themselves under their 'writer_name'.
    """

    # A placeholder for all registered writers
    _writers: Dict[str, Type["Writer"]] = dict()

    def __init__(self, *args, **kwargs):
        super().__init__(logger_name=__name__, *args, **kwargs)

    def __init_subclass__(cls, writer_name, register: bool = True, **kwargs):
        """
        Implement the registration of a child class into the Writer class.
        See PEP-487 for details.
        """

        super().__init_subclass__(**kwargs)
        if not register:
            return

        if Writer._writers.get(writer_name):
            raise Errors.E084(name=writer_name)  # type: ignore

        Writer._writers[writer_name] = cls
        cls.writer_name = writer_name

        get_module_logger(__name__).debug(f"registering '{writer_name}' writer")

    @classmethod
    def writers(cls) -> Dict[str, Type["Writer"]]:
        return cls._writers

    @classmethod
    def get(cls, name: str) -> "Writer":
        try:
            return cls._writers[name]()
        except KeyError:
            raise Errors.E087(name=name) from None  # type: ignore

    def save(self, asset: Any, path: Union[str, Path]) -> Path:
        """
        Save the asset to 'path'.
        """

        path = Path(path)
        self.debug(f"saving '{self.writer_name}' : {path}")
        self.check(asset)
        try:
            self.write(asset, path)
        except BaseException as err:
            raise Errors.E085(name=str(path), writer=self.writer_name) from err  # type: ignore

        return path

    @abstractmethod
    def check(self, asset: Any) -> None:
        """
        Raise if the writer doesn't accept the asset.
        """

        raise NotImplementedError("must be implemented in the concrete class")

    @abstractmethod
    def write(self, asset: Any, path: Path) -> None:
        raise NotImplementedError("must be implemented in the concrete class")


class CSVWriter(Writer, writer_name="csv"):
    """
    Save dataframes, with round trip floats and no index : identical frames give identical files.
    """

    def check(self, asset):
        if not isinstance(asset, (pd.DataFrame, pd.Series)):
            raise Errors.E086(writer="csv", accept="pd.DataFrame, pd.Series", got=type(asset))  # type: ignore

    def write(self, asset, path):
        payload = asset.to_csv(index=False, float_format="%.17g")
        path.write_text(payload, encoding="utf-8")


class JSONWriter(Writer, writer_name="json"):
    """
    Save pydantic models and mappings.
    """

    def check(self, asset):
        if not isinstance(asset, (BaseModel, dict)):
            raise Errors.E086(writer="json", accept="pydantic.BaseModel, dict", got=type(asset))  # type: ignore

    def write(self, asset, path):
        with open(path, "w", encoding="utf-8") as f:
            json.dump(asset, f, default=pydantic_encoder, indent=2)


class GridWriter(Writer, writer_name="grid"):
    """
    Save disk grids as text dumps. See 'DiskGrid.dump'.
    """

    def check(self, asset):
        if not isinstance(asset, DiskGrid):
            raise Errors.E086(writer="grid", accept="DiskGrid", got=type(asset))  # type: ignore

    def write(self, asset, path):
        asset.dump(path)


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("writers.py can't be run in standalone")
