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
# path_utils.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements utility functions to locate the project files
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from pathlib import Path
from typing import Optional, Union

from pseudoholo.errors import Errors

#############################################################################
#                                  Script                                   #
#############################################################################


def get_path_to_target(target: str, start: Optional[Union[str, Path]] = None) -> Path:
    """
    Retrieve the folder holding the "target" file by walking up from 'start' (default : the working directory).
    """

    root = Path("/")
    trg = Path(start or Path()).resolve()
    while True:
        if (trg / target).exists():
            return trg
        if trg == root:
            raise Errors.E010(target=target)  # type: ignore
        trg = trg.parent


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("path_utils.py can't be run in standalone")
