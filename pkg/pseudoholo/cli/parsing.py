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
# parsing.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the parsing of the command line values : complex vectors and grid resolutions.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

import re
from typing import Optional, Tuple

import numpy as np

from pseudoholo.errors import Errors
from pseudoholo.models import parse_complex

#############################################################################
#                                  Script                                   #
#############################################################################


def parse_vector(raw: str, name: str = "vector", n: Optional[int] = None) -> np.ndarray:
    """
    Parse comma separated complex numbers, such as '0.5+1i,0'. When 'n' is given, the vector must have n components.
    """

    try:
        vector = np.array([parse_complex(token) for token in str(raw).split(",")], dtype=complex)
    except ValueError:
        raise Errors.E080(raw=raw) from None  # type: ignore

    if n is not None and vector.shape[0] != n:
        raise Errors.E082(name=name, got=vector.shape[0], n=n)  # type: ignore

    return vector


def parse_resolution(raw: Optional[str]) -> Optional[Tuple[int, int]]:
    """
    Parse a 'NRxNT' resolution. None is passed through.
    """

    if raw is None:
        return None

    match = re.fullmatch(r"\s*(\d+)\s*[xX]\s*(\d+)\s*", str(raw))
    if match is None:
        raise Errors.E081(raw=raw)  # type: ignore

    return int(match.group(1)), int(match.group(2))


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("parsing.py can't be run in standalone")
