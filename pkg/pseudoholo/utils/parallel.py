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
# parallel.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the ordered worker pool used by the data parallel operations.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

#############################################################################
#                                  Script                                   #
#############################################################################

T = TypeVar("T")
U = TypeVar("U")


def map_ordered(func: Callable[[T], U], items: Iterable[T], jobs: int = 1) -> List[U]:
    """
    Map 'func' over 'items' with at most 'jobs' workers. Results keep the order of 'items'.

    Args:
        func (Callable): a pure function.
        items (Iterable): the work units.
        jobs (int): the maximum number of workers. 1 runs sequentially in the caller's thread.
    """

    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    with ThreadPoolExecutor(max_workers=min(jobs, len(items))) as executor:
        return list(executor.map(func, items))
