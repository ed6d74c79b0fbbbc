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
# errors.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
Centralize errors and warnings for the pseudoholo package
"""
# pylint: disable-all ## The metaclass confuses the linters
#############################################################################
#                                 Packages                                  #
#############################################################################

# System packages
import sys
import warnings

# Project related packages
from .logger import get_module_logger

#############################################################################
#                                Constants                                  #
#############################################################################

DEFAULT_LOGGER = get_module_logger(__name__)
PROJECT_NAME = "Pseudoholo"

#############################################################################
#                                 Classes                                   #
#############################################################################


class ExceptionFactory(type):
    """
    Implements a metaclass building errors from instances attributes. Errors classes are cached, so they can be raised and catched.

    >>raise Errors.E010(target="pyproject.toml")
    >>except Errors.E010: ...
    """

    def __init__(cls, name, bases, attrs, *args, **kwargs):
        super().__init__(name, bases, attrs)
        super().__setattr__("_CACHED_ATTRIBUTES", dict())

    def __getattribute__(cls, code):
        """
        Intercept the attribute getter to wrap the Error code in a metaclass. By doing so, the error code became
        a proper class for which the name is the error code
        """

        if not code.startswith("E"):
            return super().__getattribute__(code)

        try:
            meta = super().__getattribute__("_CACHED_ATTRIBUTES")[code]
        except KeyError:

            # Retrieve the error message maching the code and preformat it
            msg = super().__getattribute__(code)
            msg = f"{PROJECT_NAME} : {code} - {msg}"

            proto = super().__getattribute__("_PROTOTYPE")
            meta = type(code, (proto,), {"msg": msg, "code": code})
            super().__getattribute__("_CACHED_ATTRIBUTES")[code] = meta

        return meta


class ErrorPrototype(Exception):
    """
    Base parent for all custom errors raised by the program.
    The class formats the message and keeps the formatting arguments as machine readable diagnostics.
    """

    msg: str = ""
    code: str = ""

    def __init__(self, **kwargs):

        self.details = kwargs
        super().__init__(self.msg.format(**kwargs))


class Errors(metaclass=ExceptionFactory):

    _PROTOTYPE = ErrorPrototype

    # Start-up, configuration and charts
    E010 = "start-up : pseudoholo must be called from a folder, or the child of a folder, containing a '{target}' file / folder"
    E011 = "start-up : failed to validate the 'pseudoholo' section of the 'pyproject.toml'"
    E012 = "start-up : failed to read the pyproject.toml file located here : '{path}'."
    E013 = "chart loader : failed to validate the chart definition '{name}' : {reason}"
    E014 = "chart loader : '{name}' is neither a readable chart file nor a gallery chart. Known gallery charts : {known}."
    E015 = "chart loader : unknown integrable model '{model}'. Known models : {known}."
    E016 = "chart loader : the fibration '{name}' of the chart '{chart}' is invalid : {reason}."
    E017 = "ConfigParser : '{path}' does not exist."
    E018 = "ConfigParser : failed to read or render the '{path}' template with template variables '{vars}'. Is the file a valid jinja2 template ?"
    E019 = "ConfigParser : failed deserialize the yaml representation '{repr}'."

    # Almost complex structures
    E020 = "structure : J(z)^2 + Id deviates by {deviation:.3e} > tol_J = {tol:.1e} at point {point}."
    E021 = "structure : failed to evaluate J at point {point}."
    E022 = "structure : J0 + J(z) is singular at point {point} : the structure is too far from the standard one. Use frame_normalize to bring J close to J0 first."
    E023 = "structure : point {point} lies outside of the chart domain with radii {radii}."
    E024 = "structure : the Hölder exponent must lie strictly between 0 and 1, got {value}."
    E025 = "structure : the coefficient field has dimension {got} but the chart has dimension {n}."
    E026 = "structure : not enough samples ({samples}) to fit {unknowns} polynomial coefficients. Use a denser sample grid or a lower degree."
    E027 = "structure : a constant J must be an even sized square matrix, got the shape {shape}."
    E028 = "structure : invalid J entry ({row}, {col}) for a chart of dimension n = {n} : {reason}."

    # Grids and transforms
    E030 = "transform : grid resolution {n_r}x{n_theta} is too coarse for {operation}, at least {minimum} rings and 4 angles are required."
    E031 = "transform : the grid '{name}' holds non finite values."
    E032 = "transform : grids are incompatible : {reason}."
    E033 = "transform : the grid is empty."
    E034 = "transform : failed to parse the grid dump '{path}'."
    E035 = "transform : the number of angles must be even, got {n_theta}."

    # Disk solver
    E040 = "solver : node {node} (zeta = {zeta}) is mapped to {point}, outside of the chart domain. Try a smaller radius R (currently {R})."
    E041 = "solver : the iteration diverges, successive differences grew from {previous:.3e} to {current:.3e} at iteration {iteration}."
    E042 = "solver : no convergence after {max_iter} iterations (last difference {difference:.3e}, last contraction ratio {ratio:.3e})."
    E043 = "solver : the iteration converged but the residual {residual:.3e} exceeds tol = {tol:.1e}. Increase the resolution or relax tol."
    E044 = "solver : the transverse chart radii {radii} are smaller than the transverse polydisk size delta = {delta}."
    E045 = "solver : the directions v and v0 coincide, the contraction ratio is undefined."
    E046 = "solver : invalid disk radius R = {R}."

    # Pseudonorm
    E050 = "pseudonorm : no solvable radius >= R_min = {r_min} in direction {direction} at {base}. Decrease R_min. Last failure : {reason}"
    E051 = "pseudonorm : unknown integrable model '{model}'. Known models : {known}."
    E052 = "pseudonorm : invalid search bounds : {reason}."

    # Pseudodistance
    E060 = "distance : pseudonorm estimation failed on segment {segment} : {reason}"
    E061 = "distance : the witness disk of segment {segment} has radius {radius:.3e} <= step {step:.3e}. Use a denser partition."
    E062 = "distance : a path needs at least two nodes, got {count}."
    E063 = "distance : path node {index} ({point}) lies outside of the chart domain."
    E064 = "distance : the path does not join the requested end points ({which} end is off by {gap:.3e})."

    # Hyperbolicity and reduction
    E070 = "reduction : leaf '{leaf}' failed its pseudoholomorphy check (residual {residual:.3e} > tol {tol:.1e})."
    E071 = "reduction : the chart '{chart}' declares no fibration."
    E072 = "scan : the threshold tau must be positive, got {tau}."
    E073 = "scan : the sample set is empty."

    # Cli and IO
    E080 = "cli : malformed complex vector '{raw}'. Use comma separated complex numbers such as '0.5+1i,0'."
    E081 = "cli : malformed resolution '{raw}'. Use NRxNT, for instance '32x64'."
    E082 = "cli : dimension mismatch, '{name}' has {got} components but the chart has n = {n}."
    E083 = "cli : failed to read the manifest '{path}'."
    E084 = "IO : there is already a writer named '{name}'"
    E085 = "IO : failed to write '{name}' with the '{writer}' writer."
    E086 = "IO : '{writer}' writer only accept {accept} : got '{got}'"
    E087 = "IO : '{name}' is not a registered writer."


class Warnings(UserWarning):

    # Start-up
    W010 = "start-up : no pyproject.toml found from '{path}'. Defaulting to the built-in settings."

    # Pseudonorm
    W050 = "pseudonorm : the disk of radius R_max = {r_max} is solvable in direction {direction} at {base}. The estimate is capped by R_max."

    # Pseudodistance
    W060 = "distance : the path optimizer exhausted its budget of {sweeps} sweeps with step {step:.3e}. The best path so far is returned."

    # Hyperbolicity
    W070 = "scan : the estimation failed at point {point} in direction {direction} : {reason}"


def _custom_formatwarning(msg, *args, **kwargs) -> str:
    """
    Monkey patch the warning displayor to avoid printing the code longside the Warnings.
    """
    return f"Warning : {str(msg)} \n"


warnings.formatwarning = _custom_formatwarning


if __name__ == "__main__":
    sys.exit()
