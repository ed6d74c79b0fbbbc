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
# session.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the session : the layered settings of a pseudoholo run, and the numerical configurations built from them.

    Settings are layered, the latter overriding the former :
    * the built-in defaults,
    * the '[tool.pseudoholo]' section of the closest pyproject.toml,
    * the environment variables prefixed with 'PSEUDOHOLO_',
    * the overrides given to the configuration getters (the command line flags).
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Union
from warnings import warn

from dynaconf import Dynaconf, Validator

# project
from pseudoholo.errors import Errors, Warnings
from pseudoholo.loader import get_path_to_target, get_pyproject, load_chart, resolve_definition
from pseudoholo.logger import MixinLogable, get_module_logger
from pseudoholo.models import ChartDefinition, OptimizerConfig, Pyproject, ScanConfig, SearchConfig, SolverConfig
from pseudoholo.structure import ChartSpec

#############################################################################
#                                  Script                                   #
#############################################################################

DEFAULTS: Dict[str, Any] = {
    "out": "runs",
    "jobs": 1,
    "tol_j": 1e-9,
    "poly_degree": 4,
    "solver_tol": 1e-8,
    "solver_max_iter": 50,
    "solver_epsilon": 0.1,
    "solver_resolution": [32, 64],
    "search_r_min": 1e-3,
    "search_r_max": 1e4,
    "search_rtol": 0.01,
    "optimizer_nodes": 9,
    "optimizer_sweeps": 4,
    "scan_tau": 0.5,
    "scan_directions": 4,
    "scan_extent": 0.9,
    "scan_rings": 3,
    "chart_epsilon": 0.05,
}


def _merge(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """
    Override 'base' with the non None values of 'overrides'.
    """

    return {**base, **{k: v for k, v in overrides.items() if v is not None}}


class Session(MixinLogable):
    """
    The entry point of a pseudoholo run.

    The session locates the pyproject.toml, layers the settings and executes the registered hooks. It exposes the typed
    configurations of the numerical modules, and resolves the chart references.
    """

    _hooks = []

    def __init__(self, *, root_folder: Optional[Union[str, Path]] = None):

        super().__init__(logger_name=__name__)

        try:
            self._root = Path(root_folder) if root_folder else get_path_to_target("pyproject.toml")
            config = get_pyproject(self._root / "pyproject.toml") if (self._root / "pyproject.toml").exists() else Pyproject()
        except Errors.E010:
            warn(Warnings.W010.format(path=Path().resolve()))
            self._root = Path().resolve()
            config = Pyproject()

        self.debug(f"initiating pseudoholo from : '{self._root}'")

        # The environment variables are loaded first : the pyproject only fills the keys they leave unset
        self._settings = Dynaconf(envvar_prefix="PSEUDOHOLO", load_dotenv=False)
        self._settings.update({k: v for k, v in config.dict().items() if not self._settings.exists(k)})  # type: ignore

        self._settings.validators.register(  # type: ignore
            *(Validator(key, default=value) for key, value in DEFAULTS.items()),
        )
        self._settings.validators.validate()  # type: ignore

        self._charts: Optional[Path] = None
        for h in Session._hooks:
            h(self)

    @property
    def root(self) -> Path:
        return self._root

    @property
    def settings(self) -> Dynaconf:
        return self._settings

    @property
    def charts(self) -> Optional[Path]:
        """
        The folder of the project's chart files, if any.
        """

        return self._charts

    @property
    def render_vars(self) -> Dict[str, Any]:
        """
        The settings, as the variables rendered into the chart templates.
        """

        return {str(k).lower(): v for k, v in self._settings.as_dict().items()}

    def solver_config(self, **overrides) -> SolverConfig:
        settings = self._settings
        values = {
            "tol": settings.solver_tol,
            "max_iter": settings.solver_max_iter,
            "epsilon": settings.solver_epsilon,
            "resolution": tuple(int(x) for x in settings.solver_resolution),
            "delta": settings.get("solver_delta"),
            "jobs": settings.jobs,
        }
        return SolverConfig(**_merge(values, overrides))

    def search_config(self, **overrides) -> SearchConfig:
        settings = self._settings
        values = {"r_min": settings.search_r_min, "r_max": settings.search_r_max, "rtol": settings.search_rtol}
        return SearchConfig(**_merge(values, overrides))

    def optimizer_config(self, **overrides) -> OptimizerConfig:
        settings = self._settings
        values = {"nodes": settings.optimizer_nodes, "sweeps": settings.optimizer_sweeps}
        return OptimizerConfig(**_merge(values, overrides))

    def scan_config(self, **overrides) -> ScanConfig:
        settings = self._settings
        values = {
            "tau": settings.scan_tau,
            "directions": settings.scan_directions,
            "extent": settings.scan_extent,
            "rings": settings.scan_rings,
        }
        return ScanConfig(**_merge(values, overrides))

    def definition(self, reference: str) -> ChartDefinition:
        """
        Resolve a chart reference into its definition, without building the chart.
        """

        return resolve_definition(reference, render_vars=self.render_vars, charts=self._charts)

    def chart(self, reference: str) -> ChartSpec:
        """
        Resolve a chart file, a chart of the project's charts folder or a gallery chart.
        """

        chart = load_chart(
            reference,
            render_vars=self.render_vars,
            charts=self._charts,
            tol_J=self._settings.tol_j,
            degree=self._settings.poly_degree,
        )
        self.debug(f"using {chart!r}")

        return chart

    @classmethod
    def hook_post_init(cls, last=True) -> Callable:
        """
        Register a `callable_` to be executed after the session instanciation.
        """

        def _(callable_: Callable):

            LOGGER = get_module_logger(__name__)
            LOGGER.debug(f"Registering session's hook : '{callable_.__name__}'")
            if last:
                cls._hooks.append(callable_)
            else:
                cls._hooks.insert(0, callable_)

            return callable_

        return _


class _DefaultHooks:
    """
    Name spaces for the mandatory Session postinits hooks.
    """

    @staticmethod
    @Session.hook_post_init()
    def set_charts_folder(sess: Session) -> None:
        """
        Resolve the charts folder against the project root.
        """

        charts = sess.settings.get("charts")
        if not charts:
            return

        sess._charts = (sess.root / str(charts)).resolve()
        sess.debug(f"charts folder : '{sess._charts}'")


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("session.py can't be run in standalone")
