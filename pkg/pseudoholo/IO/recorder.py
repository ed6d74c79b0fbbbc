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
# recorder.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    Implements the recorder of a run : it saves the outputs of a command to the output folder, and closes the run with its manifest.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
import time
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

# project
from pseudoholo.__version__ import version
from pseudoholo.errors import Errors
from pseudoholo.IO.writers import Writer
from pseudoholo.logger import MixinLogable
from pseudoholo.models import RunManifest

#############################################################################
#                                  Script                                   #
#############################################################################


class Recorder(MixinLogable):
    """
    Save the outputs of a command under 'out', named after the command : '<out>/<command>.<suffix>'.
    """

    def __init__(self, out: Union[str, Path], command: str):

        super().__init__(logger_name=__name__)
        self.out = Path(out)
        self.command = command
        self.outputs: List[str] = []
        self._started_at = datetime.now(timezone.utc).isoformat()
        self._clock = time.perf_counter()

        self.out.mkdir(parents=True, exist_ok=True)

    def path(self, suffix: str) -> Path:
        return self.out / f"{self.command}.{suffix}"

    def save(self, asset: Any, suffix: str, writer: str = "csv") -> Path:
        """
        Save 'asset' with the writer named 'writer' to '<out>/<command>.<suffix>'.
        """

        path = Writer.get(writer).save(asset, self.path(suffix))
        self.outputs.append(str(path))

        return path

    def close(self, chart: Optional[str], chart_hash: Optional[str], config: Dict[str, Any]) -> RunManifest:
        """
        Write the manifest of the run and return it.
        """

        manifest = RunManifest(
            command=self.command,
            chart=chart,
            chart_hash=chart_hash,
            config=config,
            version=version,
            started_at=self._started_at,
            elapsed_seconds=time.perf_counter() - self._clock,
            outputs=list(self.outputs),
        )

        path = self.path("manifest.json")
        Writer.get("json").save(manifest, path)
        self.info(f"manifest saved to '{path}'")

        return manifest


def read_manifest(path: Union[str, Path]) -> RunManifest:
    """
    Parse a run manifest.
    """

    try:
        return RunManifest.parse_file(path)
    except BaseException as error:
        raise Errors.E083(path=str(path)) from error  # type: ignore


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("recorder.py can't be run in standalone")
