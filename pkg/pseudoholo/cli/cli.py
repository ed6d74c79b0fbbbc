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
# cli.py
#
# Project name: pseudoholo
# Author: the pseudoholo contributors
#
# description:
"""
    implements the pseudoholo's cli

    Every command writes its outputs and a run manifest to the output folder, and prints a one-line summary to stdout.
    Exit codes : 0 on success, 64 on a configuration error, 1 on a numerical failure. 'scan' exits 0, 1 or 2 for hyperbolic evidence,
    non hyperbolic evidence and inconclusive.
"""

#############################################################################
#                                 Packages                                  #
#############################################################################

# system
import sys
from functools import wraps
from pathlib import Path
from typing import Any, Dict, Optional

# third party
import click
import pandas as pd
from pydantic import ValidationError

# project
from pseudoholo.cli.parsing import parse_resolution, parse_vector
from pseudoholo.errors import ErrorPrototype
from pseudoholo.hyperbolicity import FibrationSpec, base_lattice, direction_fan, reduced_distance, scan
from pseudoholo.IO import Recorder, read_manifest
from pseudoholo.logger import get_module_logger
from pseudoholo.metric import DISK_CHAIN, PATH_INTEGRAL, estimate_d_chain, estimate_dbar, estimate_F, sweep
from pseudoholo.models import format_vector
from pseudoholo.session import Session
from pseudoholo.solver import solve_disk
from pseudoholo.structure import ChartSpec, JMatrixField, TangentVector, sample_points, validate_structure

#############################################################################
#                                  Script                                   #
#############################################################################

# constant
LOGGER = get_module_logger("pseudoholo")

EXIT_USAGE = 64
EXIT_NUMERICAL = 1

# Configuration, parsing and chart errors. Any other error is a numerical failure.
_USAGE_PREFIXES = ("E01", "E02", "E08")
_USAGE_CODES = {"E052", "E062", "E063", "E064", "E071", "E072"}


def exit_code_of(error: ErrorPrototype) -> int:

    if error.code.startswith(_USAGE_PREFIXES) or error.code in _USAGE_CODES:
        return EXIT_USAGE
    return EXIT_NUMERICAL


def _guarded(func):
    """
    Store the command parameters for the manifest, and map the errors to the exit codes.
    """

    @wraps(func)
    def wrapper(ctx, **kwargs):
        ctx.obj["params"] = dict(kwargs)
        try:
            return func(ctx, **kwargs)
        except ErrorPrototype as error:
            click.echo(str(error), err=True)
            sys.exit(exit_code_of(error))
        except ValidationError as error:
            click.echo(f"invalid configuration : {error}", err=True)
            sys.exit(EXIT_USAGE)

    return wrapper


def _session(ctx) -> Session:
    return Session(root_folder=ctx.obj.get("root"))


def _close(ctx, sess: Session, recorder: Recorder, chart: Optional[ChartSpec], **configs) -> None:
    """
    Write the run manifest : the command parameters and the resolved configurations.
    """

    config: Dict[str, Any] = {"params": ctx.obj["params"]}
    config.update({name: value.dict() for name, value in configs.items()})
    recorder.close(chart=chart.name if chart else None, chart_hash=chart.fingerprint if chart else None, config=config)


def _recorder(sess: Session, out: Optional[str], command: str) -> Recorder:
    return Recorder(out or sess.settings.out, command)


def _solver_options(func):
    """
    The options shared by the commands solving disks.
    """

    options = [
        click.option("--chart", required=True, help="A chart file, a chart name from the charts folder, or a gallery chart."),
        click.option("--tol", type=float, default=None, help="The residual tolerance of the disk solver."),
        click.option("--resolution", default=None, help="The polar grid resolution NRxNT, for instance 32x64."),
        click.option("--jobs", type=int, default=None, help="The maximum number of workers."),
        click.option("--out", default=None, help="The output folder."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _search_options(func):

    options = [
        click.option("--r-min", "r_min", type=float, default=None, help="The smallest radius of the disk search."),
        click.option("--r-max", "r_max", type=float, default=None, help="The largest radius of the disk search."),
        click.option("--rtol", type=float, default=None, help="The relative tolerance of the radius bisection."),
    ]
    for option in reversed(options):
        func = option(func)
    return func


class PseudoholoGroup(click.Group):
    """
    A click group exiting with the usage code on malformed command lines.
    """

    def main(self, *args, standalone_mode: bool = True, **kwargs):

        try:
            return super().main(*args, standalone_mode=False, **kwargs)
        except click.UsageError as error:
            error.show()
            sys.exit(EXIT_USAGE)
        except click.ClickException as error:
            error.show()
            sys.exit(error.exit_code)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_NUMERICAL)


@click.group(cls=PseudoholoGroup)
@click.option(
    "-p",
    "--path",
    default=None,
    type=click.Path(exists=True),
    help="An optional path to the project (or its pyproject.toml) to read the settings from.",
)
@click.pass_context
def cli(ctx, path):
    ctx.ensure_object(dict)

    if path:
        path = Path(path).absolute()
        ctx.obj["root"] = path.parent if path.is_file() else path


@cli.command()
@_solver_options
@click.pass_context
@_guarded
def validate(ctx, chart, tol, resolution, jobs, out):
    """
    Check that the chart structure squares to -Id, and report the bound of its coefficients.
    """

    sess = _session(ctx)
    definition = sess.definition(chart)
    tol_J = tol if tol is not None else sess.settings.tol_j

    if definition.j_constant is not None:
        jfield = JMatrixField.constant(definition.j_constant, name=definition.name)
    elif definition.j_polynomial is not None:
        jfield = JMatrixField.from_entries(definition.n, definition.j_polynomial, name=definition.name)
    else:
        jfield = None

    if jfield is not None:
        report = validate_structure(jfield, sample_points(definition.domain), tol_J=tol_J)
        if not report.passed:
            click.echo(f"{definition.name} : invalid structure, max |J^2 + Id| = {report.deviation:.6e} at {report.worst_point}", err=True)
            sys.exit(EXIT_NUMERICAL)

    spec = ChartSpec.from_definition(definition, tol_J=tol_J, degree=sess.settings.poly_degree)
    report = validate_structure(spec.jfield, sample_points(spec.domain), tol_J=tol_J)

    recorder = _recorder(sess, out, "validate")
    frame = pd.DataFrame(
        {
            "chart": [spec.name],
            "n": [spec.n],
            "deviation": [report.deviation],
            "coefficients_bound": [spec.sup_bound],
            "fit_residual": [spec.coeff.fit_residual],
            "fingerprint": [spec.fingerprint],
        }
    )
    recorder.save(frame, "csv")
    _close(ctx, sess, recorder, spec)

    click.echo(f"{spec.name} : valid structure, max |J^2 + Id| = {report.deviation:.6e}, coefficients bound = {spec.sup_bound:.6e}")


@cli.command("solve-disk")
@_solver_options
@click.option("--p", "p", required=True, help="The center, comma separated complex numbers.")
@click.option("--v", "v", required=True, help="The derivative at the center.")
@click.option("--R", "R", type=float, default=1.0, show_default=True, help="The disk radius.")
@click.pass_context
@_guarded
def solve_disk_command(ctx, chart, tol, resolution, jobs, out, p, v, R):
    """
    Solve the disk of radius R through p in the direction v. Writes the grid dump and the iteration log.
    """

    sess = _session(ctx)
    spec = sess.chart(chart)
    cfg = sess.solver_config(tol=tol, resolution=parse_resolution(resolution), jobs=jobs)
    tv = TangentVector(parse_vector(p, "p", spec.n), parse_vector(v, "v", spec.n))

    solution = solve_disk(spec, tv, R, cfg=cfg)

    recorder = _recorder(sess, out, "solve-disk")
    recorder.save(solution.grid, "grid", writer="grid")
    log = pd.DataFrame(
        {
            "iteration": [r.iteration for r in solution.log],
            "difference": [r.difference for r in solution.log],
            "residual": [r.residual for r in solution.log],
        },
        columns=["iteration", "difference", "residual"],
    )
    recorder.save(log, "csv")
    _close(ctx, sess, recorder, spec, solver=cfg)

    click.echo(f"{spec.name} : disk of radius {R} solved in {solution.iterations} iterations, residual = {solution.residual:.6e}")


@cli.command()
@_solver_options
@_search_options
@click.option("--p", "p", required=True, help="The base point, comma separated complex numbers.")
@click.option("--v", "v", required=True, help="The tangent vector.")
@click.pass_context
@_guarded
def norm(ctx, chart, tol, resolution, jobs, out, r_min, r_max, rtol, p, v):
    """
    Estimate the pseudonorm of the tangent vector v at p.
    """

    sess = _session(ctx)
    spec = sess.chart(chart)
    cfg = sess.solver_config(tol=tol, resolution=parse_resolution(resolution), jobs=jobs)
    search = sess.search_config(r_min=r_min, r_max=r_max, rtol=rtol)
    tv = TangentVector(parse_vector(p, "p", spec.n), parse_vector(v, "v", spec.n))

    estimate = estimate_F(spec, tv, search=search, cfg=cfg)

    recorder = _recorder(sess, out, "norm")
    frame = pd.DataFrame(
        {
            "p": [format_vector(tv.base)],
            "v": [format_vector(tv.direction)],
            "value": [estimate.value],
            "witness_R": [estimate.witness_R],
            "candidate": [estimate.candidate],
            "capped": [estimate.capped],
            "iterations": [estimate.iterations],
        }
    )
    recorder.save(frame, "csv")
    _close(ctx, sess, recorder, spec, solver=cfg, search=search)

    click.echo(f"{spec.name} : F = {estimate.value:.6g} (witness radius {estimate.witness_R:.6g}, {estimate.candidate} disk)")


@cli.command("sweep")
@_solver_options
@_search_options
@click.option("--directions", type=int, default=None, help="The number of directions per base point.")
@click.option("--rings", type=int, default=None, help="The number of rings per axis of the base lattice.")
@click.option("--extent", type=float, default=None, help="The relative extent of the base lattice.")
@click.pass_context
@_guarded
def sweep_command(ctx, chart, tol, resolution, jobs, out, r_min, r_max, rtol, directions, rings, extent):
    """
    Estimate the pseudonorm over a lattice of base points and a fan of unit directions.
    """

    sess = _session(ctx)
    spec = sess.chart(chart)
    cfg = sess.solver_config(tol=tol, resolution=parse_resolution(resolution), jobs=jobs)
    search = sess.search_config(r_min=r_min, r_max=r_max, rtol=rtol)
    lattice = sess.scan_config(directions=directions, rings=rings, extent=extent)

    frame = sweep(
        spec,
        base_lattice(spec, lattice.extent, lattice.rings),
        direction_fan(spec.n, lattice.directions, lattice.seed),
        search=search,
        cfg=cfg,
        jobs=cfg.jobs,
    )

    recorder = _recorder(sess, out, "sweep")
    recorder.save(frame, "csv")
    _close(ctx, sess, recorder, spec, solver=cfg, search=search, lattice=lattice)

    click.echo(f"{spec.name} : {len(frame)} estimates, F in [{frame['value'].min():.6g}, {frame['value'].max():.6g}]")


@cli.command()
@_solver_options
@_search_options
@click.option("--p", "p", required=True, help="The start point, comma separated complex numbers.")
@click.option("--q", "q", required=True, help="The end point.")
@click.option(
    "--method",
    type=click.Choice([PATH_INTEGRAL, DISK_CHAIN, "both"]),
    default=PATH_INTEGRAL,
    show_default=True,
    help="The estimator.",
)
@click.option("--nodes", type=int, default=None, help="The number of nodes of the optimized path.")
@click.option("--sweeps", type=int, default=None, help="The sweeps budget of the path optimizer.")
@click.option("--partition", type=int, default=64, show_default=True, help="The number of disks of the chain.")
@click.pass_context
@_guarded
def dist(ctx, chart, tol, resolution, jobs, out, r_min, r_max, rtol, p, q, method, nodes, sweeps, partition):
    """
    Estimate the pseudodistance between p and q. Writes the estimates and the per segment contributions.
    """

    sess = _session(ctx)
    spec = sess.chart(chart)
    cfg = sess.solver_config(tol=tol, resolution=parse_resolution(resolution), jobs=jobs)
    search = sess.search_config(r_min=r_min, r_max=r_max, rtol=rtol)
    optimizer = sess.optimizer_config(nodes=nodes, sweeps=sweeps)
    start, end = parse_vector(p, "p", spec.n), parse_vector(q, "q", spec.n)

    estimates = []
    if method in (PATH_INTEGRAL, "both"):
        estimates.append(estimate_dbar(spec, start, end, optimizer=optimizer, search=search, cfg=cfg, jobs=cfg.jobs))
    if method in (DISK_CHAIN, "both"):
        estimates.append(estimate_d_chain(spec, start, end, partition=partition, search=search, cfg=cfg, jobs=cfg.jobs))

    recorder = _recorder(sess, out, "dist")
    frame = pd.DataFrame(
        {
            "method": [e.method for e in estimates],
            "value": [e.value for e in estimates],
            "partition": [e.partition for e in estimates],
            "converged": [e.converged for e in estimates],
            "defect": [e.defect for e in estimates],
            "gap_bound": [e.gap_bound for e in estimates],
        }
    )
    recorder.save(frame, "csv")
    segments = pd.DataFrame(
        {
            "method": [e.method for e in estimates for _ in e.details],
            "segment": [i for e in estimates for i in range(len(e.details))],
            "contribution": [c for e in estimates for c in e.details],
        }
    )
    recorder.save(segments, "segments.csv")
    _close(ctx, sess, recorder, spec, solver=cfg, search=search, optimizer=optimizer)

    values = ", ".join(f"{e.method} = {e.value:.6g}" for e in estimates)
    click.echo(f"{spec.name} : distance from {format_vector(start)} to {format_vector(end)} : {values}")


@cli.command("scan")
@_solver_options
@_search_options
@click.option("--tau", type=float, default=None, help="The verdict threshold.")
@click.option("--directions", type=int, default=None, help="The number of directions per base point.")
@click.option("--rings", type=int, default=None, help="The number of rings per axis of the base lattice.")
@click.option("--extent", type=float, default=None, help="The relative extent of the base lattice.")
@click.pass_context
@_guarded
def scan_command(ctx, chart, tol, resolution, jobs, out, r_min, r_max, rtol, tau, directions, rings, extent):
    """
    Scan the pseudonorm of unit vectors over a compact sample and report the hyperbolicity evidence.
    """

    sess = _session(ctx)
    spec = sess.chart(chart)
    cfg = sess.solver_config(tol=tol, resolution=parse_resolution(resolution), jobs=jobs)
    search = sess.search_config(r_min=r_min, r_max=r_max, rtol=rtol)
    config = sess.scan_config(tau=tau, directions=directions, rings=rings, extent=extent)

    report = scan(spec, config=config, search=search, cfg=cfg, jobs=cfg.jobs)

    recorder = _recorder(sess, out, "scan")
    recorder.save(report.to_frame(), "csv")
    _close(ctx, sess, recorder, spec, solver=cfg, search=search, scan=config)

    click.echo(report.summary())
    sys.exit(report.exit_code)


@cli.command()
@_solver_options
@_search_options
@click.option("--p", "p", required=True, help="The base point of the first leaf.")
@click.option("--q", "q", required=True, help="The base point of the second leaf.")
@click.option("--samples", type=int, default=3, show_default=True, help="The number of representatives per leaf.")
@click.option("--nodes", type=int, default=None, help="The number of nodes of the optimized paths.")
@click.option("--sweeps", type=int, default=None, help="The sweeps budget of the path optimizer.")
@click.pass_context
@_guarded
def reduce(ctx, chart, tol, resolution, jobs, out, r_min, r_max, rtol, p, q, samples, nodes, sweeps):
    """
    Estimate the pseudodistance between the leaves over the base points p and q of a fibered chart.
    """

    sess = _session(ctx)
    spec = sess.chart(chart)
    cfg = sess.solver_config(tol=tol, resolution=parse_resolution(resolution), jobs=jobs)
    search = sess.search_config(r_min=r_min, r_max=r_max, rtol=rtol)
    optimizer = sess.optimizer_config(nodes=nodes, sweeps=sweeps)

    fib = FibrationSpec(spec)
    leaf_a = fib.leaf(parse_vector(p, "p", len(fib.base)))
    leaf_b = fib.leaf(parse_vector(q, "q", len(fib.base)))
    result = reduced_distance(spec, fib, leaf_a, leaf_b, samples=samples, optimizer=optimizer, search=search, cfg=cfg, jobs=cfg.jobs)

    recorder = _recorder(sess, out, "reduce")
    frame = pd.DataFrame(
        {
            "leaf_a": [format_vector(leaf_a.anchor)],
            "leaf_b": [format_vector(leaf_b.anchor)],
            "value": [result.value],
            "defect": [result.defect],
        }
    )
    recorder.save(frame, "csv")
    _close(ctx, sess, recorder, spec, solver=cfg, search=search, optimizer=optimizer)

    click.echo(f"{spec.name} : reduced distance = {result.value:.6g}, representatives defect = {result.defect:.3e}")


@cli.command()
@click.option("--manifest", "manifest", required=True, type=click.Path(exists=True), help="The manifest of the run to replay.")
@click.pass_context
def replay(ctx, manifest):
    """
    Run again the command of a manifest, with the same parameters.
    """

    try:
        record = read_manifest(manifest)
    except ErrorPrototype as error:
        click.echo(str(error), err=True)
        sys.exit(EXIT_USAGE)

    command = cli.get_command(ctx, record.command)
    if command is None or command.name == "replay":
        click.echo(f"the manifest '{manifest}' names an unknown command '{record.command}'", err=True)
        sys.exit(EXIT_USAGE)

    LOGGER.info(f"replaying '{record.command}' from '{manifest}'")
    ctx.invoke(command, **record.config.get("params", {}))


#############################################################################
#                                   main                                    #
#############################################################################

if __name__ == "__main__":
    raise BaseException("cli.py can't be run in standalone")
