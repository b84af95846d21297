# ------------------------------------------------------------------------------
# Copyright (c) 2022 Korawich Anuttra. All rights reserved.
# Licensed under the MIT License. See LICENSE in the project root for
# license information.
# ------------------------------------------------------------------------------

import os
import sys

import click

os.environ.setdefault(
    "H2CRUISE_PATH", os.path.abspath(os.path.dirname(__file__))
)

config_option = click.option(
    "-c",
    "--config",
    "config_path",
    required=True,
    type=click.Path(dir_okay=False),
    help="JSON run config with SI values, like `conf/hy4.json`",
)
out_option = click.option(
    "-o",
    "--out",
    type=click.Path(file_okay=False),
    default=None,
    help="output directory, overrides the config and `H2CRUISE_OUTPUT`",
)
ci_option = click.option(
    "--ci",
    "cost_index",
    type=click.FloatRange(min=0.0),
    default=None,
    help="cost index C_I in N/s, overrides the `cost` section of the config",
)


@click.group()
def cli(): ...


@click.command(
    name="solve",
    short_help="solve the optimal cruise speed at the initial weight",
)
@config_option
@ci_option
@out_option
def solve(config_path: str, cost_index: float, out: str):
    """Solve the suboptimal cruise speed (J_W = 0) at take-off weight.

    Example:

        $ python manage.py solve --config conf/hy4.json --ci 0.02
    """
    from h2cruise.controls import cmd_solve, run_command

    sys.exit(run_command(cmd_solve, config_path, cost_index, out))


@click.command(
    name="simulate",
    short_help="fly the cruise mission and write its trajectory",
)
@config_option
@ci_option
@click.option(
    "-m",
    "--mode",
    type=click.Choice(["suboptimal", "optimal"]),
    default=None,
    help="speed law, where `optimal` shoots on the weight costate",
)
@out_option
def simulate(config_path: str, cost_index: float, mode: str, out: str):
    """Fly the mission of the config from x = 0 to x_d.

    Example:

        $ python manage.py simulate -c conf/hy4.json --ci 0.02 --mode optimal
    """
    from h2cruise.controls import cmd_simulate, run_command

    sys.exit(run_command(cmd_simulate, config_path, cost_index, mode, out))


@click.command(
    name="sweep",
    short_help="sweep the cost-index grid and write both curves",
)
@config_option
@out_option
def sweep(config_path: str, out: str):
    """Write `velocity_vs_ci` and `pareto` CSV and SVG files with the
    trade-off report.

    Example:

        $ python manage.py sweep -c conf/hy4.json -o output
    """
    from h2cruise.controls import cmd_sweep, run_command

    sys.exit(run_command(cmd_sweep, config_path, out))


@click.command(
    name="pareto",
    short_help="sweep the cost-index grid and write the Pareto curve",
)
@config_option
@out_option
def pareto(config_path: str, out: str):
    """Write the `pareto` CSV and SVG files with the frontier checks."""
    from h2cruise.controls import cmd_pareto, run_command

    sys.exit(run_command(cmd_pareto, config_path, out))


@click.command(
    name="validate",
    short_help="report the power envelope and model assumptions",
)
@config_option
@out_option
def validate(config_path: str, out: str):
    """Report the stack envelope against the cruise power and the affine
    cell-model band, failing with exit code 7 when a check fails."""
    from h2cruise.controls import cmd_validate, run_command

    sys.exit(run_command(cmd_validate, config_path, out))


cli.add_command(solve)
cli.add_command(simulate)
cli.add_command(sweep)
cli.add_command(pareto)
cli.add_command(validate)


if __name__ == "__main__":
    cli()
