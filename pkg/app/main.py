"""
Command-line entry point.

``run(argv)`` never exits the interpreter: it returns the process status
(0 ok, 1 invalid input, 2 numerical failure, 3 usage error) so that
``main`` and the tests share one code path.
"""

import os
import sys
from typing import Annotated, Optional, Sequence

import click
import typer
from loguru import logger
from pydantic import ValidationError

from app.commands.common import ExitCode, Session, fail
from app.config import get_settings, setup_app_logging
from app.schemas.run import OutputFormat, RunConfig
from graph_entropy.errors import GraphValidationError, NumericalError


def create_app() -> typer.Typer:
    """Create the typer application with every command registered."""
    app = typer.Typer(
        name="graph-entropy",
        help="Volume entropy of metric graphs and graphs of groups.",
        no_args_is_help=True,
        add_completion=False,
        pretty_exceptions_enable=False,
    )
    app.callback()(configure_run)
    _register_commands(app)
    return app


def configure_run(
    ctx: typer.Context,
    tol_root: Annotated[Optional[float], typer.Option("--tol-root", help="Bracket width for h.")] = None,
    tol_residual: Annotated[
        Optional[float], typer.Option("--tol-residual", help="Fixed-point residual bound.")
    ] = None,
    r_max: Annotated[Optional[str], typer.Option("--r-max", help="Oracle radius, e.g. 40 or 81/2.")] = None,
    samples: Annotated[Optional[int], typer.Option("--samples", help="Random metrics for minimize.")] = None,
    seed: Annotated[int, typer.Option("--seed")] = 0,
    output_format: Annotated[Optional[OutputFormat], typer.Option("--format")] = None,
    dump_matrix: Annotated[bool, typer.Option("--dump-matrix", help="List A'(h) at the solved h.")] = False,
) -> None:
    state = ctx.find_object(Session)
    state.run = RunConfig(
        tol_root=tol_root,
        tol_residual=tol_residual,
        r_max=r_max,
        samples=samples,
        seed=seed,
        format=output_format or state.settings.OUTPUT_FORMAT,
        dump_matrix=dump_matrix,
    )


def _register_commands(app: typer.Typer) -> None:
    """Register all command modules."""
    from app.commands import entropy, gog, graph, minimize

    for module in (graph, entropy, minimize, gog):
        module.register(app)


app = create_app()


def run(argv: Optional[Sequence[str]] = None) -> int:
    environment = os.environ.get("ENVIRONMENT", "development")
    settings = get_settings(environment)
    setup_app_logging(settings)

    state = Session(settings)
    command = typer.main.get_command(app)
    args = list(sys.argv[1:] if argv is None else argv)
    try:
        status = command.main(args, prog_name="graph-entropy", standalone_mode=False, obj=state)
    except click.ClickException as exc:
        return fail(state, ExitCode.USAGE, exc.format_message())
    except click.exceptions.Abort:
        return fail(state, ExitCode.USAGE, "aborted")
    except ValidationError as exc:
        return fail(state, ExitCode.USAGE, f"invalid options: {exc}")
    except GraphValidationError as exc:
        return fail(state, ExitCode.VALIDATION, str(exc))
    except NumericalError as exc:
        return fail(state, ExitCode.NUMERICAL, str(exc))
    logger.debug("{} finished", state.run.command if state.run else "graph-entropy")
    return int(status or ExitCode.OK)


def main() -> None:
    sys.exit(run())
