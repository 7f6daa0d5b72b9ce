"""Entropy commands: the spectral solver and the path-counting oracle."""

from typing import Annotated, Optional

import typer

from app.commands.common import InputFile, emit, exact, read_document, session
from app.schemas.results import EntropyResult, GridPointSchema, OracleResult
from graph_entropy.entropy import volume_entropy
from graph_entropy.graph import build_graph
from graph_entropy.oracle import cycle_period, estimate_entropy
from graph_entropy.spectral import dump_matrix, weighted_matrix


def entropy(ctx: typer.Context, graph_file: InputFile) -> None:
    """Solve lambda(h) = 1 for the volume entropy."""
    run = session(ctx).start("entropy", graph_file)
    config = run.entropy_config()
    g = build_graph(read_document(graph_file))
    solution = volume_entropy(g, config)

    matrix = None
    if run.dump_matrix:
        matrix = dump_matrix(weighted_matrix(g, solution.h, config))
    emit(
        ctx,
        EntropyResult(
            h=solution.h,
            residual=solution.residual,
            bracket=solution.bracket,
            iterations=solution.power_iterations,
            bisection_steps=solution.bisection_steps,
            vector=solution.vector,
            matrix=matrix,
        ),
    )


def oracle(
    ctx: typer.Context,
    graph_file: InputFile,
    base: Annotated[Optional[str], typer.Option("--base", help="Base vertex, default the first.")] = None,
) -> None:
    """Estimate h from exact counts of non-backtracking paths."""
    run = session(ctx).start("oracle", graph_file)
    config = run.entropy_config()
    g = build_graph(read_document(graph_file))
    x0 = base if base is not None else g.vertices[0]
    if x0 not in g.vertices:
        raise typer.BadParameter(f"unknown vertex {x0!r}", param_hint="--base")

    estimate = estimate_entropy(g, x0, run.r_max, config)
    emit(
        ctx,
        OracleResult(
            base=x0,
            r_max=exact(estimate.r_max),
            h_est=estimate.h_est,
            band=estimate.band,
            fit_error=estimate.fit_error,
            apriori_width=estimate.apriori_width,
            cycle_period=exact(cycle_period(g, config)),
            grid=[GridPointSchema(r=exact(r), count=str(n)) for r, n in zip(estimate.radii, estimate.counts)],
        ),
    )


def register(app: typer.Typer) -> None:
    app.command("entropy")(entropy)
    app.command("oracle")(oracle)
