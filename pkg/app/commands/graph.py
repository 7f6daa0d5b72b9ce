"""Graph commands: hypothesis validation, volume and series reduction."""

import typer

from app.commands.common import ExitCode, InputFile, checks, emit, exact, read_document, session
from app.schemas.results import ReduceResult, ValidationResult, VolumeResult
from graph_entropy.graph import build_graph, free_rank, series_reduce, validate_entropy_hypotheses, volume
from graph_entropy.processing.serialization import dump_graph, graph_to_document
from graph_entropy.spectral import is_irreducible


def validate(ctx: typer.Context, graph_file: InputFile) -> None:
    """Check a graph document against the entropy hypotheses."""
    session(ctx).start("validate", graph_file)
    g = build_graph(read_document(graph_file))
    report = validate_entropy_hypotheses(g)
    irreducible = None
    if report.check("no_terminal_vertex").passed:
        irreducible = is_irreducible(g).irreducible

    emit(
        ctx,
        ValidationResult(
            ok=report.ok,
            vertices=len(g.vertices),
            edges=len(g.links),
            free_rank=free_rank(g),
            volume=exact(volume(g)),
            irreducible=irreducible,
            checks=checks(report.checks),
        ),
    )
    if not report.ok:
        raise typer.Exit(code=ExitCode.VALIDATION)


def volume_command(ctx: typer.Context, graph_file: InputFile) -> None:
    """Total length of the unoriented edges, exactly."""
    session(ctx).start("volume", graph_file)
    g = build_graph(read_document(graph_file))
    total = volume(g)
    emit(
        ctx,
        VolumeResult(
            volume=exact(total),
            volume_float=float(total),
            edges=len(g.links),
            free_rank=free_rank(g),
            l_min=exact(g.l_min),
            l_max=exact(g.l_max),
        ),
    )


def reduce(ctx: typer.Context, graph_file: InputFile) -> None:
    """Remove valency-2 vertices; prints a graph document."""
    session(ctx).start("reduce", graph_file)
    reduction = series_reduce(build_graph(read_document(graph_file)))
    payload = ReduceResult(
        graph=graph_to_document(reduction.graph),
        chains={k: list(chain) for k, chain in reduction.chains.items()},
        reduced=not reduction.is_identity,
    )
    emit(ctx, payload, text=dump_graph(reduction.graph))


def register(app: typer.Typer) -> None:
    app.command("validate")(validate)
    app.command("volume")(volume_command)
    app.command("reduce")(reduce)
